#ifndef DWKB_H
#define DWKB_H

/*
 * dwkb: difference-equation WKB / transfer-matrix toolkit, C interface.
 *
 * Opaque-handle API over the shared library.  A dwkb_experiment holds a
 * benchmark configuration; after dwkb_experiment_run() the handle carries
 * per-method reflection/transmission coefficients and per-cell series that
 * can be queried or written to disk.  All functions returning dwkb_status
 * set a human-readable message retrievable via dwkb_experiment_last_error().
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(DWKB_BUILD)
#    define DWKB_API __declspec(dllexport)
#  else
#    define DWKB_API __declspec(dllimport)
#  endif
#else
#  define DWKB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dwkb_status {
  DWKB_OK = 0,
  DWKB_ERR_ARGUMENT = 1, /* bad handle, key, or call sequence */
  DWKB_ERR_CONFIG = 2,   /* configuration parse/validation failure */
  DWKB_ERR_NUMERIC = 3,  /* degeneracy, singular system, cascade pole, ... */
  DWKB_ERR_IO = 4        /* file system failure */
} dwkb_status;

typedef struct dwkb_experiment dwkb_experiment;

DWKB_API const char* dwkb_version(void);

DWKB_API dwkb_experiment* dwkb_experiment_new(void);
DWKB_API void dwkb_experiment_free(dwkb_experiment* h);

/* Message and failing cell (-1 when not applicable) of the last error. */
DWKB_API const char* dwkb_experiment_last_error(const dwkb_experiment* h);
DWKB_API long dwkb_experiment_error_cell(const dwkb_experiment* h);

/* Load a flat key-value config file, then override individual entries.
 * Keys: phi_I, phi_II, N, N_h, methods, output_dir, format, ramp. */
DWKB_API dwkb_status dwkb_experiment_load_config(dwkb_experiment* h, const char* path);
DWKB_API dwkb_status dwkb_experiment_set(dwkb_experiment* h, const char* key,
                                         const char* value);

DWKB_API dwkb_status dwkb_experiment_run(dwkb_experiment* h);

/* Write per-method series plus summary.json; out_dir NULL uses the config's
 * output_dir. */
DWKB_API dwkb_status dwkb_experiment_emit(dwkb_experiment* h, const char* out_dir);

/* Queries; valid after a successful run. */
DWKB_API int dwkb_experiment_cell_count(const dwkb_experiment* h);
DWKB_API int dwkb_experiment_method_count(const dwkb_experiment* h);
DWKB_API const char* dwkb_experiment_method_name(const dwkb_experiment* h, int index);

/* rt_out = {Re R, Im R, Re T, Im T}. */
DWKB_API dwkb_status dwkb_experiment_rt(const dwkb_experiment* h, const char* method,
                                        double rt_out[4]);

/* series: "abs_y" | "arg_y" | "phase_shift" over cells 1..N.  Pass buf =
 * NULL to query the length. */
DWKB_API dwkb_status dwkb_experiment_series(const dwkb_experiment* h, const char* method,
                                            const char* series, double* buf, int buf_len,
                                            int* out_len);

/* key: "phase_gap" | "phase_gap_prediction" | "flux_defect" |
 * "delta_p_re" | "delta_p_im". */
DWKB_API dwkb_status dwkb_experiment_scalar(const dwkb_experiment* h, const char* key,
                                            double* out);

/* Auxiliary studies rendered as CSV text; free the result with
 * dwkb_text_free. */
DWKB_API dwkb_status dwkb_dispersion_csv(dwkb_experiment* h, char** out_text);
DWKB_API dwkb_status dwkb_riccati_check_csv(dwkb_experiment* h, int levels, int base_cells,
                                            char** out_text);
DWKB_API dwkb_status dwkb_geometry_csv(dwkb_experiment* h, const char* geometry_file,
                                       double u_lead, double b_star, double d_star,
                                       double disk_thickness, char** out_text);
DWKB_API void dwkb_text_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* DWKB_H */
