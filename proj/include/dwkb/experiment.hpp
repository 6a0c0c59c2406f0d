#pragma once

#include <string>
#include <vector>

#include "dwkb/dlw_model.hpp"
#include "dwkb/recurrence.hpp"
#include "dwkb/types.hpp"

namespace dwkb {

// ---------------------------------------------------------------------------
// Benchmark orchestration: build a ramp chain, run the selected solution
// methods, compare them against the exact baseline, and emit machine-readable
// series.  All methods share unit incident amplitude at cell 1; emitted
// phases are unwrapped and anchored to 0 at cell 1.
// ---------------------------------------------------------------------------

enum class Method { Exact, WkbRiccati, WkbDirect, ClosedRiccati, ClosedDirect, Oracle };
enum class OutputFormat { Csv, Json };
enum class RampShape { Phase, Coupling };

const char* method_name(Method m);
Method method_from_name(const std::string& name);  // throws ConfigError

struct ExperimentConfig {
  double phi_in = 1.0471975511965976;   // pi/3
  double phi_out = 2.0943951023931953;  // 2*pi/3
  int cells = 250;
  int lead_cells = 100;
  std::vector<Method> methods = {Method::Exact,        Method::WkbRiccati,
                                 Method::WkbDirect,    Method::ClosedRiccati,
                                 Method::ClosedDirect, Method::Oracle};
  std::string output_dir = ".";
  OutputFormat format = OutputFormat::Csv;
  RampShape ramp = RampShape::Phase;

  bool has_method(Method m) const;
  void validate() const;  // throws ConfigError
};

// Flat key-value config text: one `key = value` per line, '#' comments.
// Keys: phi_I, phi_II, N, N_h, methods, output_dir, format, ramp.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

struct MethodResult {
  Method method;
  Complex R{};
  Complex T{};
  ComplexSeries y;         // [1, cells+1]
  RealSeries abs_y;        // [1, cells]
  RealSeries arg_y;        // unwrapped, anchored to 0 at cell 1; [1, cells]
  RealSeries phase_shift;  // arg y_{k+1} - arg y_k wrapped to (-pi, pi]; [1, cells]
};

struct ComparisonReport {
  ExperimentConfig config;
  std::vector<MethodResult> methods;

  // Deviations from the exact baseline; m1 = wkb-riccati, m2 = wkb-direct.
  RealSeries d_abs_m1, d_abs_m2;
  RealSeries d_phase_m1, d_phase_m2;

  // arg(wkb-riccati) - arg(wkb-direct) on the anchored unwrapped phases.
  RealSeries phase_gap;
  double phase_gap_at_end = 0.0;
  double phase_gap_prediction = 0.0;  // (phi_out - phi_in)/2

  // Flux of the exact profile with the ubar weights, and its relative spread.
  RealSeries flux;
  double flux_defect = 0.0;

  Complex delta_p{};

  const MethodResult* find(Method m) const;
};

// Per-cell phase increments arg(y_{k+1}) - arg(y_k), wrapped to (-pi, pi].
// Throws ZeroAmplitude when some |y_k| = 0.
RealSeries phase_shift_series(const ComplexSeries& y);

// Run every selected method on the configured ramp.  Deviation/gap series
// are filled when the needed methods are present.
ComparisonReport run_experiment(const ExperimentConfig& config);

// Assemble the comparison series from per-method results; requires the
// exact baseline (MissingBaseline otherwise).
ComparisonReport compare_methods(const ExperimentConfig& config,
                                 std::vector<MethodResult> methods);

// Write per-method series files, the comparison file, and summary.json into
// config.output_dir (or override_dir when non-empty).  Returns the paths
// written.  Byte-deterministic for a fixed config on one platform.
std::vector<std::string> emit_outputs(const ComparisonReport& report,
                                      const ExperimentConfig& config,
                                      const std::string& override_dir = "");

// CSV helpers behind the auxiliary CLI subcommands.
std::string dispersion_csv(const ExperimentConfig& config);
std::string riccati_check_csv(const ExperimentConfig& config, int levels, int base_cells);
std::string geometry_csv(const ExperimentConfig& config, double u_lead, double b_star,
                         double d_star, double disk_thickness);
std::string geometry_csv_from_file(const std::string& geometry_path);

}  // namespace dwkb
