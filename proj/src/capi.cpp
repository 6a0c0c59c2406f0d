#include "dwkb.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "dwkb/experiment.hpp"

struct dwkb_experiment {
  dwkb::ExperimentConfig config;
  std::optional<dwkb::ComparisonReport> report;
  std::string last_error;
  long error_cell = -1;
};

namespace {

dwkb_status fail(dwkb_experiment* h, dwkb_status code, const std::string& msg, long cell = -1) {
  if (h) {
    h->last_error = msg;
    h->error_cell = cell;
  }
  return code;
}

dwkb_status translate(dwkb_experiment* h, const std::exception& e) {
  long cell = -1;
  if (const auto* de = dynamic_cast<const dwkb::Error*>(&e); de && de->cell())
    cell = *de->cell();
  if (dynamic_cast<const dwkb::ConfigError*>(&e) ||
      dynamic_cast<const dwkb::MissingBaseline*>(&e))
    return fail(h, DWKB_ERR_CONFIG, e.what(), cell);
  if (dynamic_cast<const dwkb::Error*>(&e))
    return fail(h, DWKB_ERR_NUMERIC, e.what(), cell);
  if (dynamic_cast<const std::ios_base::failure*>(&e))
    return fail(h, DWKB_ERR_IO, e.what());
  return fail(h, DWKB_ERR_NUMERIC, e.what());
}

template <typename Fn>
dwkb_status guarded(dwkb_experiment* h, Fn&& fn) {
  if (!h) return DWKB_ERR_ARGUMENT;
  try {
    h->last_error.clear();
    h->error_cell = -1;
    return fn();
  } catch (const std::exception& e) {
    return translate(h, e);
  } catch (...) {
    return fail(h, DWKB_ERR_NUMERIC, "unknown failure");
  }
}

const dwkb::MethodResult* find_method(const dwkb_experiment* h, const char* method) {
  if (!h->report || !method) return nullptr;
  for (const auto& r : h->report->methods)
    if (std::strcmp(dwkb::method_name(r.method), method) == 0) return &r;
  return nullptr;
}

char* dup_text(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* dwkb_version(void) { return "0.1.0"; }

dwkb_experiment* dwkb_experiment_new(void) {
  try {
    return new dwkb_experiment;
  } catch (...) {
    return nullptr;
  }
}

void dwkb_experiment_free(dwkb_experiment* h) { delete h; }

const char* dwkb_experiment_last_error(const dwkb_experiment* h) {
  return h ? h->last_error.c_str() : "null handle";
}

long dwkb_experiment_error_cell(const dwkb_experiment* h) { return h ? h->error_cell : -1; }

dwkb_status dwkb_experiment_load_config(dwkb_experiment* h, const char* path) {
  return guarded(h, [&]() -> dwkb_status {
    if (!path) return fail(h, DWKB_ERR_ARGUMENT, "null path");
    dwkb::ExperimentConfig fresh = dwkb::parse_config_file(path);
    h->config = std::move(fresh);
    h->report.reset();
    return DWKB_OK;
  });
}

dwkb_status dwkb_experiment_set(dwkb_experiment* h, const char* key, const char* value) {
  return guarded(h, [&]() -> dwkb_status {
    if (!key || !value) return fail(h, DWKB_ERR_ARGUMENT, "null key or value");
    dwkb::apply_config_entry(h->config, key, value);
    h->report.reset();
    return DWKB_OK;
  });
}

dwkb_status dwkb_experiment_run(dwkb_experiment* h) {
  return guarded(h, [&]() -> dwkb_status {
    h->report = dwkb::run_experiment(h->config);
    return DWKB_OK;
  });
}

dwkb_status dwkb_experiment_emit(dwkb_experiment* h, const char* out_dir) {
  return guarded(h, [&]() -> dwkb_status {
    if (!h->report) return fail(h, DWKB_ERR_ARGUMENT, "run the experiment first");
    dwkb::emit_outputs(*h->report, h->config, out_dir ? out_dir : "");
    return DWKB_OK;
  });
}

int dwkb_experiment_cell_count(const dwkb_experiment* h) {
  return h && h->report ? h->report->config.cells : 0;
}

int dwkb_experiment_method_count(const dwkb_experiment* h) {
  return h && h->report ? static_cast<int>(h->report->methods.size()) : 0;
}

const char* dwkb_experiment_method_name(const dwkb_experiment* h, int index) {
  if (!h || !h->report || index < 0 ||
      index >= static_cast<int>(h->report->methods.size()))
    return nullptr;
  return dwkb::method_name(h->report->methods[static_cast<std::size_t>(index)].method);
}

dwkb_status dwkb_experiment_rt(const dwkb_experiment* h, const char* method,
                               double rt_out[4]) {
  auto* hm = const_cast<dwkb_experiment*>(h);
  return guarded(hm, [&]() -> dwkb_status {
    const dwkb::MethodResult* r = find_method(h, method);
    if (!r || !rt_out)
      return fail(hm, DWKB_ERR_ARGUMENT, "unknown method or missing output buffer");
    rt_out[0] = r->R.real();
    rt_out[1] = r->R.imag();
    rt_out[2] = r->T.real();
    rt_out[3] = r->T.imag();
    return DWKB_OK;
  });
}

dwkb_status dwkb_experiment_series(const dwkb_experiment* h, const char* method,
                                   const char* series, double* buf, int buf_len,
                                   int* out_len) {
  auto* hm = const_cast<dwkb_experiment*>(h);
  return guarded(hm, [&]() -> dwkb_status {
    const dwkb::MethodResult* r = find_method(h, method);
    if (!r || !series) return fail(hm, DWKB_ERR_ARGUMENT, "unknown method or series");
    const dwkb::RealSeries* s = nullptr;
    if (std::strcmp(series, "abs_y") == 0) s = &r->abs_y;
    else if (std::strcmp(series, "arg_y") == 0) s = &r->arg_y;
    else if (std::strcmp(series, "phase_shift") == 0) s = &r->phase_shift;
    if (!s) return fail(hm, DWKB_ERR_ARGUMENT, std::string("unknown series '") + series + "'");
    const int n = static_cast<int>(s->size());
    if (out_len) *out_len = n;
    if (buf) {
      if (buf_len < n) return fail(hm, DWKB_ERR_ARGUMENT, "buffer too small");
      for (int k = s->lo(); k <= s->hi(); ++k) buf[k - s->lo()] = (*s)[k];
    }
    return DWKB_OK;
  });
}

dwkb_status dwkb_experiment_scalar(const dwkb_experiment* h, const char* key, double* out) {
  auto* hm = const_cast<dwkb_experiment*>(h);
  return guarded(hm, [&]() -> dwkb_status {
    if (!h->report || !key || !out)
      return fail(hm, DWKB_ERR_ARGUMENT, "missing report, key, or output");
    const dwkb::ComparisonReport& rep = *h->report;
    if (std::strcmp(key, "phase_gap") == 0) {
      if (rep.phase_gap.empty())
        return fail(hm, DWKB_ERR_ARGUMENT, "phase gap needs both WKB variants in the run");
      *out = rep.phase_gap_at_end;
    } else if (std::strcmp(key, "phase_gap_prediction") == 0) {
      *out = rep.phase_gap_prediction;
    } else if (std::strcmp(key, "flux_defect") == 0) {
      if (rep.flux.empty())
        return fail(hm, DWKB_ERR_ARGUMENT, "flux defect needs the exact method in the run");
      *out = rep.flux_defect;
    } else if (std::strcmp(key, "delta_p_re") == 0) {
      *out = rep.delta_p.real();
    } else if (std::strcmp(key, "delta_p_im") == 0) {
      *out = rep.delta_p.imag();
    } else {
      return fail(hm, DWKB_ERR_ARGUMENT, std::string("unknown scalar '") + key + "'");
    }
    return DWKB_OK;
  });
}

dwkb_status dwkb_dispersion_csv(dwkb_experiment* h, char** out_text) {
  return guarded(h, [&]() -> dwkb_status {
    if (!out_text) return fail(h, DWKB_ERR_ARGUMENT, "null output");
    *out_text = dup_text(dwkb::dispersion_csv(h->config));
    return *out_text ? DWKB_OK : fail(h, DWKB_ERR_IO, "allocation failed");
  });
}

dwkb_status dwkb_riccati_check_csv(dwkb_experiment* h, int levels, int base_cells,
                                   char** out_text) {
  return guarded(h, [&]() -> dwkb_status {
    if (!out_text) return fail(h, DWKB_ERR_ARGUMENT, "null output");
    *out_text = dup_text(dwkb::riccati_check_csv(h->config, levels, base_cells));
    return *out_text ? DWKB_OK : fail(h, DWKB_ERR_IO, "allocation failed");
  });
}

dwkb_status dwkb_geometry_csv(dwkb_experiment* h, const char* geometry_file, double u_lead,
                              double b_star, double d_star, double disk_thickness,
                              char** out_text) {
  return guarded(h, [&]() -> dwkb_status {
    if (!out_text) return fail(h, DWKB_ERR_ARGUMENT, "null output");
    const std::string text =
        geometry_file ? dwkb::geometry_csv_from_file(geometry_file)
                      : dwkb::geometry_csv(h->config, u_lead, b_star, d_star, disk_thickness);
    *out_text = dup_text(text);
    return *out_text ? DWKB_OK : fail(h, DWKB_ERR_IO, "allocation failed");
  });
}

void dwkb_text_free(char* text) { std::free(text); }

}  // extern "C"
