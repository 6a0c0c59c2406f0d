// Command-line front end over the dwkb C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dwkb.h"

namespace {

struct CommonArgs {
  std::string config_path;
  double phi_in = -1.0, phi_out = -1.0;
  int cells = -1, lead_cells = -1;
  std::string methods, out, format, ramp;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "flat key=value configuration file");
  cmd->add_option("--phi-in", args.phi_in, "lead phase advance on the incident side [rad]");
  cmd->add_option("--phi-out", args.phi_out, "lead phase advance on the transmitted side [rad]");
  cmd->add_option("--cells", args.cells, "total chain length N");
  cmd->add_option("--lead-cells", args.lead_cells, "homogeneous cells per lead N_h");
  cmd->add_option("--methods", args.methods,
                  "comma list: exact,wkb-riccati,wkb-direct,closed-riccati,closed-direct,oracle");
  cmd->add_option("--out", args.out, "output directory");
  cmd->add_option("--format", args.format, "series format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--ramp", args.ramp, "transition shape: phase or coupling")
      ->check(CLI::IsMember({"phase", "coupling"}));
}

struct Handle {
  dwkb_experiment* h = dwkb_experiment_new();
  ~Handle() { dwkb_experiment_free(h); }
};

[[noreturn]] void die(dwkb_experiment* h, dwkb_status st) {
  // messages carry the failing cell index where one is known
  std::cerr << "error: " << dwkb_experiment_last_error(h) << "\n";
  // 2 = configuration, 3 = numerical failure, 1 = everything else
  std::exit(st == DWKB_ERR_CONFIG ? 2 : st == DWKB_ERR_NUMERIC ? 3 : 1);
}

void check(dwkb_experiment* h, dwkb_status st) {
  if (st != DWKB_OK) die(h, st);
}

// file values first, flags override
void configure(dwkb_experiment* h, const CommonArgs& args) {
  if (!args.config_path.empty())
    check(h, dwkb_experiment_load_config(h, args.config_path.c_str()));
  auto set = [&](const char* key, const std::string& value) {
    check(h, dwkb_experiment_set(h, key, value.c_str()));
  };
  char buf[40];
  if (args.phi_in >= 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", args.phi_in);
    set("phi_I", buf);
  }
  if (args.phi_out >= 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", args.phi_out);
    set("phi_II", buf);
  }
  if (args.cells >= 0) set("N", std::to_string(args.cells));
  if (args.lead_cells >= 0) set("N_h", std::to_string(args.lead_cells));
  if (!args.methods.empty()) set("methods", args.methods);
  if (!args.out.empty()) set("output_dir", args.out);
  if (!args.format.empty()) set("format", args.format);
  if (!args.ramp.empty()) set("ramp", args.ramp);
}

void print_summary(dwkb_experiment* h) {
  const int n = dwkb_experiment_method_count(h);
  for (int i = 0; i < n; ++i) {
    const char* name = dwkb_experiment_method_name(h, i);
    double rt[4];
    check(h, dwkb_experiment_rt(h, name, rt));
    std::printf("%-14s |R| = %-13.6g arg R = %-10.4g |T| = %-10.6f arg T = %.4f\n", name,
                std::hypot(rt[0], rt[1]), std::atan2(rt[1], rt[0]), std::hypot(rt[2], rt[3]),
                std::atan2(rt[3], rt[2]));
  }
}

int run_scatter(const CommonArgs& args, bool comparison) {
  Handle handle;
  dwkb_experiment* h = handle.h;
  configure(h, args);
  check(h, dwkb_experiment_run(h));
  print_summary(h);
  if (comparison) {
    double gap, pred, flux;
    if (dwkb_experiment_scalar(h, "phase_gap", &gap) == DWKB_OK &&
        dwkb_experiment_scalar(h, "phase_gap_prediction", &pred) == DWKB_OK)
      std::printf("phase gap (wkb-riccati vs wkb-direct) at last cell: %.6f rad; "
                  "drift estimate (phi_II - phi_I)/2 = %.6f rad\n", gap, pred);
    if (dwkb_experiment_scalar(h, "flux_defect", &flux) == DWKB_OK)
      std::printf("flux defect of the exact profile: %.3g\n", flux);
  }
  check(h, dwkb_experiment_emit(h, nullptr));
  return 0;
}

void emit_text(const std::string& out_path, char* text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << text;
    if (!f) {
      dwkb_text_free(text);
      std::cerr << "error: cannot write '" << out_path << "'\n";
      std::exit(1);
    }
  }
  dwkb_text_free(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transfer-matrix and discrete-WKB solver for slowly varying "
               "second-order difference equations"};
  app.require_subcommand(1);

  CommonArgs scatter_args, compare_args, dispersion_args, riccati_args, geometry_args;

  CLI::App* scatter = app.add_subcommand(
      "scatter", "run the selected methods on a ramp chain and emit series files");
  add_common(scatter, scatter_args);

  CLI::App* compare = app.add_subcommand(
      "compare", "run all methods against the exact baseline and emit comparison series");
  add_common(compare, compare_args);

  CLI::App* dispersion = app.add_subcommand(
      "dispersion", "dump per-cell coefficients and characteristic roots along the profile");
  add_common(dispersion, dispersion_args);

  CLI::App* riccati = app.add_subcommand(
      "riccati-check", "residual scaling study of the approximate Riccati gauges");
  add_common(riccati, riccati_args);
  int levels = 4, base_cells = 64;
  riccati->add_option("--levels", levels, "number of doublings (default 4)");
  riccati->add_option("--base-cells", base_cells, "ramp length at the first level");

  CLI::App* geometry = app.add_subcommand(
      "geometry", "dump coupling coefficients of a physical chain (synthesized or from file)");
  add_common(geometry, geometry_args);
  std::string geometry_file;
  double u_lead = 0.02, b_star = 4.0177, d_star = 3.0989, thickness = 0.4;
  geometry->add_option("--geometry", geometry_file, "geometry CSV (k,a,b,d,t rows)");
  geometry->add_option("--u-lead", u_lead, "lead coupling strength for synthesis");
  geometry->add_option("--b-star", b_star, "normalization radius [cm]");
  geometry->add_option("--d-star", d_star, "normalization length [cm]");
  geometry->add_option("--thickness", thickness, "disk thickness [cm]");

  CLI11_PARSE(app, argc, argv);

  if (scatter->parsed()) return run_scatter(scatter_args, false);
  if (compare->parsed()) {
    // default to the full method set unless the user pinned one
    if (compare_args.methods.empty() && compare_args.config_path.empty())
      compare_args.methods = "exact,wkb-riccati,wkb-direct,closed-riccati,closed-direct,oracle";
    return run_scatter(compare_args, true);
  }

  // the text subcommands treat --out as a file path ("-" or empty = stdout)
  Handle handle;
  dwkb_experiment* h = handle.h;
  char* text = nullptr;
  if (dispersion->parsed()) {
    const std::string out_path = std::exchange(dispersion_args.out, "");
    configure(h, dispersion_args);
    check(h, dwkb_dispersion_csv(h, &text));
    emit_text(out_path, text);
  } else if (riccati->parsed()) {
    const std::string out_path = std::exchange(riccati_args.out, "");
    configure(h, riccati_args);
    check(h, dwkb_riccati_check_csv(h, levels, base_cells, &text));
    emit_text(out_path, text);
  } else if (geometry->parsed()) {
    const std::string out_path = std::exchange(geometry_args.out, "");
    configure(h, geometry_args);
    check(h, dwkb_geometry_csv(h, geometry_file.empty() ? nullptr : geometry_file.c_str(),
                               u_lead, b_star, d_star, thickness, &text));
    emit_text(out_path, text);
  }
  return 0;
}
