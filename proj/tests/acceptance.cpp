// Acceptance suite: end-to-end checks of the benchmark reproduction, the
// cross-method oracles, and the asymptotic scaling laws, each printed as one
// pass/fail line.  Exit code = number of failed criteria.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dwkb/experiment.hpp"
#include "dwkb/scattering.hpp"
#include "dwkb/wave_split.hpp"
#include "dwkb/wkb_closed_form.hpp"
#include "test_helpers.hpp"

using namespace dwkb;
using namespace dwkb::testing;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%-4s criterion %2d: %-38s %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

ExperimentConfig benchmark_config() {
  ExperimentConfig cfg;  // defaults: phi pi/3 -> 2pi/3, N = 250, N_h = 100
  cfg.methods = {Method::Exact, Method::WkbRiccati, Method::WkbDirect, Method::Oracle};
  return cfg;
}

// |a - b| <= tol * max(1, |b|): scale-relative agreement that stays
// meaningful when the reference value is intrinsically near zero
bool close_scaled(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

void criterion_1_exact_reproduction(const ComparisonReport& rep) {
  const MethodResult* exact = rep.find(Method::Exact);
  const double r = std::abs(exact->R);
  const double t = std::abs(exact->T);
  const bool pass = r < 1e-6 && std::abs(t - 1.7316) <= 5e-4;
  report(1, "benchmark exact |R|, |T|", pass,
         fmt("|R|=%.3e (<1e-6), |T|=%.6f (1.7316+-5e-4)", r, t));
}

void criterion_2_wkb_reproduction(const ComparisonReport& rep) {
  const MethodResult* ric = rep.find(Method::WkbRiccati);
  const MethodResult* dir = rep.find(Method::WkbDirect);
  const bool r_zero = ric->R == Complex{} && dir->R == Complex{};
  const double t1 = std::abs(ric->T), t2 = std::abs(dir->T);
  const bool t1_ok = std::abs(t1 - 1.7395) <= 5e-4;
  const bool t2_ok = std::abs(t2 - 1.7330) <= 5e-4;
  report(2, "benchmark WKB-variant R, |T|", r_zero && t1_ok && t2_ok,
         fmt("R1=R2=%s, |T1|=%.6f (1.7395+-5e-4: %s), |T2|=%.6f (1.7330+-5e-4: %s)",
             r_zero ? "0" : "nonzero", t1, t1_ok ? "ok" : "MISS", t2, t2_ok ? "ok" : "MISS"));
  if (!(t1_ok && t2_ok)) {
    // diagnostic: the same matrices on a coupling-linear transition
    ExperimentConfig alt = benchmark_config();
    alt.ramp = RampShape::Coupling;
    ComparisonReport arep = run_experiment(alt);
    std::printf(
        "     note: on the phase-linear transition the printed diagonal matrices give the\n"
        "     values above; a coupling-linear transition gives |T1|=%.6f, |T2|=%.6f,\n"
        "     exact |T0|=%.6f with |R0|=%.2e (flux-consistent with |T0|).\n",
        std::abs(arep.find(Method::WkbRiccati)->T), std::abs(arep.find(Method::WkbDirect)->T),
        std::abs(arep.find(Method::Exact)->T), std::abs(arep.find(Method::Exact)->R));
  }
}

void criterion_3_phase_gap(const ComparisonReport& rep) {
  double worst = 0.0;
  for (int k = 151; k <= rep.config.cells; ++k)
    worst = std::max(worst, std::abs(std::abs(rep.phase_gap[k]) - kPi / 6.0));
  const double dp_err = std::abs(std::abs(rep.delta_p) - kPi / 6.0) / (kPi / 6.0);
  const bool pass = worst <= 0.02 && dp_err <= 0.02;
  report(3, "phase-gap law vs pi/6", pass,
         fmt("max | |gap|-pi/6 | = %.4f rad (<=0.02), |deltaP| off by %.2f%% (<=2%%)", worst,
             100.0 * dp_err));
}

void criterion_4_oracle_equivalence(const ComparisonReport& rep) {
  bool pass = true;
  std::string note;
  {
    const MethodResult* exact = rep.find(Method::Exact);
    const MethodResult* oracle = rep.find(Method::Oracle);
    const double ydiff = max_diff(exact->y, oracle->y, 1, rep.config.cells);
    pass = close_scaled(exact->R, oracle->R, 1e-9) && close_scaled(exact->T, oracle->T, 1e-9) &&
           ydiff <= 1e-9 * max_abs(oracle->y);
    note = fmt("benchmark dy=%.1e", ydiff);
  }
  std::mt19937 rng(20240615);
  std::uniform_real_distribution<double> phase(0.4, 2.7);
  std::uniform_int_distribution<int> lead(4, 12), ramp(3, 60);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    ExperimentConfig cfg;
    cfg.phi_in = phase(rng);
    cfg.phi_out = phase(rng);
    cfg.lead_cells = lead(rng);
    cfg.cells = 2 * cfg.lead_cells + ramp(rng);
    cfg.methods = {Method::Exact, Method::Oracle};
    ComparisonReport r = run_experiment(cfg);
    const MethodResult* exact = r.find(Method::Exact);
    const MethodResult* oracle = r.find(Method::Oracle);
    if (!close_scaled(exact->R, oracle->R, 1e-9) || !close_scaled(exact->T, oracle->T, 1e-9))
      pass = false;
    worst = std::max(worst, max_diff(exact->y, oracle->y, 1, cfg.cells) / max_abs(oracle->y));
  }
  pass = pass && worst <= 1e-9;
  report(4, "S-matrix pipeline vs banded oracle", pass,
         fmt("%s, worst rel dy over 20 random ramps = %.1e (<=1e-9)", note.c_str(), worst));
}

void criterion_5_flux(const ComparisonReport& rep) {
  const MethodResult* exact = rep.find(Method::Exact);
  const double identity_residual =
      std::abs((1.0 - std::norm(exact->R)) * std::sin(rep.config.phi_in) -
               std::norm(exact->T) * (1.0 / 3.0) * std::sin(rep.config.phi_out)) /
      std::sin(rep.config.phi_in);
  const double t_gap = std::abs(std::abs(exact->T) - std::sqrt(3.0));
  const bool pass = rep.flux_defect <= 1e-9 && identity_residual <= 1e-9 && t_gap <= 1e-6;
  report(5, "flux conservation and identity", pass,
         fmt("defect=%.1e (<=1e-9), identity=%.1e (<=1e-9), ||T|-sqrt3|=%.1e (<=1e-6)",
             rep.flux_defect, identity_residual, t_gap));
}

void criterion_6_riccati_order() {
  auto residuals = [](int n) {
    PhaseProfile profile = linear_ramp_profile(kPi / 3.0, 2.0 * kPi / 3.0, 0, n);
    CoefficientSequence seq = coeffs_from_phase(profile);
    RootPairSequence roots = assign_branches(seq);
    // kink-free pure ramp, measured over the middle half of the window
    CoefficientSequence mid = seq.sub(n / 4, 3 * n / 4);
    return std::pair{riccati_residual(riccati_approx_roots(roots, 1), mid, 1),
                     riccati_residual(roots.rho1(), mid)};
  };
  auto [c64, r64] = residuals(64);
  auto [c128, r128] = residuals(128);
  const double corrected_ratio = c64 / c128;
  const double root_ratio = r64 / r128;
  const bool pass = std::abs(corrected_ratio - 4.0) <= 0.8 && std::abs(root_ratio - 2.0) <= 0.4;
  report(6, "Riccati residual order of accuracy", pass,
         fmt("corrected gauge ratio=%.3f (4+-0.8), root gauge ratio=%.3f (2+-0.4)",
             corrected_ratio, root_ratio));
}

void criterion_7_gauge_equivalence() {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> box(-1.5, 1.5), sep(0.5, 1.5), ph(0.3, 2.8),
      ang(0.0, 2.0 * kPi);
  const int lo = 0, hi = 20;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    // random passband coefficients on a 20-cell window
    std::vector<Complex> f0(static_cast<std::size_t>(hi - lo)), f1(f0.size());
    double p = ph(rng);
    for (std::size_t i = 0; i < f0.size(); ++i) {
      p = std::min(2.9, std::max(0.2, p + box(rng) * 0.05));
      f1[i] = -2.0 * std::cos(p);
      f0[i] = 1.0;
    }
    CoefficientSequence seq(ComplexSeries(lo, std::move(f0)), ComplexSeries(lo, std::move(f1)));

    std::vector<Complex> g1(static_cast<std::size_t>(hi - lo + 1)), g2(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i) {
      g1[i] = Complex(box(rng), box(rng));
      g2[i] = g1[i] + std::polar(sep(rng), ang(rng));
    }
    GaugeSequences g{ComplexSeries(lo, std::move(g1)), ComplexSeries(lo, std::move(g2))};

    const Complex y0 = std::polar(1.0, ang(rng)), y1 = std::polar(1.0, ang(rng));
    ComplexSeries direct = iterate_recurrence(seq, y0, y1);
    Series<SplitState> states =
        propagate(build_transfer_general(seq, g), split_from_solution(y0, y1, g, lo), lo);
    double err = 0.0;
    for (int k = states.lo(); k <= states.hi(); ++k)
      err = std::max(err, std::abs(states[k].total() - direct[k]));
    worst = std::max(worst, err / max_abs(direct));
  }
  report(7, "gauge equivalence over 100 gauges", worst <= 1e-10,
         fmt("worst relative deviation = %.1e (<=1e-10)", worst));
}

void criterion_8_closed_forms() {
  BenchmarkChain c = benchmark_chain();
  double prod_vs_prop = 0.0;
  TransferSequence ric = transfer_wkb_riccati(c.roots);
  for (int branch : {1, 2}) {
    WkbClosedForm f = wkb_product(c.roots, branch, 1, c.cells + 1, 1.0);
    Series<SplitState> states =
        propagate(ric, branch == 1 ? SplitState{1.0, 0.0} : SplitState{0.0, 1.0}, 1);
    for (int k = 1; k <= c.cells + 1; ++k) {
      const Complex via = branch == 1 ? states[k].y1 : states[k].y2;
      prod_vs_prop = std::max(prod_vs_prop, std::abs(f.values[k] - via) / std::abs(via));
    }
  }

  auto gap = [](int ramp_len) {
    BenchmarkChain cc = benchmark_chain(2 * 20 + ramp_len, 20);
    const int end = cc.cells + 1;
    WkbClosedForm prod = wkb_product(cc.roots, 1, 1, end, 1.0);
    WkbClosedForm sum = wkb_expsum_riccati(cc.seq, cc.roots, 1, 1, end, 1.0);
    return std::abs(std::log(sum.values[end] / prod.values[end]));
  };
  const double ratio = gap(50) / gap(100);
  const bool pass = prod_vs_prop <= 1e-12 && std::abs(ratio - 2.0) <= 0.4;
  report(8, "closed-form consistency", pass,
         fmt("product vs propagate = %.1e (<=1e-12), halving ratio = %.3f (2+-0.4)",
             prod_vs_prop, ratio));
}

void criterion_9_structural_zero(const ComparisonReport& rep) {
  bool pass = rep.find(Method::WkbRiccati)->R == Complex{} &&
              rep.find(Method::WkbDirect)->R == Complex{};
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> ang(0.2, 2.9), mag(0.8, 1.25);
  for (int trial = 0; trial < 5; ++trial) {
    Mat2c acc{0.0, 1.0, 1.0, 0.0};
    for (int cell = 0; cell < 400; ++cell)
      acc = cascade(acc, cell_smatrix(Mat2c::diagonal(std::polar(mag(rng), ang(rng)),
                                                      std::polar(mag(rng), -ang(rng))))
                             .S);
    if (acc.m11 != Complex{}) pass = false;
  }
  report(9, "diagonal chains reflect exactly zero", pass,
         pass ? "S11 identically 0 on all diagonal cascades" : "nonzero S11 found");
}

void criterion_10_determinism(const ExperimentConfig& cfg) {
  auto emit_to = [&](const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("dwkb_acc_" + tag);
    std::filesystem::remove_all(dir);
    return emit_outputs(run_experiment(cfg), cfg, dir.string());
  };
  const std::vector<std::string> a = emit_to("a");
  const std::vector<std::string> b = emit_to("b");
  bool pass = a.size() == b.size();
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (std::size_t i = 0; pass && i < a.size(); ++i) pass = slurp(a[i]) == slurp(b[i]);
  report(10, "byte-identical rerun outputs", pass,
         fmt("%zu files compared", a.size()));
}

}  // namespace

int main() {
  const ExperimentConfig cfg = benchmark_config();
  const ComparisonReport rep = run_experiment(cfg);

  criterion_1_exact_reproduction(rep);
  criterion_2_wkb_reproduction(rep);
  criterion_3_phase_gap(rep);
  criterion_4_oracle_equivalence(rep);
  criterion_5_flux(rep);
  criterion_6_riccati_order();
  criterion_7_gauge_equivalence();
  criterion_8_closed_forms();
  criterion_9_structural_zero(rep);
  criterion_10_determinism(cfg);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures;
}
