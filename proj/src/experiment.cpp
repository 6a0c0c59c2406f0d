#include "dwkb/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dwkb/scattering.hpp"
#include "dwkb/wave_split.hpp"
#include "dwkb/wkb_closed_form.hpp"

namespace dwkb {

const char* method_name(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::WkbRiccati: return "wkb-riccati";
    case Method::WkbDirect: return "wkb-direct";
    case Method::ClosedRiccati: return "closed-riccati";
    case Method::ClosedDirect: return "closed-direct";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  for (Method m : {Method::Exact, Method::WkbRiccati, Method::WkbDirect, Method::ClosedRiccati,
                   Method::ClosedDirect, Method::Oracle})
    if (name == method_name(m)) return m;
  throw ConfigError("unknown method '" + name + "'");
}

bool ExperimentConfig::has_method(Method m) const {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

void ExperimentConfig::validate() const {
  if (!(phi_in > 0.0 && phi_in < M_PI) || !(phi_out > 0.0 && phi_out < M_PI))
    throw ConfigError("phi_I and phi_II must lie strictly inside (0, pi)");
  if (lead_cells < 3)
    throw ConfigError("N_h must be at least 3 (homogeneous lead segments on both sides)");
  if (cells <= 2 * lead_cells)
    throw ConfigError("N must exceed 2*N_h");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

RealSeries phase_shift_series(const ComplexSeries& y) {
  if (y.size() < 2) throw WindowMismatch("need at least two cells for phase shifts");
  std::vector<double> out(y.size() - 1);
  for (int k = y.lo(); k < y.hi(); ++k) {
    if (std::abs(y[k]) == 0.0 || std::abs(y[k + 1]) == 0.0)
      throw ZeroAmplitude("phase undefined at zero amplitude", k);
    out[static_cast<std::size_t>(k - y.lo())] = wrap_angle(std::arg(y[k + 1]) - std::arg(y[k]));
  }
  return RealSeries(y.lo(), std::move(out));
}

namespace {

// Anchor an unwrapped phase series to zero at its first index.
RealSeries anchored_args(const ComplexSeries& y) {
  for (int k = y.lo(); k <= y.hi(); ++k)
    if (std::abs(y[k]) == 0.0) throw ZeroAmplitude("phase undefined at zero amplitude", k);
  RealSeries u = unwrap_args(y);
  const double base = u[u.lo()];
  std::vector<double> out(u.size());
  for (int k = u.lo(); k <= u.hi(); ++k)
    out[static_cast<std::size_t>(k - u.lo())] = u[k] - base;
  return RealSeries(u.lo(), std::move(out));
}

MethodResult make_result(Method m, Complex R, Complex T, ComplexSeries y, int cells) {
  MethodResult res;
  res.method = m;
  res.R = R;
  res.T = T;
  res.y = std::move(y);
  const ComplexSeries y_chain = res.y.sub(1, cells);
  std::vector<double> mag(y_chain.size());
  for (int k = 1; k <= cells; ++k)
    mag[static_cast<std::size_t>(k - 1)] = std::abs(y_chain[k]);
  res.abs_y = RealSeries(1, std::move(mag));
  res.arg_y = anchored_args(y_chain);
  res.phase_shift = phase_shift_series(res.y).sub(1, cells);
  return res;
}

PhaseProfile build_profile(const ExperimentConfig& config, int extra_cells) {
  // extend the window by plateau cells on the right; exact for ramp profiles
  const int n = config.cells + extra_cells;
  PhaseProfile base = config.ramp == RampShape::Phase
                          ? linear_ramp_profile(config.phi_in, config.phi_out,
                                                config.lead_cells, config.cells)
                          : coupling_ramp_profile(config.phi_in, config.phi_out,
                                                  config.lead_cells, config.cells);
  if (extra_cells == 0) return base;
  std::vector<double> phi(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) phi[static_cast<std::size_t>(k - 1)] = base.phi_at(k);
  return PhaseProfile(RealSeries(1, std::move(phi)), config.lead_cells);
}

}  // namespace

ComparisonReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const int n = config.cells;

  // master window [1, n+1]: one clamped plateau cell keeps every method's
  // profile defined through cell n+1 (for the phase shift at cell n)
  const PhaseProfile profile = build_profile(config, 1);
  const CoefficientSequence seq = coeffs_from_phase(profile);
  const RootPairSequence roots = assign_branches(seq);
  const ScatterBoundary boundary(config.phi_in, config.phi_out);

  std::vector<MethodResult> results;
  for (Method m : config.methods) {
    switch (m) {
      case Method::Exact:
      case Method::WkbRiccati:
      case Method::WkbDirect: {
        TransferSequence transfers = m == Method::Exact ? transfer_exact(roots)
                                     : m == Method::WkbRiccati ? transfer_wkb_riccati(roots)
                                                               : transfer_wkb_direct(roots);
        ScatterSolution sol = smatrix_scatter(transfers.sub(2, n), roots);
        results.push_back(make_result(m, sol.R, sol.T, std::move(sol.y), n));
        break;
      }
      case Method::ClosedRiccati:
      case Method::ClosedDirect: {
        const WkbClosedForm form =
            m == Method::ClosedRiccati
                ? wkb_expsum_riccati(seq, roots, 1, 1, n + 1, 1.0)
                : wkb_expsum_direct(seq, roots, 1, 1, n + 1, 1.0);
        results.push_back(make_result(m, 0.0, form.values[n], ComplexSeries(form.values), n));
        break;
      }
      case Method::Oracle: {
        ScatterSolution sol = direct_scatter_solve(seq.sub(1, n - 2), boundary);
        // continue the lead one cell for the phase shift at cell n
        std::vector<Complex> y(sol.y.values());
        y.push_back(sol.T * std::exp(Complex(0.0, config.phi_out)));
        results.push_back(make_result(m, sol.R, sol.T, ComplexSeries(1, std::move(y)), n));
        break;
      }
    }
  }
  return compare_methods(config, std::move(results));
}

ComparisonReport compare_methods(const ExperimentConfig& config,
                                 std::vector<MethodResult> methods) {
  ComparisonReport rep;
  rep.config = config;
  rep.methods = std::move(methods);
  rep.phase_gap_prediction = (config.phi_out - config.phi_in) / 2.0;

  const MethodResult* exact = rep.find(Method::Exact);
  const MethodResult* ric = rep.find(Method::WkbRiccati);
  const MethodResult* dir = rep.find(Method::WkbDirect);

  const bool want_deviations = ric != nullptr || dir != nullptr;
  if (want_deviations && exact == nullptr)
    throw MissingBaseline("comparison requires the exact method as baseline");

  const int n = config.cells;
  auto deviation = [&](const MethodResult* m, const RealSeries& base_abs,
                       const RealSeries& base_phase, RealSeries& d_abs, RealSeries& d_phase) {
    if (!m) return;
    std::vector<double> da(static_cast<std::size_t>(n)), dp(da.size());
    for (int k = 1; k <= n; ++k) {
      da[static_cast<std::size_t>(k - 1)] = m->abs_y[k] - base_abs[k];
      dp[static_cast<std::size_t>(k - 1)] = wrap_angle(m->phase_shift[k] - base_phase[k]);
    }
    d_abs = RealSeries(1, std::move(da));
    d_phase = RealSeries(1, std::move(dp));
  };
  if (exact) {
    deviation(ric, exact->abs_y, exact->phase_shift, rep.d_abs_m1, rep.d_phase_m1);
    deviation(dir, exact->abs_y, exact->phase_shift, rep.d_abs_m2, rep.d_phase_m2);
  }

  if (ric && dir) {
    std::vector<double> gap(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
      gap[static_cast<std::size_t>(k - 1)] = ric->arg_y[k] - dir->arg_y[k];
    rep.phase_gap = RealSeries(1, std::move(gap));
    rep.phase_gap_at_end = rep.phase_gap[n];
  }

  if (exact) {
    const PhaseProfile profile = build_profile(config, 1);
    std::vector<double> w(static_cast<std::size_t>(n + 2));
    for (int k = 1; k <= n + 2; ++k)
      w[static_cast<std::size_t>(k - 1)] = u_bar(profile, k);
    rep.flux = flux_series(exact->y, RealSeries(1, std::move(w)));
    double lo = rep.flux[1], hi = rep.flux[1];
    for (int k = rep.flux.lo(); k <= rep.flux.hi(); ++k) {
      lo = std::min(lo, rep.flux[k]);
      hi = std::max(hi, rep.flux[k]);
    }
    rep.flux_defect = std::abs(rep.flux[1]) > 0.0 ? (hi - lo) / std::abs(rep.flux[1]) : 0.0;
  }

  {
    const PhaseProfile profile = build_profile(config, 1);
    const CoefficientSequence seq = coeffs_from_phase(profile);
    rep.delta_p = delta_p_sum(seq, 1, n + 1);
  }
  return rep;
}

const MethodResult* ComparisonReport::find(Method m) const {
  for (const MethodResult& r : methods)
    if (r.method == m) return &r;
  return nullptr;
}

// ---------------------------------------------------------------------------
// auxiliary studies
// ---------------------------------------------------------------------------

namespace {

void csv_double(std::ostringstream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

std::string dispersion_csv(const ExperimentConfig& config) {
  config.validate();
  const PhaseProfile profile = build_profile(config, 0);
  const CoefficientSequence seq = coeffs_from_phase(profile);
  const RootPairSequence roots = assign_branches(seq);
  std::ostringstream os;
  os << "k,phi,u_bar,f1,f0,rho1_re,rho1_im,rho2_re,rho2_im,local_phase\n";
  for (int k = 1; k <= config.cells; ++k) {
    os << k << ',';
    csv_double(os, profile.phi_at(k)); os << ',';
    csv_double(os, u_bar(profile, k)); os << ',';
    csv_double(os, seq.f1(k).real()); os << ',';
    csv_double(os, seq.f0(k).real()); os << ',';
    csv_double(os, roots.rho1(k).real()); os << ',';
    csv_double(os, roots.rho1(k).imag()); os << ',';
    csv_double(os, roots.rho2(k).real()); os << ',';
    csv_double(os, roots.rho2(k).imag()); os << ',';
    csv_double(os, std::arg(roots.rho1(k)));
    os << '\n';
  }
  return os.str();
}

std::string riccati_check_csv(const ExperimentConfig& config, int levels, int base_cells) {
  if (levels < 2) throw ConfigError("need at least two levels");
  if (base_cells < 16) throw ConfigError("base_cells must be at least 16");
  if (!(config.phi_in > 0.0 && config.phi_in < M_PI) ||
      !(config.phi_out > 0.0 && config.phi_out < M_PI))
    throw ConfigError("phi_I and phi_II must lie strictly inside (0, pi)");

  std::ostringstream os;
  os << "level,cells,eps,res_riccati,res_root,ratio_riccati,ratio_root\n";
  double prev_c = 0.0, prev_r = 0.0;
  for (int level = 0; level < levels; ++level) {
    const int n = base_cells << level;
    // kink-free pure ramp; residual max over the middle half of the window
    const PhaseProfile profile = linear_ramp_profile(config.phi_in, config.phi_out, 0, n);
    const CoefficientSequence seq = coeffs_from_phase(profile);
    const RootPairSequence roots = assign_branches(seq);
    const CoefficientSequence mid = seq.sub(n / 4, 3 * n / 4);
    const double res_c = riccati_residual(riccati_approx_roots(roots, 1), mid, 1);
    const double res_r = riccati_residual(roots.rho1(), mid);
    os << level << ',' << n << ',';
    csv_double(os, (config.phi_out - config.phi_in) / n); os << ',';
    csv_double(os, res_c); os << ',';
    csv_double(os, res_r); os << ',';
    if (level > 0) {
      csv_double(os, prev_c / res_c); os << ',';
      csv_double(os, prev_r / res_r);
    } else {
      os << ',';
    }
    os << '\n';
    prev_c = res_c;
    prev_r = res_r;
  }
  return os.str();
}

std::string geometry_csv(const ExperimentConfig& config, double u_lead, double b_star,
                         double d_star, double disk_thickness) {
  config.validate();
  const PhaseProfile profile = build_profile(config, 0);
  const WaveguideGeometry geom = geometry_from_phase(profile, ModelConstants::standard(),
                                                     u_lead, b_star, d_star, disk_thickness);
  const CoefficientSequence seq = coeffs_from_geometry(geom, ModelConstants::standard());
  std::ostringstream os;
  os << "k,a,b,d,t,z,alpha_km1,alpha_kp1,f1,f0\n";
  for (int k = 1; k <= geom.cells(); ++k) {
    const CouplingCoeffs cc = coupling_coeffs(geom, ModelConstants::standard(), k);
    os << k << ',';
    csv_double(os, geom.a[k]); os << ',';
    csv_double(os, geom.b[k]); os << ',';
    csv_double(os, geom.d[k]); os << ',';
    csv_double(os, geom.t[k]); os << ',';
    csv_double(os, cc.Z); os << ',';
    csv_double(os, cc.alpha_km1); os << ',';
    csv_double(os, cc.alpha_kp1); os << ',';
    // canonical coefficients of the step producing y_{k+1} sit at k-1
    if (seq.f1().covers(k - 1)) {
      csv_double(os, seq.f1(k - 1).real()); os << ',';
      csv_double(os, seq.f0(k - 1).real());
    } else {
      os << ',';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace dwkb
