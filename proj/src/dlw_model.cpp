#include "dwkb/dlw_model.hpp"

#include <cmath>

namespace dwkb {

PhaseProfile::PhaseProfile(RealSeries phi, int lead_cells)
    : phi_(std::move(phi)), lead_cells_(lead_cells) {
  if (phi_.empty() || phi_.lo() != 1)
    throw BadWindow("phase profile must start at cell 1");
  if (lead_cells_ < 0 || 2 * lead_cells_ >= static_cast<int>(phi_.size()))
    throw BadWindow("lead cells must satisfy 0 <= 2*lead < cells");
  for (int k = 1; k <= phi_.hi(); ++k)
    if (!(phi_[k] > 0.0 && phi_[k] < M_PI))
      throw BadWindow("phase profile leaves the passband (0, pi)", k);
}

double PhaseProfile::phi_at(int k) const {
  if (k < 1) return phi_[1];
  if (k > phi_.hi()) return phi_[phi_.hi()];
  return phi_[k];
}

PhaseProfile linear_ramp_profile(double phi_in, double phi_out, int lead_cells, int cells) {
  if (cells <= 2 * lead_cells || lead_cells < 0)
    throw BadWindow("need cells > 2*lead_cells >= 0");
  if (!(phi_in > 0.0 && phi_in < M_PI) || !(phi_out > 0.0 && phi_out < M_PI))
    throw BadWindow("phases must lie strictly inside (0, pi)");
  std::vector<double> phi(static_cast<std::size_t>(cells));
  const double slope = (phi_out - phi_in) / static_cast<double>(cells - 2 * lead_cells);
  for (int k = 1; k <= cells; ++k) {
    double v;
    if (k <= lead_cells)
      v = phi_in;
    else if (k <= cells - lead_cells)
      v = phi_in + slope * static_cast<double>(k - lead_cells);
    else
      v = phi_out;
    phi[static_cast<std::size_t>(k - 1)] = v;
  }
  return PhaseProfile(RealSeries(1, std::move(phi)), lead_cells);
}

PhaseProfile coupling_ramp_profile(double phi_in, double phi_out, int lead_cells, int cells) {
  if (cells <= 2 * lead_cells || lead_cells < 0)
    throw BadWindow("need cells > 2*lead_cells >= 0");
  if (!(phi_in > 0.0 && phi_in < M_PI) || !(phi_out > 0.0 && phi_out < M_PI))
    throw BadWindow("phases must lie strictly inside (0, pi)");
  const double c_in = 1.0 - std::cos(phi_in);
  const double u_out = c_in / (1.0 - std::cos(phi_out));
  const double slope = (u_out - 1.0) / static_cast<double>(cells - 2 * lead_cells);
  std::vector<double> phi(static_cast<std::size_t>(cells));
  for (int k = 1; k <= cells; ++k) {
    double u;
    if (k <= lead_cells)
      u = 1.0;
    else if (k <= cells - lead_cells)
      u = 1.0 + slope * static_cast<double>(k - lead_cells);
    else
      u = u_out;
    phi[static_cast<std::size_t>(k - 1)] = std::acos(1.0 - c_in / u);
  }
  return PhaseProfile(RealSeries(1, std::move(phi)), lead_cells);
}

double u_bar(const PhaseProfile& profile, int k) {
  return (1.0 - std::cos(profile.phi_at(1))) / (1.0 - std::cos(profile.phi_at(k)));
}

CoefficientSequence coeffs_from_phase(const PhaseProfile& profile) {
  const int n = profile.cells();
  const double c_in = 1.0 - std::cos(profile.phi_at(1));
  std::vector<Complex> f0(static_cast<std::size_t>(n)), f1(f0.size());
  for (int j = 1; j <= n; ++j) {
    const double u1 = u_bar(profile, j + 1);
    const double u2 = u_bar(profile, j + 2);
    f1[static_cast<std::size_t>(j - 1)] = (2.0 * c_in - (u1 + u2)) / u2;
    f0[static_cast<std::size_t>(j - 1)] = u1 / u2;
  }
  return CoefficientSequence(ComplexSeries(1, std::move(f0)), ComplexSeries(1, std::move(f1)));
}

std::pair<double, double> p_polynomials(double a) {
  const double p_s = 0.0142 * a * a - 0.1329 * a + 0.9133;
  const double p_c = -0.0928 * a * a + 0.4491 * a - 0.0444;
  return {p_s, p_c};
}

WaveguideGeometry::WaveguideGeometry(RealSeries a_, RealSeries b_, RealSeries d_,
                                     RealSeries t_, double b_star_, double d_star_,
                                     bool use_p)
    : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)), t(std::move(t_)),
      b_star(b_star_), d_star(d_star_), use_p_polynomials(use_p) {
  if (b.empty() || b.lo() != 1 || d.lo() != 1 || t.lo() != 1 || a.lo() != 1)
    throw BadGeometry("geometry series must start at index 1");
  if (d.hi() != b.hi() || t.hi() != b.hi() || a.hi() != b.hi() + 1)
    throw BadGeometry("need one hole more than cells and matching cell series");
  if (b_star <= 0.0 || d_star <= 0.0) throw BadGeometry("normalization lengths must be positive");
  for (int k = 1; k <= b.hi(); ++k)
    if (b[k] <= 0.0 || d[k] <= 0.0 || t[k] <= 0.0)
      throw BadGeometry("cell sizes must be positive", k);
  for (int k = 1; k <= a.hi(); ++k) {
    if (a[k] < 0.0) throw BadGeometry("hole radius must be non-negative", k);
    const double bref = b[std::min(std::max(k, 1), b.hi())];
    if (a[k] >= bref) throw BadGeometry("hole radius must stay below the cell radius", k);
  }
}

const ModelConstants& ModelConstants::standard() {
  static const ModelConstants c = [] {
    // Newton on the series J0, seeded inside (2, 3); J0' = -J1
    double lam = 2.4;
    for (int i = 0; i < 12; ++i)
      lam += detail::bessel_j0_series(lam) / detail::bessel_j1_series(lam);
    const double j1 = detail::bessel_j1_series(lam);
    const double alpha = 2.0 / (3.0 * M_PI * j1 * j1);

    // independent verification by quadrature of the integral representation
    if (std::abs(detail::bessel_j0_quadrature(lam)) > 1e-12 ||
        std::abs(detail::bessel_j1_quadrature(lam) - j1) > 1e-12)
      throw Error("cylindrical-function evaluations disagree");
    if (std::abs(alpha - 0.78738) > 1e-4)
      throw Error("coupling normalization constant failed its sanity band");
    return ModelConstants{lam, alpha};
  }();
  return c;
}

namespace {

double coupling_u(const WaveguideGeometry& geom, const ModelConstants& consts, int m) {
  const double a = geom.a.at(m);
  const double pc = geom.use_p_polynomials ? p_polynomials(a).second : 1.0;
  return consts.alpha * a * a * a * pc / (geom.b_star * geom.b_star * geom.d_star);
}

}  // namespace

CouplingCoeffs coupling_coeffs(const WaveguideGeometry& geom, const ModelConstants& consts,
                               int k) {
  if (k < 1 || k > geom.cells()) throw BadGeometry("cell index outside the chain", k);
  const double bt = geom.b.at(k) / geom.b_star;
  const double dt = geom.d.at(k) / geom.d_star;
  const double uk = coupling_u(geom, consts, k);
  const double uk1 = coupling_u(geom, consts, k + 1);
  const double pbar_k =
      geom.use_p_polynomials
          ? p_polynomials(geom.a.at(k)).first / p_polynomials(geom.a.at(k)).second
          : 1.0;
  const double pbar_k1 =
      geom.use_p_polynomials
          ? p_polynomials(geom.a.at(k + 1)).first / p_polynomials(geom.a.at(k + 1)).second
          : 1.0;
  CouplingCoeffs cc;
  cc.alpha_kk = -(uk * pbar_k + uk1 * pbar_k1) / (bt * bt * dt);
  cc.alpha_km1 = uk / (bt * bt * dt);
  cc.alpha_kp1 = uk1 / (bt * bt * dt);
  cc.Z = 1.0 - bt * bt - cc.alpha_kk;
  return cc;
}

CoefficientSequence coeffs_from_geometry(const WaveguideGeometry& geom,
                                         const ModelConstants& consts) {
  const int m = geom.cells();
  if (m < 3) throw BadGeometry("need at least three cells");
  std::vector<Complex> f0(static_cast<std::size_t>(m - 2)), f1(f0.size());
  for (int k = 2; k <= m - 1; ++k) {
    const CouplingCoeffs cc = coupling_coeffs(geom, consts, k);
    if (cc.alpha_kp1 == 0.0 || cc.alpha_km1 == 0.0)
      throw BadGeometry("closed iris decouples the chain", k);
    const std::size_t i = static_cast<std::size_t>(k - 2);
    f1[i] = -cc.Z / cc.alpha_kp1;
    f0[i] = cc.alpha_km1 / cc.alpha_kp1;
  }
  return CoefficientSequence(ComplexSeries(1, std::move(f0)), ComplexSeries(1, std::move(f1)));
}

WaveguideGeometry geometry_from_phase(const PhaseProfile& profile, const ModelConstants& consts,
                                      double u_lead, double b_star, double d_star,
                                      double disk_thickness) {
  if (u_lead <= 0.0) throw BadGeometry("lead coupling must be positive");
  const int m = profile.cells() + 2;
  const double c_in = 1.0 - std::cos(profile.phi_at(1));
  // cavity radius on the lead dispersion curve: bt^2 (bt^2 - 1) = 2 u_lead c_in
  const double bt2 = 0.5 * (1.0 + std::sqrt(1.0 + 8.0 * u_lead * c_in));
  const double b = b_star * std::sqrt(bt2);

  std::vector<double> a(static_cast<std::size_t>(m + 1));
  for (int h = 1; h <= m + 1; ++h) {
    const double u = u_lead * u_bar(profile, h);  // clamped past the profile
    a[static_cast<std::size_t>(h - 1)] =
        std::cbrt(u * b_star * b_star * d_star / consts.alpha);
  }
  return WaveguideGeometry(RealSeries(1, std::move(a)),
                           RealSeries::filled(1, m, b),
                           RealSeries::filled(1, m, d_star),
                           RealSeries::filled(1, m, disk_thickness), b_star, d_star, false);
}

namespace detail {

CoefficientSequence coeffs_from_phase_cos_form(const PhaseProfile& profile) {
  const int n = profile.cells();
  std::vector<Complex> f0(static_cast<std::size_t>(n)), f1(f0.size());
  for (int j = 1; j <= n; ++j) {
    const double ck1 = std::cos(profile.phi_at(j + 1));
    const double ck2 = std::cos(profile.phi_at(j + 2));
    const double ratio = (ck2 - ck1) / (1.0 - ck1);
    f1[static_cast<std::size_t>(j - 1)] = -2.0 * ck2 + ratio;
    f0[static_cast<std::size_t>(j - 1)] = 1.0 - ratio;
  }
  return CoefficientSequence(ComplexSeries(1, std::move(f0)), ComplexSeries(1, std::move(f1)));
}

double bessel_j0_series(double x) {
  const double q = x * x / 4.0;
  double term = 1.0, sum = 0.0;
  for (int m = 1; std::abs(term) > 1e-18; ++m) {
    sum += term;
    term *= -q / (static_cast<double>(m) * static_cast<double>(m));
  }
  return sum;
}

double bessel_j1_series(double x) {
  const double q = x * x / 4.0;
  double term = x / 2.0, sum = 0.0;
  for (int m = 1; std::abs(term) > 1e-18; ++m) {
    sum += term;
    term *= -q / (static_cast<double>(m) * static_cast<double>(m + 1));
  }
  return sum;
}

namespace {
// trapezoid on [0, pi]; spectrally accurate for these periodic integrands
double bessel_quadrature(int n, double x) {
  const int panels = 512;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double theta = M_PI * static_cast<double>(i) / panels;
    const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
    sum += w * std::cos(n * theta - x * std::sin(theta));
  }
  return sum / panels;
}
}  // namespace

double bessel_j0_quadrature(double x) { return bessel_quadrature(0, x); }
double bessel_j1_quadrature(double x) { return bessel_quadrature(1, x); }

}  // namespace detail

}  // namespace dwkb
