#pragma once

#include <utility>

#include "dwkb/recurrence.hpp"
#include "dwkb/types.hpp"

namespace dwkb {

// ---------------------------------------------------------------------------
// Benchmark problem generators: chains of coupled identical cavities joined
// through circular irises, described either by a per-cell phase-advance
// profile or by physical geometry.  Conventions:
//   - cells are numbered 1..N; phi_k in (0, pi) is the passband phase
//     advance between cells k-1 and k in the local homogeneous limit;
//   - ubar_k = (1 - cos phi_lead) / (1 - cos phi_k) is the normalized
//     coupling; outside [1, N] the profile continues homogeneously
//     (clamped), representing semi-infinite leads.
// ---------------------------------------------------------------------------

class PhaseProfile {
 public:
  // phi over [1, cells]; lead_cells is the homogeneous plateau length kept
  // on each side (metadata for consumers).
  PhaseProfile(RealSeries phi, int lead_cells);

  int cells() const { return phi_.hi(); }
  int lead_cells() const { return lead_cells_; }
  const RealSeries& phi() const { return phi_; }

  // Clamped access: k below/above the window returns the end plateau value.
  double phi_at(int k) const;

 private:
  RealSeries phi_;
  int lead_cells_;
};

// Piecewise-linear phase ramp: phi_lead_in on cells [1, lead_cells], a
// linear transition over (lead_cells, cells - lead_cells], plateau
// phi_lead_out after.  Requires cells > 2*lead_cells >= 0 and both phases
// in (0, pi).
PhaseProfile linear_ramp_profile(double phi_in, double phi_out, int lead_cells, int cells);

// Same plateau structure but with the normalized coupling ubar ramped
// linearly and the phase derived from it.
PhaseProfile coupling_ramp_profile(double phi_in, double phi_out, int lead_cells, int cells);

// ubar_k = (1 - cos phi_1) / (1 - cos phi_k), clamped outside the window.
double u_bar(const PhaseProfile& profile, int k);

// Canonical recurrence coefficients for the profile, window [1, cells]:
// the step producing y_{k+1} has coefficient of y_k equal to
// [2(1 - cos phi_lead) - (ubar_k + ubar_{k+1})]/ubar_{k+1} and of y_{k-1}
// equal to ubar_k/ubar_{k+1}.  Indices past the profile use the clamped
// plateau (exact for profiles ending in plateaus).
CoefficientSequence coeffs_from_phase(const PhaseProfile& profile);

// Iris polynomial fits (thin-disk geometry): p_s and p_c as quadratics in
// the hole radius a (cm).  Fit range roughly a in (0, 2] cm.
std::pair<double, double> p_polynomials(double a_cm);

// Physical chain: cells 1..M with radii b, lengths d, disk thicknesses t;
// holes a_1..a_{M+1} where a_k joins cells k-1 and k.  b_star = c
// lambda01/omega and d_star are the normalization lengths.
struct WaveguideGeometry {
  RealSeries a;  // [1, M+1]
  RealSeries b;  // [1, M]
  RealSeries d;  // [1, M]
  RealSeries t;  // [1, M]
  double b_star;
  double d_star;
  bool use_p_polynomials;

  WaveguideGeometry(RealSeries a, RealSeries b, RealSeries d, RealSeries t, double b_star,
                    double d_star, bool use_p_polynomials);
  int cells() const { return b.hi(); }
};

// lambda01 = first zero of J0, alpha = 2 / (3 pi J1(lambda01)^2).  standard()
// computes both from a power-series Bessel evaluation, Newton-refined, and
// verifies them against an independent quadrature evaluation at build time.
struct ModelConstants {
  double lambda01;
  double alpha;

  static const ModelConstants& standard();
};

struct CouplingCoeffs {
  double alpha_kk;
  double alpha_km1;
  double alpha_kp1;
  double Z;
};

// Nearest-neighbour coupling coefficients of cell k (1 <= k <= cells):
// u_m = alpha a_m^3 p_c(a_m) / (b_star^2 d_star) (p_c = 1 unless
// use_p_polynomials), alpha_kk = -(u_k pbar_k + u_{k+1} pbar_{k+1}) /
// (bt^2 dt), alpha_k,k-1 = u_k/(bt^2 dt), alpha_k,k+1 = u_{k+1}/(bt^2 dt),
// Z = 1 - bt^2 - alpha_kk with bt = b_k/b_star, dt = d_k/d_star.
CouplingCoeffs coupling_coeffs(const WaveguideGeometry& geom, const ModelConstants& consts,
                               int k);

// Canonical coefficients of the geometry chain, window [1, cells-2]:
// f1 = -Z_k / alpha_k,k+1 and f0 = alpha_k,k-1 / alpha_k,k+1 for the step
// producing y_{k+1}.
CoefficientSequence coeffs_from_geometry(const WaveguideGeometry& geom,
                                         const ModelConstants& consts);

// Synthesize a geometry whose coefficient sequence reproduces the profile's:
// inverts ubar -> u -> hole radii (small-aperture simplification, p = 1) and
// picks the cavity radius on the lead dispersion curve.  The returned chain
// has profile.cells()+2 cells so its coefficient window matches
// coeffs_from_phase(profile).
WaveguideGeometry geometry_from_phase(const PhaseProfile& profile, const ModelConstants& consts,
                                      double u_lead, double b_star, double d_star,
                                      double disk_thickness);

namespace detail {
// Second route for the phase coefficients, written directly in terms of
// cosine differences; must agree with coeffs_from_phase entrywise.
CoefficientSequence coeffs_from_phase_cos_form(const PhaseProfile& profile);

double bessel_j0_series(double x);
double bessel_j1_series(double x);
double bessel_j0_quadrature(double x);
double bessel_j1_quadrature(double x);
}  // namespace detail

}  // namespace dwkb
