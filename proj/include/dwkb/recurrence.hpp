#pragma once

#include "dwkb/types.hpp"

namespace dwkb {

// ---------------------------------------------------------------------------
// Canonical second-order linear recurrence over a contiguous index window:
//
//     y_{k+2} + f1[k] * y_{k+1} + f0[k] * y_k + forcing[k] = 0
//
// f1[k] multiplies y_{k+1} and f0[k] multiplies y_k in the step that
// produces y_{k+2}.  A sequence over [lo, hi] constrains y over [lo, hi+2].
// f0 must never vanish: the recurrence stays genuinely second-order in both
// directions.
// ---------------------------------------------------------------------------

class CoefficientSequence {
 public:
  CoefficientSequence(ComplexSeries f0, ComplexSeries f1, ComplexSeries forcing = {});

  int lo() const { return f0_.lo(); }
  int hi() const { return f0_.hi(); }

  const ComplexSeries& f0() const { return f0_; }
  const ComplexSeries& f1() const { return f1_; }
  const ComplexSeries& forcing() const { return forcing_; }

  Complex f0(int k) const { return f0_.at(k); }
  Complex f1(int k) const { return f1_.at(k); }
  Complex force(int k) const { return forcing_.empty() ? Complex{} : forcing_.at(k); }

  bool homogeneous() const;
  CoefficientSequence sub(int klo, int khi) const;

 private:
  ComplexSeries f0_, f1_, forcing_;
};

// Characteristic roots with a consistent branch assignment along the window.
// rho1[k] * rho2[k] = f0[k] and rho1[k] + rho2[k] = -f1[k] (Vieta);
// rho1[k] != rho2[k] everywhere.  sqrt_disc(k) = rho1[k] - rho2[k] is the
// branch-continued square root of the discriminant.
class RootPairSequence {
 public:
  RootPairSequence(ComplexSeries rho1, ComplexSeries rho2, ComplexSeries discriminant);

  int lo() const { return rho1_.lo(); }
  int hi() const { return rho1_.hi(); }

  const ComplexSeries& rho1() const { return rho1_; }
  const ComplexSeries& rho2() const { return rho2_; }
  const ComplexSeries& discriminant() const { return disc_; }

  Complex rho1(int k) const { return rho1_.at(k); }
  Complex rho2(int k) const { return rho2_.at(k); }
  Complex rho(int branch, int k) const { return branch == 1 ? rho1_.at(k) : rho2_.at(k); }
  Complex discriminant(int k) const { return disc_.at(k); }
  Complex sqrt_disc(int k) const { return rho1_.at(k) - rho2_.at(k); }

  RootPairSequence sub(int klo, int khi) const;

 private:
  ComplexSeries rho1_, rho2_, disc_;
};

// Scattering boundary data: phase advance per cell in the homogeneous leads
// (both strictly inside the passband) and the incident amplitude at the
// first cell.
struct ScatterBoundary {
  double phi_in;
  double phi_out;
  Complex incident_amplitude;

  ScatterBoundary(double phi_in, double phi_out, Complex incident_amplitude = 1.0);
};

// Reflection/transmission plus the per-cell wave split and total profile.
// R is the reflected amplitude at the first cell, T the transmitted
// amplitude at the last cell, both per unit incidence scaled by the
// incident amplitude where one was supplied.
struct ScatterSolution {
  Complex R{};
  Complex T{};
  ComplexSeries y1;
  ComplexSeries y2;
  ComplexSeries y;
};

// Degeneracy guard: a root pair is rejected when
// |disc| < kDegeneracyTol * max(1, |f1|^2).
inline constexpr double kDegeneracyTol = 1e-14;

// The two roots of rho^2 + f1[k] rho + f0[k] = 0, no branch assignment.
// Throws DegenerateRoots at (numerical) band edges.
std::pair<Complex, Complex> characteristic_roots(const CoefficientSequence& seq, int k);

// Roots over the whole window with branches made continuous in k:
// branch 1 at lo has Im >= 0, and at each subsequent k the pairing
// minimizing the summed root movement is chosen, so branches never swap.
RootPairSequence assign_branches(const CoefficientSequence& seq);

// max_k |y_{k+2} + f1 y_{k+1} + f0 y_k + f| / max_k |y_k| over the window.
// The profile must cover [lo, hi+2].
double recurrence_residual(const CoefficientSequence& seq, const SolutionProfile& profile);

// Independent boundary-value oracle.  Solves the banded linear system for
// cells [lo, hi+2] with an incident+reflected pair in the left lead and a
// single transmitted wave in the right lead.  The sequence must be
// homogeneous over its first and last two indices with roots e^{+-i phi_in}
// / e^{+-i phi_out}.
ScatterSolution direct_scatter_solve(const CoefficientSequence& seq,
                                     const ScatterBoundary& boundary);

// Discrete flux P_k = weight[k+1] * Im(conj(y_k) y_{k+1}) for k in
// [y.lo, y.hi-1]; constant in k on exact solutions of the self-adjoint
// benchmark recurrence.
RealSeries flux_series(const SolutionProfile& profile, const RealSeries& weight);

}  // namespace dwkb
