#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "dwkb/dlw_model.hpp"
#include "dwkb/recurrence.hpp"
#include "dwkb/types.hpp"

namespace dwkb::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline CoefficientSequence constant_seq(Complex f0, Complex f1, int lo, int hi) {
  return CoefficientSequence(ComplexSeries::filled(lo, hi, f0),
                             ComplexSeries::filled(lo, hi, f1));
}

// Coefficients with prescribed root paths: f1 = -(r1+r2), f0 = r1*r2.
inline CoefficientSequence seq_from_roots(const ComplexSeries& r1, const ComplexSeries& r2) {
  std::vector<Complex> f0(r1.size()), f1(r1.size());
  for (int k = r1.lo(); k <= r1.hi(); ++k) {
    f1[static_cast<std::size_t>(k - r1.lo())] = -(r1[k] + r2[k]);
    f0[static_cast<std::size_t>(k - r1.lo())] = r1[k] * r2[k];
  }
  return CoefficientSequence(ComplexSeries(r1.lo(), std::move(f0)),
                             ComplexSeries(r1.lo(), std::move(f1)));
}

// The benchmark chain at the standard parameters, extended one plateau cell.
struct BenchmarkChain {
  PhaseProfile profile;
  CoefficientSequence seq;
  RootPairSequence roots;
  int cells;
};

inline BenchmarkChain benchmark_chain(int cells = 250, int lead = 100, int extra = 1) {
  PhaseProfile base = linear_ramp_profile(kPi / 3.0, 2.0 * kPi / 3.0, lead, cells);
  std::vector<double> phi(static_cast<std::size_t>(cells + extra));
  for (int k = 1; k <= cells + extra; ++k)
    phi[static_cast<std::size_t>(k - 1)] = base.phi_at(k);
  PhaseProfile profile(RealSeries(1, std::move(phi)), lead);
  CoefficientSequence seq = coeffs_from_phase(profile);
  RootPairSequence roots = assign_branches(seq);
  return {std::move(profile), std::move(seq), std::move(roots), cells};
}

// Direct iteration of the recurrence from two seed values.
inline ComplexSeries iterate_recurrence(const CoefficientSequence& seq, Complex y0, Complex y1) {
  std::vector<Complex> y(seq.f0().size() + 2);
  y[0] = y0;
  y[1] = y1;
  for (int k = seq.lo(); k <= seq.hi(); ++k)
    y[static_cast<std::size_t>(k - seq.lo() + 2)] =
        -(seq.f1(k) * y[static_cast<std::size_t>(k - seq.lo() + 1)] +
          seq.f0(k) * y[static_cast<std::size_t>(k - seq.lo())] + seq.force(k));
  return ComplexSeries(seq.lo(), std::move(y));
}

inline double max_abs(const ComplexSeries& y) {
  double m = 0.0;
  for (int k = y.lo(); k <= y.hi(); ++k) m = std::max(m, std::abs(y[k]));
  return m;
}

inline double max_diff(const ComplexSeries& a, const ComplexSeries& b, int lo, int hi) {
  double m = 0.0;
  for (int k = lo; k <= hi; ++k) m = std::max(m, std::abs(a.at(k) - b.at(k)));
  return m;
}

inline Complex random_unit(std::mt19937& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  return std::polar(1.0, ang(rng));
}

}  // namespace dwkb::testing
