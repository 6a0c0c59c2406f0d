#include "dwkb/recurrence.hpp"

#include <algorithm>
#include <cmath>

#include "dwkb/banded.hpp"

namespace dwkb {

CoefficientSequence::CoefficientSequence(ComplexSeries f0, ComplexSeries f1,
                                         ComplexSeries forcing)
    : f0_(std::move(f0)), f1_(std::move(f1)), forcing_(std::move(forcing)) {
  if (f0_.empty() || f0_.lo() != f1_.lo() || f0_.hi() != f1_.hi())
    throw WindowMismatch("f0 and f1 must share a non-empty window");
  if (!forcing_.empty() && (forcing_.lo() != f0_.lo() || forcing_.hi() != f0_.hi()))
    throw WindowMismatch("forcing window must match the coefficient window");
  for (int k = lo(); k <= hi(); ++k) {
    if (!finite(f0_[k]) || !finite(f1_[k]))
      throw Error("non-finite coefficient", k);
    if (f0_[k] == Complex{})
      throw Error("f0 must not vanish: the recurrence degenerates to first order", k);
  }
}

bool CoefficientSequence::homogeneous() const {
  if (forcing_.empty()) return true;
  for (int k = lo(); k <= hi(); ++k)
    if (forcing_[k] != Complex{}) return false;
  return true;
}

CoefficientSequence CoefficientSequence::sub(int klo, int khi) const {
  return CoefficientSequence(f0_.sub(klo, khi), f1_.sub(klo, khi),
                             forcing_.empty() ? ComplexSeries{} : forcing_.sub(klo, khi));
}

RootPairSequence::RootPairSequence(ComplexSeries rho1, ComplexSeries rho2,
                                   ComplexSeries discriminant)
    : rho1_(std::move(rho1)), rho2_(std::move(rho2)), disc_(std::move(discriminant)) {
  if (rho1_.empty() || rho1_.lo() != rho2_.lo() || rho1_.hi() != rho2_.hi() ||
      disc_.lo() != rho1_.lo() || disc_.hi() != rho1_.hi())
    throw WindowMismatch("root series must share a non-empty window");
  for (int k = lo(); k <= hi(); ++k) {
    if (!finite(rho1_[k]) || !finite(rho2_[k]))
      throw Error("non-finite root", k);
    if (rho1_[k] == rho2_[k])
      throw DegenerateRoots("degenerate root pair", k);
  }
}

RootPairSequence RootPairSequence::sub(int klo, int khi) const {
  return RootPairSequence(rho1_.sub(klo, khi), rho2_.sub(klo, khi), disc_.sub(klo, khi));
}

ScatterBoundary::ScatterBoundary(double phi_in_, double phi_out_, Complex amplitude)
    : phi_in(phi_in_), phi_out(phi_out_), incident_amplitude(amplitude) {
  if (!(phi_in > 0.0 && phi_in < M_PI) || !(phi_out > 0.0 && phi_out < M_PI))
    throw BadWindow("lead phases must lie strictly inside (0, pi)");
}

namespace {

// f1^2 - 4 f0 with a signed-zero-free imaginary part, so the principal
// square root lands on the upper branch for negative real discriminants.
Complex canonical_discriminant(Complex f0, Complex f1) {
  Complex disc = f1 * f1 - 4.0 * f0;
  if (disc.imag() == 0.0) disc = Complex(disc.real(), 0.0);
  return disc;
}

}  // namespace

std::pair<Complex, Complex> characteristic_roots(const CoefficientSequence& seq, int k) {
  const Complex f0 = seq.f0(k);
  const Complex f1 = seq.f1(k);
  const Complex disc = canonical_discriminant(f0, f1);
  if (std::abs(disc) < kDegeneracyTol * std::max(1.0, std::norm(f1)))
    throw DegenerateRoots("discriminant vanishes (band edge)", k);
  const Complex s = std::sqrt(disc);
  return {-f1 / 2.0 + s / 2.0, -f1 / 2.0 - s / 2.0};
}

RootPairSequence assign_branches(const CoefficientSequence& seq) {
  const int lo = seq.lo(), hi = seq.hi();
  std::vector<Complex> r1(seq.f0().size()), r2(seq.f0().size()), disc(seq.f0().size());

  for (int k = lo; k <= hi; ++k) {
    auto [a, b] = characteristic_roots(seq, k);
    const std::size_t i = static_cast<std::size_t>(k - lo);
    disc[i] = canonical_discriminant(seq.f0(k), seq.f1(k));
    if (k == lo) {
      if (a.imag() < b.imag()) std::swap(a, b);
    } else {
      // continuation: keep the pairing with the smaller total movement
      const Complex p1 = r1[i - 1], p2 = r2[i - 1];
      if (std::abs(a - p1) + std::abs(b - p2) > std::abs(b - p1) + std::abs(a - p2))
        std::swap(a, b);
    }
    r1[i] = a;
    r2[i] = b;

    // Vieta closure at construction
    const double scale = 1.0 + std::abs(seq.f0(k)) + std::abs(seq.f1(k));
    if (std::abs(a * b - seq.f0(k)) > 1e-12 * scale ||
        std::abs(a + b + seq.f1(k)) > 1e-12 * scale)
      throw Error("root extraction lost Vieta closure", k);
  }
  return RootPairSequence(ComplexSeries(lo, std::move(r1)), ComplexSeries(lo, std::move(r2)),
                          ComplexSeries(lo, std::move(disc)));
}

double recurrence_residual(const CoefficientSequence& seq, const SolutionProfile& profile) {
  if (!profile.covers(seq.lo(), seq.hi() + 2))
    throw WindowMismatch("profile must cover the coefficient window plus two cells");
  double num = 0.0, den = 0.0;
  for (int k = profile.lo(); k <= profile.hi(); ++k)
    den = std::max(den, std::abs(profile[k]));
  for (int k = seq.lo(); k <= seq.hi(); ++k) {
    const Complex r =
        profile[k + 2] + seq.f1(k) * profile[k + 1] + seq.f0(k) * profile[k] + seq.force(k);
    num = std::max(num, std::abs(r));
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

namespace {

// The sequence must look homogeneous (f1 = -2 cos phi, f0 = 1) at index k.
void check_lead(const CoefficientSequence& seq, int k, double phi) {
  const double tol = 1e-9;
  if (std::abs(seq.f1(k) - Complex(-2.0 * std::cos(phi), 0.0)) > tol * (1.0 + std::abs(seq.f1(k))) ||
      std::abs(seq.f0(k) - Complex(1.0, 0.0)) > tol * 2.0)
    throw Error("lead segment is not homogeneous at the boundary phase", k);
}

}  // namespace

ScatterSolution direct_scatter_solve(const CoefficientSequence& seq,
                                     const ScatterBoundary& boundary) {
  const int lo = seq.lo(), hi = seq.hi();
  const int w = hi - lo + 1;  // recurrence rows
  if (w < 2) throw WindowTooSmall("need at least two coefficient rows", lo);
  check_lead(seq, lo, boundary.phi_in);
  check_lead(seq, hi, boundary.phi_out);

  const Complex i1{0.0, 1.0};
  const Complex ein = std::exp(i1 * boundary.phi_in);
  const Complex eout = std::exp(i1 * boundary.phi_out);
  const Complex A = boundary.incident_amplitude;

  // Unknowns x = [R, y_lo .. y_{hi+2}, T]; cells c map to column c - lo + 1.
  // Incident wave A e^{i phi_in (c - lo)} carries amplitude A at the first
  // cell; R and T are the reflected/transmitted amplitudes at the first and
  // last cells.
  const int n = w + 4;
  BandedSystem sys(n, 1, 1);
  std::vector<Complex> rhs(static_cast<std::size_t>(n));

  sys.add(0, 0, -1.0);
  sys.add(0, 1, 1.0);
  rhs[0] = A;  // y_lo - R = A
  sys.add(1, 0, -std::conj(ein));
  sys.add(1, 2, 1.0);
  rhs[1] = A * ein;  // y_{lo+1} - R e^{-i phi_in} = A e^{i phi_in}
  for (int j = lo; j <= hi; ++j) {
    const int row = j - lo + 2;
    sys.add(row, row - 1, seq.f0(j));
    sys.add(row, row, seq.f1(j));
    sys.add(row, row + 1, 1.0);
    rhs[static_cast<std::size_t>(row)] = -seq.force(j);
  }
  sys.add(n - 2, n - 3, 1.0);
  sys.add(n - 2, n - 1, -std::conj(eout));  // y_{hi+1} = T e^{-i phi_out}
  sys.add(n - 1, n - 2, 1.0);
  sys.add(n - 1, n - 1, -1.0);  // y_{hi+2} = T

  std::vector<Complex> x = sys.solve(std::move(rhs));

  ScatterSolution sol;
  sol.R = x[0];
  sol.T = x[static_cast<std::size_t>(n - 1)];
  sol.y = ComplexSeries(lo, std::vector<Complex>(x.begin() + 1, x.end() - 1));

  // Split into branch components using the root gauge, extending the chain's
  // roots with the lead values past the window.
  const RootPairSequence roots = assign_branches(seq);
  std::vector<Complex> y1(static_cast<std::size_t>(w + 2)), y2(y1.size());
  for (int c = lo; c <= hi + 2; ++c) {
    Complex g1, g2;
    if (c <= hi) {
      g1 = roots.rho1(c);
      g2 = roots.rho2(c);
    } else {
      g1 = eout;
      g2 = std::conj(eout);
    }
    const Complex yk = sol.y[c];
    const Complex yk1 = c + 1 <= hi + 2 ? sol.y[c + 1] : sol.T * eout;  // lead continuation
    const std::size_t i = static_cast<std::size_t>(c - lo);
    y1[i] = (yk1 - g2 * yk) / (g1 - g2);
    y2[i] = (g1 * yk - yk1) / (g1 - g2);
  }
  sol.y1 = ComplexSeries(lo, std::move(y1));
  sol.y2 = ComplexSeries(lo, std::move(y2));
  return sol;
}

RealSeries flux_series(const SolutionProfile& profile, const RealSeries& weight) {
  if (profile.size() < 2) throw WindowMismatch("profile needs at least two cells");
  if (!weight.covers(profile.lo() + 1, profile.hi()))
    throw WindowMismatch("weight must cover [profile.lo+1, profile.hi]");
  std::vector<double> p(profile.size() - 1);
  for (int k = profile.lo(); k < profile.hi(); ++k)
    p[static_cast<std::size_t>(k - profile.lo())] =
        weight[k + 1] * std::imag(std::conj(profile[k]) * profile[k + 1]);
  return RealSeries(profile.lo(), std::move(p));
}

}  // namespace dwkb
