#include "dwkb/wave_split.hpp"

#include <cmath>

namespace dwkb {

namespace {

Complex gauge_gap(const GaugeSequences& g, int k) {
  const Complex d = g.g1.at(k) - g.g2.at(k);
  const double scale = std::max(1.0, std::abs(g.g1.at(k)) + std::abs(g.g2.at(k)));
  if (std::abs(d) < kDegeneracyTol * scale)
    throw GaugeCollision("gauge sequences collide", k);
  return d;
}

}  // namespace

TransferSequence TransferSequence::sub(int klo, int khi) const {
  return {variant, T.sub(klo, khi), F.empty() ? Series<std::pair<Complex, Complex>>{} : F.sub(klo, khi)};
}

TransferSequence build_transfer_general(const CoefficientSequence& seq,
                                        const GaugeSequences& g) {
  const int lo = seq.lo(), hi = seq.hi();
  if (!g.g1.covers(lo, hi) || !g.g2.covers(lo, hi))
    throw WindowMismatch("gauges must cover the coefficient window");
  if (hi == lo) throw WindowTooSmall("need at least two gauge indices", lo);

  std::vector<Mat2c> t(static_cast<std::size_t>(hi - lo));
  std::vector<std::pair<Complex, Complex>> f(t.size());
  for (int k = lo + 1; k <= hi; ++k) {
    const Complex den = gauge_gap(g, k);
    gauge_gap(g, k - 1);  // uniqueness of the split we start from
    const Complex f0 = seq.f0(k - 1), f1 = seq.f1(k - 1);
    const Complex g1p = g.g1[k - 1], g2p = g.g2[k - 1];
    const Complex g1 = g.g1[k], g2 = g.g2[k];
    Mat2c m;
    m.m11 = -(f0 + g1p * (g2 + f1)) / den;
    m.m12 = -(f0 + g2p * (g2 + f1)) / den;
    m.m21 = (f0 + g1p * (g1 + f1)) / den;
    m.m22 = (f0 + g2p * (g1 + f1)) / den;
    const std::size_t i = static_cast<std::size_t>(k - lo - 1);
    t[i] = m;
    const Complex fbar = seq.force(k - 1) / den;
    f[i] = {-fbar, fbar};
  }
  return {TransferVariant::GeneralGauge, Series<Mat2c>(lo + 1, std::move(t)),
          Series<std::pair<Complex, Complex>>(lo + 1, std::move(f))};
}

SplitState split_from_solution(Complex y_k, Complex y_k1, const GaugeSequences& g, int k) {
  const Complex den = gauge_gap(g, k);
  return {(y_k1 - g.g2.at(k) * y_k) / den, (g.g1.at(k) * y_k - y_k1) / den};
}

TransferSequence transfer_exact(const RootPairSequence& roots) {
  const int lo = roots.lo(), hi = roots.hi();
  if (hi == lo) throw WindowTooSmall("need at least two root indices", lo);
  std::vector<Mat2c> t(static_cast<std::size_t>(hi - lo));
  for (int k = lo + 1; k <= hi; ++k) {
    const Complex r1p = roots.rho1(k - 1), r2p = roots.rho2(k - 1);
    const Complex r1 = roots.rho1(k), r2 = roots.rho2(k);
    const Complex den = r1 - r2;
    Mat2c m;
    m.m11 = r1p * (r1p - r2) / den;
    m.m12 = r2p * (r2p - r2) / den;
    m.m21 = r1p * (r1 - r1p) / den;
    m.m22 = r2p * (r1 - r2p) / den;
    t[static_cast<std::size_t>(k - lo - 1)] = m;
  }
  return {TransferVariant::Exact, Series<Mat2c>(lo + 1, std::move(t)), {}};
}

TransferSequence transfer_wkb_riccati(const RootPairSequence& roots) {
  const int lo = roots.lo(), hi = roots.hi();
  if (hi == lo) throw WindowTooSmall("need at least two root indices", lo);
  std::vector<Mat2c> t(static_cast<std::size_t>(hi - lo));
  for (int k = lo + 1; k <= hi; ++k) {
    const Complex den = roots.sqrt_disc(k);
    const Complex d1 = roots.rho1(k) - roots.rho1(k - 1);
    const Complex d2 = roots.rho2(k) - roots.rho2(k - 1);
    t[static_cast<std::size_t>(k - lo - 1)] =
        Mat2c::diagonal(roots.rho1(k - 1) * (1.0 - d1 / den),
                        roots.rho2(k - 1) * (1.0 + d2 / den));
  }
  return {TransferVariant::WkbRiccati, Series<Mat2c>(lo + 1, std::move(t)), {}};
}

TransferSequence transfer_wkb_direct(const RootPairSequence& roots) {
  const int lo = roots.lo(), hi = roots.hi();
  if (hi == lo) throw WindowTooSmall("need at least two root indices", lo);
  std::vector<Mat2c> t(static_cast<std::size_t>(hi - lo));
  for (int k = lo + 1; k <= hi; ++k) {
    const Complex den = roots.sqrt_disc(k);
    // half-discriminant roots: +-(rho1 - rho2)/2
    const Complex db1 = (roots.sqrt_disc(k) - roots.sqrt_disc(k - 1)) / 2.0;
    t[static_cast<std::size_t>(k - lo - 1)] =
        Mat2c::diagonal(roots.rho1(k - 1) * (1.0 - db1 / den),
                        roots.rho2(k - 1) * (1.0 + (-db1) / den));
  }
  return {TransferVariant::WkbDirect, Series<Mat2c>(lo + 1, std::move(t)), {}};
}

double riccati_residual(const ComplexSeries& gauge, const CoefficientSequence& seq) {
  const int lo = std::max(seq.lo(), gauge.lo());
  const int hi = std::min(seq.hi(), gauge.hi() - 1);
  if (hi < lo) throw WindowMismatch("gauge and coefficient windows do not overlap");
  double r = 0.0;
  for (int k = lo; k <= hi; ++k)
    r = std::max(r, std::abs(seq.f0(k) + gauge[k] * (gauge[k + 1] + seq.f1(k))));
  return r;
}

double riccati_residual(const GaugeSequences& g, const CoefficientSequence& seq, int branch) {
  return riccati_residual(branch == 1 ? g.g1 : g.g2, seq);
}

GaugeSequences riccati_approx_roots(const RootPairSequence& roots, int branch) {
  const int lo = roots.lo(), hi = roots.hi();
  if (hi == lo) throw WindowTooSmall("need at least two root indices", lo);
  std::vector<Complex> g(static_cast<std::size_t>(hi - lo));
  for (int k = lo; k < hi; ++k) {
    const Complex den = roots.sqrt_disc(k + 1);
    const Complex step = roots.rho(branch, k + 1) - roots.rho(branch, k);
    const double sign = branch == 1 ? -1.0 : 1.0;
    g[static_cast<std::size_t>(k - lo)] = roots.rho(branch, k) * (1.0 + sign * step / den);
  }
  GaugeSequences out;
  (branch == 1 ? out.g1 : out.g2) = ComplexSeries(lo, std::move(g));
  return out;
}

Series<SplitState> propagate(const TransferSequence& transfers, SplitState initial, int k0) {
  if (transfers.T.empty()) throw WindowMismatch("empty transfer sequence");
  if (k0 != transfers.lo() - 1)
    throw WindowMismatch("initial state must sit one index before the transfer window", k0);
  std::vector<SplitState> states(transfers.T.size() + 1);
  states[0] = initial;
  SplitState s = initial;
  for (int k = transfers.lo(); k <= transfers.hi(); ++k) {
    const Mat2c& m = transfers.T[k];
    const auto [fa, fb] = transfers.force(k);
    s = {m.m11 * s.y1 + m.m12 * s.y2 + fa, m.m21 * s.y1 + m.m22 * s.y2 + fb};
    states[static_cast<std::size_t>(k - k0)] = s;
  }
  return Series<SplitState>(k0, std::move(states));
}

}  // namespace dwkb
