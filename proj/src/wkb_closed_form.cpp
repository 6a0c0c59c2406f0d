#include "dwkb/wkb_closed_form.hpp"

#include <cmath>

namespace dwkb {

namespace {

// log of a sequence with the argument continued along the window; jumps
// larger than pi/2 between neighbours are treated as a branch-cut crossing.
class ContinuedLog {
 public:
  Complex eval(Complex z, int k) {
    if (std::abs(z) == 0.0) throw DegenerateRoots("log of zero", k);
    const double mag = std::log(std::abs(z));
    double a = std::arg(z);
    if (seeded_) {
      const double step = wrap_angle(a - prev_);
      if (std::abs(step) > M_PI / 2.0)
        throw BranchCutCrossing("argument jumped across the cut", k);
      a = prev_ + step;
    }
    prev_ = a;
    seeded_ = true;
    return {mag, a};
  }

 private:
  bool seeded_ = false;
  double prev_ = 0.0;
};

void require_window(const RootPairSequence& roots, int k0, int k_end) {
  if (k_end < k0) throw BadWindow("k_end must not precede k0", k_end);
  if (!roots.rho1().covers(k0, k_end))
    throw WindowMismatch("roots must cover [k0, k_end]");
}

ComplexSeries quarter_root_prefactor(const RootPairSequence& roots, int k0, int k_end) {
  ContinuedLog logd;
  std::vector<Complex> pref(static_cast<std::size_t>(k_end - k0 + 1));
  for (int k = k0; k <= k_end; ++k)
    pref[static_cast<std::size_t>(k - k0)] =
        std::exp(-logd.eval(roots.discriminant(k), k) / 4.0);
  return ComplexSeries(k0, std::move(pref));
}

WkbClosedForm expsum(const CoefficientSequence& seq, const RootPairSequence& roots,
                     int branch, int k0, int k_end, Complex y0, bool with_drift,
                     ClosedFormVariant variant) {
  require_window(roots, k0, k_end);
  if (!seq.f1().covers(k0, k_end))
    throw WindowMismatch("coefficients must cover [k0, k_end]");

  const ComplexSeries pref = quarter_root_prefactor(roots, k0, k_end);
  const double sign = branch == 1 ? 1.0 : -1.0;

  ContinuedLog logrho;
  std::vector<Complex> vals(static_cast<std::size_t>(k_end - k0 + 1));
  vals[0] = y0;
  Complex expo{};
  for (int s = k0 + 1; s <= k_end; ++s) {
    expo += logrho.eval(roots.rho(branch, s - 1), s - 1);
    if (with_drift)
      expo += sign * (seq.f1(s) - seq.f1(s - 1)) / (2.0 * roots.sqrt_disc(s));
    vals[static_cast<std::size_t>(s - k0)] = y0 * (pref[s] / pref[k0]) * std::exp(expo);
  }
  return {variant, branch, k0, ComplexSeries(k0, std::move(vals)), pref};
}

}  // namespace

WkbClosedForm wkb_product(const RootPairSequence& roots, int branch, int k0, int k_end,
                          Complex y0) {
  require_window(roots, k0, k_end);
  const double sign = branch == 1 ? -1.0 : 1.0;
  std::vector<Complex> vals(static_cast<std::size_t>(k_end - k0 + 1));
  Complex acc = y0;
  vals[0] = acc;
  for (int s = k0 + 1; s <= k_end; ++s) {
    const Complex step = roots.rho(branch, s) - roots.rho(branch, s - 1);
    acc *= roots.rho(branch, s - 1) * (1.0 + sign * step / roots.sqrt_disc(s));
    vals[static_cast<std::size_t>(s - k0)] = acc;
  }
  return {ClosedFormVariant::ProductForm, branch, k0, ComplexSeries(k0, std::move(vals)), {}};
}

WkbClosedForm wkb_expsum_riccati(const CoefficientSequence& seq, const RootPairSequence& roots,
                                 int branch, int k0, int k_end, Complex y0) {
  return expsum(seq, roots, branch, k0, k_end, y0, true, ClosedFormVariant::RiccatiSum);
}

WkbClosedForm wkb_expsum_direct(const CoefficientSequence& seq, const RootPairSequence& roots,
                                int branch, int k0, int k_end, Complex y0) {
  return expsum(seq, roots, branch, k0, k_end, y0, false, ClosedFormVariant::DirectSum);
}

Complex delta_p_sum(const CoefficientSequence& seq, int k0, int k_end) {
  if (k_end < k0) throw BadWindow("k_end must not precede k0", k_end);
  if (!seq.f1().covers(k0, k_end))
    throw WindowMismatch("coefficients must cover [k0, k_end]");
  // branch-continued square root of the discriminant, Im >= 0 seed
  const RootPairSequence roots = assign_branches(seq.sub(k0, k_end));
  Complex sum{};
  for (int s = k0 + 1; s <= k_end; ++s)
    sum += (seq.f1(s) - seq.f1(s - 1)) / (2.0 * roots.sqrt_disc(s));
  return sum;
}

Complex delta_p_estimate(double phi_in, double phi_out) {
  if (!(phi_in > 0.0 && phi_in < M_PI) || !(phi_out > 0.0 && phi_out < M_PI))
    throw BadWindow("phases must lie strictly inside (0, pi)");
  return Complex(0.0, -(phi_out - phi_in) / 2.0);
}

}  // namespace dwkb
