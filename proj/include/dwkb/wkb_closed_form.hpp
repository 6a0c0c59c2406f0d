#pragma once

#include "dwkb/recurrence.hpp"
#include "dwkb/types.hpp"

namespace dwkb {

// Closed-form WKB solutions.  ProductForm is the running product of the
// diagonal transfer factors; RiccatiSum and DirectSum are the
// (f1^2-4f0)^{-1/4} exp(sum ...) forms, where RiccatiSum keeps the extra
// phase-drift sum sum (f1_s - f1_{s-1}) / (2 sqrt(f1_s^2 - 4 f0_s)) and
// DirectSum drops it.  All are normalized to a caller value at k0.
enum class ClosedFormVariant { ProductForm, RiccatiSum, DirectSum };

struct WkbClosedForm {
  ClosedFormVariant variant;
  int branch;                // 1 or 2
  int k0;                    // normalization anchor; values[k0] == y0
  ComplexSeries values;      // [k0, k_end]
  ComplexSeries prefactor;   // (f1^2-4f0)^{-1/4}, branch-continued; empty for ProductForm
};

WkbClosedForm wkb_product(const RootPairSequence& roots, int branch, int k0, int k_end,
                          Complex y0);

WkbClosedForm wkb_expsum_riccati(const CoefficientSequence& seq, const RootPairSequence& roots,
                                 int branch, int k0, int k_end, Complex y0);

WkbClosedForm wkb_expsum_direct(const CoefficientSequence& seq, const RootPairSequence& roots,
                                int branch, int k0, int k_end, Complex y0);

// The phase-drift sum sum_{s=k0+1}^{k_end} (f1_s - f1_{s-1}) / (2 sqrt_s),
// with the square root branch continued along the window (Im >= 0 seed).
Complex delta_p_sum(const CoefficientSequence& seq, int k0, int k_end);

// Continuum estimate of the drift: -i (phi_out - phi_in) / 2.
Complex delta_p_estimate(double phi_in, double phi_out);

}  // namespace dwkb
