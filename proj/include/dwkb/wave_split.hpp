#pragma once

#include <utility>

#include "dwkb/recurrence.hpp"
#include "dwkb/types.hpp"

namespace dwkb {

// ---------------------------------------------------------------------------
// Wave splitting: y_k = y1_k + y2_k with the auxiliary condition
// y_{k+1} = g1[k] y1_k + g2[k] y2_k.  The split is unique whenever
// g1[k] != g2[k].  In the root gauge (g = characteristic roots) the one-step
// transfer matrix is exact; approximate Riccati gauges diagonalize it up to
// slow-variation corrections.
// ---------------------------------------------------------------------------

// The arbitrary splitting sequences.  Either branch may be left empty when a
// caller only needs one; operations that use both validate g1 != g2 at every
// index they touch.
struct GaugeSequences {
  ComplexSeries g1;
  ComplexSeries g2;

  static GaugeSequences root_gauge(const RootPairSequence& roots) {
    return {roots.rho1(), roots.rho2()};
  }
};

struct SplitState {
  Complex y1{};
  Complex y2{};
  Complex total() const { return y1 + y2; }
};

enum class TransferVariant { Exact, WkbRiccati, WkbDirect, GeneralGauge };

// One-step maps (y1, y2)_{k-1} -> (y1, y2)_k over a contiguous window,
// plus the forcing column F_k.  For the WKB variants T is diagonal with
// off-diagonal entries exactly zero by construction.
struct TransferSequence {
  TransferVariant variant = TransferVariant::Exact;
  Series<Mat2c> T;
  Series<std::pair<Complex, Complex>> F;  // empty = zero forcing

  int lo() const { return T.lo(); }
  int hi() const { return T.hi(); }
  std::pair<Complex, Complex> force(int k) const {
    return F.empty() ? std::pair<Complex, Complex>{} : F.at(k);
  }
  bool diagonal() const {
    return variant == TransferVariant::WkbRiccati || variant == TransferVariant::WkbDirect;
  }
  TransferSequence sub(int klo, int khi) const;
};

// Transfer matrices in an arbitrary gauge.  Input window [lo, hi] emits T_k
// for k in [lo+1, hi]; T_k combines the coefficients at k-1 with gauges at
// k-1 and k, F_k = (-fbar, +fbar) with fbar = forcing[k-1]/(g1[k]-g2[k]).
TransferSequence build_transfer_general(const CoefficientSequence& seq,
                                        const GaugeSequences& g);

// Invert the split at index k: returns (y1, y2) with y1 + y2 = y_k and
// g1[k] y1 + g2[k] y2 = y_k1.
SplitState split_from_solution(Complex y_k, Complex y_k1, const GaugeSequences& g, int k);

// Root-gauge transfer matrices (exact: propagating with these reproduces the
// recurrence identically).  Roots over [lo, hi] emit T over [lo+1, hi].
TransferSequence transfer_exact(const RootPairSequence& roots);

// Diagonal WKB variant keeping the exact diagonal of the root-gauge matrix
// (equivalently, the first-order solution of the Riccati equation).
TransferSequence transfer_wkb_riccati(const RootPairSequence& roots);

// Diagonal WKB variant whose corrections use the half-discriminant roots
// +-sqrt(f1^2-4f0)/2 instead of the full roots (the direct asymptotic
// expansion, no Riccati step).
TransferSequence transfer_wkb_direct(const RootPairSequence& roots);

// max_k |f0[k] + g[k] (g[k+1] + f1[k])|: how far a gauge is from exactly
// diagonalizing the transfer map.
double riccati_residual(const ComplexSeries& gauge, const CoefficientSequence& seq);
double riccati_residual(const GaugeSequences& g, const CoefficientSequence& seq, int branch);

// First-order approximate Riccati solutions built from the roots:
// g[k] = rho_k (1 -+ (rho_{k+1} - rho_k)/(rho1_{k+1} - rho2_{k+1})), with -
// for branch 1 and + for branch 2.  Returns the requested branch filled,
// window [lo, hi-1].
GaugeSequences riccati_approx_roots(const RootPairSequence& roots, int branch);

// Left-to-right propagation including forcing; initial state sits at
// transfers.lo()-1.  Returns states over [lo-1, hi].
Series<SplitState> propagate(const TransferSequence& transfers, SplitState initial, int k0);

}  // namespace dwkb
