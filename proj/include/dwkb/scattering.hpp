#pragma once

#include <utility>

#include "dwkb/recurrence.hpp"
#include "dwkb/types.hpp"
#include "dwkb/wave_split.hpp"

namespace dwkb {

// ---------------------------------------------------------------------------
// S-matrix form of the one-step map: (y2_{k-1}, y1_k) = S_k (y1_{k-1}, y2_k)
// + Fbar_k.  Cascading S-matrices stays well-conditioned on long chains
// where raw transfer products would mix growing and decaying data.
// ---------------------------------------------------------------------------

struct CellScatterData {
  Mat2c S;
  std::pair<Complex, Complex> Fbar;
};

// Cumulative matrices S^(k) relating (y1_first, y2_k) to (y2_first, y1_k).
// perCell extends one index left of the first cell matrix with the
// pass-through [[0,1],[1,0]], so perCell[first] composed with the first cell
// equals that cell.
struct CumulativeScatter {
  Series<Mat2c> perCell;
};

// S-matrix of one transfer matrix: S11 = -T21/T22, S12 = 1/T22,
// S21 = det(T)/T22, S22 = T12/T22; Fbar = (-fbar/T22, -(T12+T22) fbar/T22).
CellScatterData cell_smatrix(const Mat2c& T, Complex fbar = 0.0);

// Star product: the unique composition S^(k) = acc * cell obtained by
// eliminating the shared intermediate amplitudes.  D = 1 - acc22 cell11.
Mat2c cascade(const Mat2c& acc, const Mat2c& cell);

// Fold cell_smatrix/cascade along a (homogeneous) transfer chain [lo, hi];
// returns cumulative matrices over [lo-1, hi] seeded with the pass-through.
CumulativeScatter cascade_chain(const TransferSequence& transfers);

// R = S11, T = S21 of the full-chain cumulative matrix (unit incidence).
std::pair<Complex, Complex> extract_RT(const Mat2c& total);

// Per-cell profile from the cumulative matrices and the reflection:
// y2_k = (R - S11^(k))/S12^(k), y1_k = S21^(k) + S22^(k) y2_k, y = y1 + y2.
ScatterSolution reconstruct_profile(const CumulativeScatter& cums, Complex R);

// Whole pipeline: cascade, extract R/T, reconstruct, and extend the total
// profile one cell past the chain end via the gauge relation
// y_{hi+1} = rho1[hi] y1_hi + rho2[hi] y2_hi.  Roots must cover the chain.
ScatterSolution smatrix_scatter(const TransferSequence& transfers,
                                const RootPairSequence& roots,
                                Complex incident_amplitude = 1.0);

}  // namespace dwkb
