#pragma once

#include <vector>

#include "dwkb/types.hpp"

namespace dwkb {

// Complex banded linear system with kl sub- and ku superdiagonals, solved by
// LU with partial pivoting (band storage with kl fill rows, LAPACK gbsv
// layout).  Used by the boundary-value oracle; deliberately independent of
// the transfer/scattering machinery.
class BandedSystem {
 public:
  BandedSystem(int n, int kl, int ku);

  int size() const { return n_; }

  // Accumulate into A(row, col); |row - col| must fit in the band.
  void add(int row, int col, Complex value);

  // Solve A x = rhs in place of the internal factorization.  Throws
  // SingularSystem on a zero pivot.  Single-shot: the matrix is consumed.
  std::vector<Complex> solve(std::vector<Complex> rhs);

 private:
  Complex& at(int row, int col);

  int n_, kl_, ku_;
  std::vector<Complex> ab_;  // (2*kl + ku + 1) x n, column-major bands
};

}  // namespace dwkb
