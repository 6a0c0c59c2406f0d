#include "dwkb/banded.hpp"

#include <algorithm>
#include <cmath>

namespace dwkb {

// Band storage: ab_[r + c*ld] with ld = 2*kl + ku + 1; entry (i, j) lives at
// row kl + ku + i - j.  The extra kl rows absorb pivoting fill.

BandedSystem::BandedSystem(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku),
      ab_(static_cast<std::size_t>((2 * kl + ku + 1)) * static_cast<std::size_t>(n)) {}

Complex& BandedSystem::at(int row, int col) {
  const int ld = 2 * kl_ + ku_ + 1;
  return ab_[static_cast<std::size_t>(kl_ + ku_ + row - col) +
             static_cast<std::size_t>(col) * static_cast<std::size_t>(ld)];
}

void BandedSystem::add(int row, int col, Complex value) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_ || col - row > ku_ || row - col > kl_)
    throw WindowMismatch("banded entry (" + std::to_string(row) + ", " +
                         std::to_string(col) + ") outside band");
  at(row, col) += value;
}

std::vector<Complex> BandedSystem::solve(std::vector<Complex> rhs) {
  if (static_cast<int>(rhs.size()) != n_)
    throw WindowMismatch("right-hand side length does not match system size");

  const int band = kl_ + ku_;  // effective superdiagonals after pivot fill
  std::vector<int> piv(static_cast<std::size_t>(n_));

  for (int j = 0; j < n_; ++j) {
    // pivot search within the kl rows below the diagonal
    int p = j;
    double best = std::abs(at(j, j));
    for (int i = j + 1; i < std::min(n_, j + kl_ + 1); ++i) {
      const double m = std::abs(at(i, j));
      if (m > best) { best = m; p = i; }
    }
    if (best == 0.0)
      throw SingularSystem("banded solve hit a zero pivot", j);
    piv[static_cast<std::size_t>(j)] = p;
    if (p != j) {
      for (int c = j; c < std::min(n_, j + band + 1); ++c)
        std::swap(at(j, c), at(p, c));
      std::swap(rhs[static_cast<std::size_t>(j)], rhs[static_cast<std::size_t>(p)]);
    }
    const Complex pivot = at(j, j);
    for (int i = j + 1; i < std::min(n_, j + kl_ + 1); ++i) {
      const Complex l = at(i, j) / pivot;
      at(i, j) = l;
      if (l != Complex{}) {
        for (int c = j + 1; c < std::min(n_, j + band + 1); ++c)
          at(i, c) -= l * at(j, c);
        rhs[static_cast<std::size_t>(i)] -= l * rhs[static_cast<std::size_t>(j)];
      }
    }
  }

  for (int j = n_ - 1; j >= 0; --j) {
    Complex s = rhs[static_cast<std::size_t>(j)];
    for (int c = j + 1; c < std::min(n_, j + band + 1); ++c)
      s -= at(j, c) * rhs[static_cast<std::size_t>(c)];
    rhs[static_cast<std::size_t>(j)] = s / at(j, j);
  }
  return rhs;
}

}  // namespace dwkb
