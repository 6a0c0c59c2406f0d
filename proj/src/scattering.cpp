#include "dwkb/scattering.hpp"

#include <cmath>

namespace dwkb {

CellScatterData cell_smatrix(const Mat2c& T, Complex fbar) {
  if (std::abs(T.m22) < 1e-300)
    throw NonInvertibleCell("transfer matrix has vanishing T22");
  CellScatterData out;
  out.S.m11 = -T.m21 / T.m22;
  out.S.m12 = 1.0 / T.m22;
  out.S.m21 = T.det() / T.m22;
  out.S.m22 = T.m12 / T.m22;
  out.Fbar = {-fbar / T.m22, -(T.m12 + T.m22) / T.m22 * fbar};
  return out;
}

Mat2c cascade(const Mat2c& acc, const Mat2c& cell) {
  const Complex D = 1.0 - acc.m22 * cell.m11;
  if (std::abs(D) < 1e-12)
    throw CascadePole("cascade denominator vanished (resonant pole)");
  Mat2c out;
  out.m11 = acc.m11 + acc.m12 * cell.m11 * acc.m21 / D;
  out.m12 = acc.m12 * cell.m12 / D;
  out.m21 = cell.m21 * acc.m21 / D;
  out.m22 = cell.m22 + cell.m21 * acc.m22 * cell.m12 / D;
  return out;
}

CumulativeScatter cascade_chain(const TransferSequence& transfers) {
  if (transfers.T.empty()) throw WindowMismatch("empty transfer sequence");
  for (int k = transfers.lo(); k <= transfers.hi(); ++k) {
    const auto [fa, fb] = transfers.force(k);
    if (fa != Complex{} || fb != Complex{})
      throw Error("scatter cascade expects a homogeneous chain", k);
  }
  const int lo = transfers.lo();
  std::vector<Mat2c> cums(transfers.T.size() + 1);
  Mat2c acc{0.0, 1.0, 1.0, 0.0};  // pass-through: star-product identity
  cums[0] = acc;
  for (int k = lo; k <= transfers.hi(); ++k) {
    try {
      acc = cascade(acc, cell_smatrix(transfers.T[k]).S);
    } catch (const CascadePole&) {
      throw CascadePole("cascade denominator vanished (resonant pole)", k);
    }
    cums[static_cast<std::size_t>(k - lo + 1)] = acc;
  }
  return {Series<Mat2c>(lo - 1, std::move(cums))};
}

std::pair<Complex, Complex> extract_RT(const Mat2c& total) {
  return {total.m11, total.m21};
}

ScatterSolution reconstruct_profile(const CumulativeScatter& cums, Complex R) {
  const int lo = cums.perCell.lo(), hi = cums.perCell.hi();
  std::vector<Complex> y1(cums.perCell.size()), y2(y1.size()), y(y1.size());
  for (int k = lo; k <= hi; ++k) {
    const Mat2c& S = cums.perCell[k];
    if (std::abs(S.m12) < 1e-300)
      throw ProfileSingular("cumulative S12 vanished during reconstruction", k);
    const std::size_t i = static_cast<std::size_t>(k - lo);
    y2[i] = (R - S.m11) / S.m12;
    y1[i] = S.m21 + S.m22 * y2[i];
    y[i] = y1[i] + y2[i];
  }
  ScatterSolution sol;
  sol.R = R;
  sol.y1 = ComplexSeries(lo, std::move(y1));
  sol.y2 = ComplexSeries(lo, std::move(y2));
  sol.y = ComplexSeries(lo, std::move(y));
  return sol;
}

ScatterSolution smatrix_scatter(const TransferSequence& transfers,
                                const RootPairSequence& roots, Complex incident_amplitude) {
  const CumulativeScatter cums = cascade_chain(transfers);
  const int last = transfers.hi();
  auto [R, T] = extract_RT(cums.perCell[last]);
  ScatterSolution sol = reconstruct_profile(cums, R);
  sol.T = T;

  if (incident_amplitude != Complex(1.0, 0.0)) {
    sol.R *= incident_amplitude;
    sol.T *= incident_amplitude;
    for (int k = sol.y.lo(); k <= sol.y.hi(); ++k) {
      sol.y1[k] *= incident_amplitude;
      sol.y2[k] *= incident_amplitude;
      sol.y[k] *= incident_amplitude;
    }
  }

  // extend the total one cell right via the split relation at the chain end
  if (!roots.rho1().covers(last))
    throw WindowMismatch("roots must cover the transfer window", last);
  std::vector<Complex> ext(sol.y.values());
  ext.push_back(roots.rho1(last) * sol.y1[last] + roots.rho2(last) * sol.y2[last]);
  sol.y = ComplexSeries(sol.y1.lo(), std::move(ext));
  return sol;
}

}  // namespace dwkb
