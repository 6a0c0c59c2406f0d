#include "dwkb/types.hpp"

#include <cmath>

namespace dwkb {

double wrap_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a > M_PI) a -= two_pi;
  if (a <= -M_PI) a += two_pi;
  return a;
}

RealSeries unwrap_args(const ComplexSeries& z) {
  if (z.empty()) return {};
  std::vector<double> out(z.size());
  double prev = std::arg(z[z.lo()]);
  out[0] = prev;
  for (int k = z.lo() + 1; k <= z.hi(); ++k) {
    prev += wrap_angle(std::arg(z[k]) - prev);
    out[static_cast<std::size_t>(k - z.lo())] = prev;
  }
  return RealSeries(z.lo(), std::move(out));
}

}  // namespace dwkb
