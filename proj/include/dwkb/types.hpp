#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dwkb {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors.  Every failure carries a message and, where meaningful, the cell
// index at which the computation broke down.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg, std::optional<int> cell = std::nullopt)
      : std::runtime_error(cell ? msg + " (cell " + std::to_string(*cell) + ")" : msg),
        cell_(cell) {}
  std::optional<int> cell() const { return cell_; }

 private:
  std::optional<int> cell_;
};

class DegenerateRoots : public Error { public: using Error::Error; };
class WindowMismatch : public Error { public: using Error::Error; };
class WindowTooSmall : public Error { public: using Error::Error; };
class GaugeCollision : public Error { public: using Error::Error; };
class SingularSystem : public Error { public: using Error::Error; };
class NonInvertibleCell : public Error { public: using Error::Error; };
class CascadePole : public Error { public: using Error::Error; };
class ProfileSingular : public Error { public: using Error::Error; };
class BranchCutCrossing : public Error { public: using Error::Error; };
class BadGeometry : public Error { public: using Error::Error; };
class BadWindow : public Error { public: using Error::Error; };
class ZeroAmplitude : public Error { public: using Error::Error; };
class MissingBaseline : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

// ---------------------------------------------------------------------------
// Series<T>: values over a contiguous integer index window [lo, hi], both
// ends inclusive.  The value container for everything "map k -> value" in
// this library.  Immutable after construction in normal use.
// ---------------------------------------------------------------------------

template <typename T>
class Series {
 public:
  Series() = default;
  Series(int lo, std::vector<T> values) : lo_(lo), v_(std::move(values)) {}

  static Series filled(int lo, int hi, const T& value) {
    if (hi < lo) return Series(lo, {});
    return Series(lo, std::vector<T>(static_cast<std::size_t>(hi - lo + 1), value));
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(v_.size()) - 1; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }

  bool covers(int k) const { return !empty() && k >= lo() && k <= hi(); }
  bool covers(int klo, int khi) const { return covers(klo) && covers(khi); }

  const T& operator[](int k) const { return v_[static_cast<std::size_t>(k - lo_)]; }
  T& operator[](int k) { return v_[static_cast<std::size_t>(k - lo_)]; }

  const T& at(int k) const {
    if (!covers(k))
      throw WindowMismatch("index outside series window [" + std::to_string(lo()) +
                               ", " + std::to_string(hi()) + "]",
                           k);
    return (*this)[k];
  }

  Series sub(int klo, int khi) const {
    if (khi < klo || !covers(klo, khi))
      throw WindowMismatch("sub-window [" + std::to_string(klo) + ", " +
                           std::to_string(khi) + "] not contained in [" +
                           std::to_string(lo()) + ", " + std::to_string(hi()) + "]");
    return Series(klo, std::vector<T>(v_.begin() + (klo - lo_), v_.begin() + (khi - lo_ + 1)));
  }

  const std::vector<T>& values() const { return v_; }

 private:
  int lo_ = 0;
  std::vector<T> v_;
};

using ComplexSeries = Series<Complex>;
using RealSeries = Series<double>;

// A solution y_k of the recurrence over a contiguous window.
using SolutionProfile = ComplexSeries;

// ---------------------------------------------------------------------------
// 2x2 complex matrix, used in both transfer (T) and scattering (S) roles.
// ---------------------------------------------------------------------------

struct Mat2c {
  Complex m11{}, m12{}, m21{}, m22{};

  Complex det() const { return m11 * m22 - m12 * m21; }

  static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2c diagonal(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

  Mat2c operator*(const Mat2c& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
};

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

// Unwrapped argument series: principal args adjusted so consecutive entries
// differ by less than pi.
RealSeries unwrap_args(const ComplexSeries& z);

}  // namespace dwkb
