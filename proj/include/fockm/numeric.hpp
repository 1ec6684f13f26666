#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>

namespace fockm {

using cplx = std::complex<double>;

/// ln(DBL_MAX), the largest log-magnitude a double can hold.
inline constexpr double kLogMaxDouble = 709.782712893384;

/// ln(n!) via lgamma.
inline double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

/// ln((n!)^m) for any integer m; the log-domain weight of index n in F_m.
inline double log_weight(int m, std::size_t n) { return static_cast<double>(m) * log_factorial(n); }

/// Neumaier's variant of Kahan summation; also valid when terms exceed the running sum.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if constexpr (std::is_floating_point_v<T>) {
      comp_ += (std::abs(sum_) >= std::abs(x)) ? (sum_ - t) + x : (x - t) + sum_;
    } else {
      comp_ += T{neumaier(sum_.real(), x.real(), t.real()), neumaier(sum_.imag(), x.imag(), t.imag())};
    }
    sum_ = t;
  }

  T value() const { return sum_ + comp_; }

 private:
  static double neumaier(double s, double x, double t) {
    return (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
  }

  T sum_{};
  T comp_{};
};

/// Numerically stable ln(sum exp(v_i)); returns -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> values) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) hi = std::max(hi, v);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double v : values) s += std::exp(v - hi);
  return hi + std::log(s);
}

inline double relative_error(double got, double want) {
  const double scale = std::max(std::abs(want), std::numeric_limits<double>::min());
  return std::abs(got - want) / scale;
}

inline double relative_error(cplx got, cplx want) {
  const double scale = std::max(std::abs(want), std::numeric_limits<double>::min());
  return std::abs(got - want) / scale;
}

}  // namespace fockm
