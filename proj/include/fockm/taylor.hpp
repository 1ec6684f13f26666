#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace fockm {

/// A truncated power series f(z) = sum_n f_n z^n over a coefficient ring T.
///
/// The stored length is an artifact of truncation: two series are equal when they
/// agree after trailing zeros are stripped. The zero series has degree 0 and an
/// empty coefficient vector once normalized.
template <typename T>
class Taylor {
 public:
  using value_type = T;

  Taylor() = default;
  explicit Taylor(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {}
  Taylor(std::initializer_list<T> coeffs) : coeffs_(coeffs) {}

  /// z^n with unit coefficient.
  static Taylor monomial(std::size_t n, T c = T{1}) {
    std::vector<T> v(n + 1, T{});
    v[n] = std::move(c);
    return Taylor(std::move(v));
  }

  std::size_t size() const noexcept { return coeffs_.size(); }
  bool empty() const noexcept { return coeffs_.empty(); }

  /// Truncation degree: index of the last stored coefficient.
  std::size_t truncation_degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  /// Coefficient n, zero beyond the stored range.
  T operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : T{}; }
  T& at(std::size_t n) {
    if (n >= coeffs_.size()) coeffs_.resize(n + 1, T{});
    return coeffs_[n];
  }

  const std::vector<T>& coeffs() const noexcept { return coeffs_; }
  std::vector<T>& coeffs() noexcept { return coeffs_; }

  Taylor& normalize() {
    while (!coeffs_.empty() && coeffs_.back() == T{}) coeffs_.pop_back();
    return *this;
  }

  Taylor normalized() const {
    Taylor t = *this;
    t.normalize();
    return t;
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!(c == T{})) return false;
    return true;
  }

  friend bool operator==(const Taylor& a, const Taylor& b) {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }

  Taylor& operator+=(const Taylor& o) {
    if (o.size() > size()) coeffs_.resize(o.size(), T{});
    for (std::size_t i = 0; i < o.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    if (o.size() > size()) coeffs_.resize(o.size(), T{});
    for (std::size_t i = 0; i < o.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Taylor& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(Taylor a, const T& s) { return a *= s; }
  friend Taylor operator*(const T& s, Taylor a) { return a *= s; }

 private:
  std::vector<T> coeffs_;
};

/// The floating-point element type used for all norm and kernel computations.
using TaylorCoeffs = Taylor<cplx>;

/// Maps each coefficient through `fn`, e.g. to lift an exact series into floating point.
template <typename U, typename T, typename Fn>
Taylor<U> transform_coeffs(const Taylor<T>& f, Fn fn) {
  std::vector<U> out;
  out.reserve(f.size());
  for (const auto& c : f.coeffs()) out.push_back(fn(c));
  return Taylor<U>(std::move(out));
}

}  // namespace fockm
