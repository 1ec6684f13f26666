#pragma once

#include <cstddef>
#include <vector>

#include "taylor.hpp"

namespace fockm {

// Coefficient actions of a = M_z and b = d/dz. Both are exact for any coefficient
// ring: a raises the truncation degree by one, b lowers it by one.

template <typename T>
Taylor<T> apply_a(const Taylor<T>& f) {
  std::vector<T> out(f.size() + 1, T{});
  for (std::size_t n = 0; n < f.size(); ++n) out[n + 1] = f.coeffs()[n];
  return Taylor<T>(std::move(out));
}

template <typename T>
Taylor<T> apply_b(const Taylor<T>& f) {
  if (f.size() <= 1) return Taylor<T>{};
  std::vector<T> out(f.size() - 1, T{});
  for (std::size_t n = 0; n + 1 < f.size(); ++n) out[n] = T(static_cast<long>(n + 1)) * f.coeffs()[n + 1];
  return Taylor<T>(std::move(out));
}

/// a^k f: shift by k.
template <typename T>
Taylor<T> apply_a_pow(const Taylor<T>& f, std::size_t k) {
  std::vector<T> out(f.size() + k, T{});
  for (std::size_t n = 0; n < f.size(); ++n) out[n + k] = f.coeffs()[n];
  return Taylor<T>(std::move(out));
}

/// b^k f: coefficient n of the result is (n+k)!/n! f_{n+k}.
template <typename T>
Taylor<T> apply_b_pow(const Taylor<T>& f, std::size_t k) {
  if (f.size() <= k) return Taylor<T>{};
  std::vector<T> out(f.size() - k, T{});
  for (std::size_t n = 0; n < out.size(); ++n) {
    T c = f.coeffs()[n + k];
    for (std::size_t j = n + 1; j <= n + k; ++j) c *= T(static_cast<long>(j));
    out[n] = c;
  }
  return Taylor<T>(std::move(out));
}

}  // namespace fockm
