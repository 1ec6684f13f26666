#pragma once

#include <cstddef>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ladder.hpp"

namespace fockm {

using BigInt = boost::multiprecision::cpp_int;

/// Triangle of Stirling numbers of the second kind S(k, n), 0 <= n <= k <= max_k.
///
/// Rows are appended on demand under an exclusive lock; readers take a shared lock.
/// Rows live in a deque so growth never moves existing entries.
class StirlingTable {
 public:
  explicit StirlingTable(std::size_t eager_max_k = 0) { grow_to(eager_max_k); }

  StirlingTable(const StirlingTable&) = delete;
  StirlingTable& operator=(const StirlingTable&) = delete;

  BigInt operator()(std::size_t k, std::size_t n) const {
    if (n > k) return BigInt{0};
    grow_to(k);
    std::shared_lock lock(mutex_);
    return rows_[k][n];
  }

  std::vector<BigInt> row(std::size_t k) const {
    grow_to(k);
    std::shared_lock lock(mutex_);
    return rows_[k];
  }

  std::size_t max_k() const {
    std::shared_lock lock(mutex_);
    return rows_.size() - 1;
  }

  void grow_to(std::size_t k) const {
    {
      std::shared_lock lock(mutex_);
      if (!rows_.empty() && rows_.size() > k) return;
    }
    std::unique_lock lock(mutex_);
    if (rows_.empty()) rows_.push_back({BigInt{1}});
    while (rows_.size() <= k) {
      const std::size_t r = rows_.size();
      const auto& prev = rows_.back();
      std::vector<BigInt> next(r + 1, BigInt{0});
      // S(r,n) = n S(r-1,n) + S(r-1,n-1); S(r,0) = 0 for r >= 1.
      for (std::size_t n = 1; n <= r; ++n) {
        BigInt v = prev[n - 1];
        if (n < r) v += BigInt(n) * prev[n];
        next[n] = std::move(v);
      }
      rows_.push_back(std::move(next));
    }
  }

 private:
  mutable std::shared_mutex mutex_;
  mutable std::deque<std::vector<BigInt>> rows_;
};

inline StirlingTable& default_stirling_table() {
  static StirlingTable table(32);
  return table;
}

inline BigInt stirling_s2(std::size_t k, std::size_t n) { return default_stirling_table()(k, n); }

/// Coefficients (n, S(k,n)), n = 1..k, of the normal-ordered expansion
/// (ab)^k = sum_n S(k,n) a^n b^n.
inline std::vector<std::pair<std::size_t, BigInt>> normal_order_coeffs(std::size_t k) {
  std::vector<std::pair<std::size_t, BigInt>> out;
  if (k == 0) return out;
  const auto row = default_stirling_table().row(k);
  out.reserve(k);
  for (std::size_t n = 1; n <= k; ++n) out.emplace_back(n, row[n]);
  return out;
}

/// Applies (ab)^k and its normal-ordered expansion to every monomial z^j, j <= degree,
/// in exact integer arithmetic and reports whether all results coincide.
inline bool verify_normal_ordering(std::size_t k, std::size_t degree) {
  const auto coeffs = normal_order_coeffs(k);
  for (std::size_t j = 0; j <= degree; ++j) {
    auto lhs = Taylor<BigInt>::monomial(j);
    for (std::size_t i = 0; i < k; ++i) lhs = apply_a(apply_b(lhs));

    const auto zj = Taylor<BigInt>::monomial(j);
    Taylor<BigInt> rhs;
    for (const auto& [n, s] : coeffs) rhs += apply_a_pow(apply_b_pow(zj, n), n) * s;

    if (!(lhs == rhs)) return false;
  }
  return true;
}

}  // namespace fockm
