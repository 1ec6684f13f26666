#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "coeffspace.hpp"
#include "errors.hpp"
#include "ladder.hpp"
#include "stirling.hpp"
#include "taylor.hpp"

namespace fockm {

using Rational = boost::multiprecision::cpp_rational;

/// Letters of an operator word: A multiplies by z, B differentiates.
enum class Letter : char { A = 'A', B = 'B' };

/// A finite composition of A and B. As with operator products, the last letter
/// acts first: "BA" applied to f is B(A(f)).
class OperatorWord {
 public:
  OperatorWord() = default;
  explicit OperatorWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static OperatorWord parse(std::string_view text) {
    std::vector<Letter> out;
    out.reserve(text.size());
    for (char ch : text) {
      switch (ch) {
        case 'A': case 'a': out.push_back(Letter::A); break;
        case 'B': case 'b': out.push_back(Letter::B); break;
        case ' ': case '*': case '.': break;
        default: throw InputError(std::string("operator words use the letters A and B, got '") + ch + "'");
      }
    }
    return OperatorWord(std::move(out));
  }

  /// w repeated k times.
  OperatorWord pow(std::size_t k) const {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), letters_.begin(), letters_.end());
    return OperatorWord(std::move(out));
  }

  friend OperatorWord operator*(const OperatorWord& x, const OperatorWord& y) {
    std::vector<Letter> out = x.letters_;
    out.insert(out.end(), y.letters_.begin(), y.letters_.end());
    return OperatorWord(std::move(out));
  }

  std::size_t count(Letter l) const {
    std::size_t c = 0;
    for (Letter x : letters_) c += x == l;
    return c;
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }

  std::string str() const {
    std::string s;
    for (Letter l : letters_) s.push_back(static_cast<char>(l));
    return s;
  }

 private:
  std::vector<Letter> letters_;
};

namespace detail {

template <typename T>
T from_bigint(const BigInt& v) {
  if constexpr (std::is_same_v<T, BigInt> || std::is_same_v<T, Rational>)
    return T(v);
  else
    return T(v.convert_to<double>());
}

template <typename T>
T from_index(std::size_t n) {
  return T(static_cast<long>(n));
}

template <typename T>
T int_pow(std::size_t base, int exponent) {
  T r(1);
  const T b = from_index<T>(base);
  for (int i = 0; i < exponent; ++i) r *= b;
  return r;
}

}  // namespace detail

template <typename T>
Taylor<T> apply_word(const OperatorWord& word, Taylor<T> f) {
  const auto& letters = word.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) f = (*it == Letter::A) ? apply_a(f) : apply_b(f);
  return f;
}

/// (BA)^{m-1} B, the adjoint of A in F_m.
inline OperatorWord a_star_word(int m) {
  if (m < 1) throw DomainError("a* is defined for m >= 1");
  return OperatorWord::parse("BA").pow(static_cast<std::size_t>(m - 1)) * OperatorWord::parse("B");
}

/// a* f by applying the word (BA)^{m-1} B.
template <typename T>
Taylor<T> apply_a_star_word(const Taylor<T>& f, int m) {
  return apply_word(a_star_word(m), f);
}

/// a* f by the normal-ordered form B sum_{n=0}^{m-1} S(m-1, n) A^n B^n.
template <typename T>
Taylor<T> apply_a_star_stirling(const Taylor<T>& f, int m) {
  if (m < 1) throw DomainError("a* is defined for m >= 1");
  const auto k = static_cast<std::size_t>(m - 1);
  const auto row = default_stirling_table().row(k);
  Taylor<T> inner;
  for (std::size_t n = 0; n <= k; ++n) {
    if (row[n] == 0) continue;
    inner += apply_a_pow(apply_b_pow(f, n), n) * detail::from_bigint<T>(row[n]);
  }
  return apply_b(inner);
}

/// a* f in F_m: coefficient n of the result is (n+1)^m f_{n+1}.
template <typename T>
Taylor<T> apply_a_star(const Taylor<T>& f, int m) {
  if (m < 1) throw DomainError("a* is defined for m >= 1");
  if (f.size() <= 1) return Taylor<T>{};
  std::vector<T> out(f.size() - 1);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = detail::int_pow<T>(n + 1, m) * f.coeffs()[n + 1];
  return Taylor<T>(std::move(out));
}

/// b* f in F_m: coefficient k+1 of the result is f_k / (k+1)^{m-1}. Needs a field.
template <typename T>
Taylor<T> apply_b_star(const Taylor<T>& f, int m) {
  if (m < 1) throw DomainError("b* is defined for m >= 1");
  std::vector<T> out(f.size() + 1, T{});
  for (std::size_t k = 0; k < f.size(); ++k) out[k + 1] = f.coeffs()[k] / detail::int_pow<T>(k + 1, m - 1);
  return Taylor<T>(std::move(out));
}

struct DomainReport {
  /// sum_n |f_n|^2 (n!)^m n^m
  double functional = 0.0;
  double log_functional = -std::numeric_limits<double>::infinity();
  /// Always true for a truncated element; the functional is the informative output.
  bool in_domain = true;
};

/// Evaluates the domain functional of a and a* in F_m. Throws RangeError with the
/// offending index when a term leaves double range.
inline DomainReport in_domain(const TaylorCoeffs& f, WeightIndex w) {
  DomainReport r;
  std::vector<double> logs;
  for (std::size_t n = 1; n < f.size(); ++n) {
    const double a = std::abs(f.coeffs()[n]);
    if (a == 0.0) continue;
    const double lt = 2.0 * std::log(a) + w.log_weight(n) + w.m * std::log(static_cast<double>(n));
    if (lt >= kLogMaxDouble) throw RangeError("domain functional term overflows double range", n);
    logs.push_back(lt);
  }
  if (logs.empty()) return r;
  r.log_functional = log_sum_exp(logs);
  if (r.log_functional >= kLogMaxDouble) throw RangeError("domain functional overflows double range", f.size() - 1);
  CompensatedSum<double> acc;
  for (double lt : logs) acc.add(std::exp(lt));
  r.functional = acc.value();
  return r;
}

/// Right-hand side of the commutator identity: f + sum_{n=1}^{m-1} (n+1) S(m, n+1) A^n B^n f.
template <typename T>
Taylor<T> commutator_formula(const Taylor<T>& f, int m) {
  if (m < 1) throw DomainError("commutator formula requires m >= 1");
  Taylor<T> out = f;
  const auto row = default_stirling_table().row(static_cast<std::size_t>(m));
  for (std::size_t n = 1; n + 1 <= static_cast<std::size_t>(m); ++n) {
    const T c = detail::from_index<T>(n + 1) * detail::from_bigint<T>(row[n + 1]);
    out += apply_a_pow(apply_b_pow(f, n), n) * c;
  }
  return out;
}

/// [a*, a] f computed directly as a*(a f) - a(a* f).
template <typename T>
Taylor<T> commutator_direct(const Taylor<T>& f, int m) {
  return apply_a_star(apply_a(f), m) - apply_a(apply_a_star(f, m));
}

namespace detail {

template <typename T>
bool coefficientwise_agree(const Taylor<T>& x, const Taylor<T>& y) {
  if constexpr (std::is_same_v<T, cplx> || std::is_floating_point_v<T>) {
    const std::size_t n = std::max(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = std::max(std::abs(x[i]), std::abs(y[i]));
      if (std::abs(x[i] - y[i]) > 1e-12 * scale) return false;
    }
    return true;
  } else {
    return x == y;
  }
}

}  // namespace detail

/// [a*, a] f by the direct route, checked against the Stirling formula. Exact
/// coefficient types must agree exactly; floating types to relative 1e-12 per
/// coefficient. Throws ConsistencyError on disagreement.
template <typename T>
Taylor<T> commutator_apply(const Taylor<T>& f, int m) {
  Taylor<T> direct = commutator_direct(f, m);
  const Taylor<T> formula = commutator_formula(f, m);
  if (!detail::coefficientwise_agree(direct, formula))
    throw ConsistencyError("commutator routes disagree for m = " + std::to_string(m));
  return direct;
}

struct NormIdentityReport {
  /// ||a f||^2_m
  double lhs = 0.0;
  /// ||a* f||^2_m, ||f||^2_m, then C(m,k) sum_n |f_n|^2 (n!)^m n^k for k = 1..m-1.
  std::vector<double> rhs_terms;

  double rhs_sum() const {
    CompensatedSum<double> acc;
    for (double t : rhs_terms) acc.add(t);
    return acc.value();
  }
};

inline NormIdentityReport norm_identity_report(const TaylorCoeffs& f, int m) {
  if (m < 1) throw DomainError("norm identity requires m >= 1");
  const WeightIndex w(m);
  NormIdentityReport r;
  r.lhs = norm_squared(apply_a(f), w);
  r.rhs_terms.push_back(norm_squared(apply_a_star(f, m), w));
  r.rhs_terms.push_back(norm_squared(f, w));
  for (int k = 1; k < m; ++k) {
    const double binom = boost::math::binomial_coefficient<double>(static_cast<unsigned>(m), static_cast<unsigned>(k));
    CompensatedSum<double> acc;
    for (std::size_t n = 1; n < f.size(); ++n) {
      const double a = std::abs(f.coeffs()[n]);
      if (a == 0.0) continue;
      const double lt = 2.0 * std::log(a) + w.log_weight(n) + k * std::log(static_cast<double>(n));
      if (lt >= kLogMaxDouble) throw RangeError("norm identity term overflows double range", n);
      acc.add(std::exp(lt));
    }
    r.rhs_terms.push_back(binom * acc.value());
  }
  return r;
}

}  // namespace fockm
