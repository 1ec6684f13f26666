#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "taylor.hpp"

namespace fockm {

/// Selects the space F_m; the weight of index n is (n!)^m, kept as m ln(n!).
struct WeightIndex {
  int m = 1;

  constexpr WeightIndex() = default;
  constexpr explicit WeightIndex(int value) : m(value) {}

  double log_weight(std::size_t n) const { return fockm::log_weight(m, n); }
  friend constexpr bool operator==(WeightIndex, WeightIndex) = default;
};

/// <f, g>_m = sum_n f_n conj(g_n) (n!)^m.
///
/// Throws RangeError naming the first index whose term leaves double range.
inline cplx inner_product(const TaylorCoeffs& f, const TaylorCoeffs& g, WeightIndex w) {
  const std::size_t n_max = std::min(f.size(), g.size());
  CompensatedSum<cplx> acc;
  for (std::size_t n = 0; n < n_max; ++n) {
    const cplx fg = f.coeffs()[n] * std::conj(g.coeffs()[n]);
    if (fg == cplx{}) continue;
    const double lw = w.log_weight(n);
    if (std::log(std::abs(fg)) + lw >= kLogMaxDouble)
      throw RangeError("inner product term overflows double range", n);
    acc.add(fg * std::exp(lw));
  }
  return acc.value();
}

struct NormResult {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  bool overflow = false;
};

/// ||f||_m with the squared sum accumulated in the log domain.
///
/// When the norm is not representable, `value` is +inf, `overflow` is set and
/// `log_value` still carries ln ||f||_m.
inline NormResult norm(const TaylorCoeffs& f, WeightIndex w) {
  std::vector<double> logs;
  logs.reserve(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double a = std::abs(f.coeffs()[n]);
    if (a == 0.0) continue;
    logs.push_back(2.0 * std::log(a) + w.log_weight(n));
  }
  NormResult r;
  if (logs.empty()) return r;
  r.log_value = 0.5 * log_sum_exp(logs);
  if (r.log_value >= kLogMaxDouble) {
    r.value = std::numeric_limits<double>::infinity();
    r.overflow = true;
  } else {
    r.value = std::exp(r.log_value);
  }
  return r;
}

/// Squared norm, throwing RangeError instead of flagging overflow.
inline double norm_squared(const TaylorCoeffs& f, WeightIndex w) {
  CompensatedSum<double> acc;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double a = std::abs(f.coeffs()[n]);
    if (a == 0.0) continue;
    const double lt = 2.0 * std::log(a) + w.log_weight(n);
    if (lt >= kLogMaxDouble) throw RangeError("squared norm term overflows double range", n);
    acc.add(std::exp(lt));
  }
  return acc.value();
}

/// Horner evaluation of sum_n f_n z^n.
inline cplx eval_point(const TaylorCoeffs& f, cplx z) {
  cplx acc{};
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * z + *it;
  return acc;
}

struct KernelValue {
  cplx value;
  std::size_t terms = 0;
};

/// k_m(z, w) = sum_n (z conj(w))^n / (n!)^m, summed until three consecutive terms
/// past the peak fall below tol times the running sum.
inline KernelValue kernel_eval_detailed(WeightIndex w, cplx z, cplx wpt, double tol,
                                        std::size_t max_terms = 1'000'000) {
  if (w.m < 1) throw DomainError("kernel_eval requires m >= 1");
  if (!(tol > 0.0)) throw DomainError("kernel_eval requires tol > 0");
  const cplx q = z * std::conj(wpt);
  const double aq = std::abs(q);
  CompensatedSum<cplx> acc;
  cplx term{1.0, 0.0};
  acc.add(term);
  int small_run = 0;
  std::size_t n = 1;
  for (; n < max_terms; ++n) {
    const double nm = std::pow(static_cast<double>(n), w.m);
    term *= q / nm;
    acc.add(term);
    const bool decreasing = aq < nm;
    if (decreasing && std::abs(term) < tol * std::abs(acc.value())) {
      if (++small_run == 3) break;
    } else {
      small_run = 0;
    }
  }
  return {acc.value(), n + 1};
}

inline cplx kernel_eval(WeightIndex w, cplx z, cplx wpt, double tol = 1e-16) {
  return kernel_eval_detailed(w, z, wpt, tol).value;
}

/// Degree-N truncation of k_m(., w): coefficient n is conj(w)^n / (n!)^m.
inline TaylorCoeffs kernel_section(WeightIndex w, cplx wpt, std::size_t degree) {
  if (w.m < 1) throw DomainError("kernel_section requires m >= 1");
  std::vector<cplx> c(degree + 1);
  const cplx wc = std::conj(wpt);
  const double lw_abs = wc == cplx{} ? 0.0 : std::log(std::abs(wc));
  const double arg = std::arg(wc);
  c[0] = 1.0;
  for (std::size_t n = 1; n <= degree; ++n) {
    if (wc == cplx{}) {
      c[n] = 0.0;
      continue;
    }
    const double lmag = static_cast<double>(n) * lw_abs - w.log_weight(n);
    c[n] = std::polar(std::exp(lmag), static_cast<double>(n) * arg);
  }
  return TaylorCoeffs(std::move(c));
}

/// Partial sum of k_m(z, w) through degree N, without a stop rule.
inline cplx kernel_partial(WeightIndex w, cplx z, cplx wpt, std::size_t degree) {
  const cplx q = z * std::conj(wpt);
  CompensatedSum<cplx> acc;
  cplx term{1.0, 0.0};
  acc.add(term);
  for (std::size_t n = 1; n <= degree; ++n) {
    term *= q / std::pow(static_cast<double>(n), w.m);
    acc.add(term);
  }
  return acc.value();
}

struct AggregationResult {
  cplx lhs;
  cplx rhs;
  std::size_t kernels_summed = 0;
};

namespace detail {

inline void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("aggregation requires 0 < eps < 1");
}

}  // namespace detail

/// sum_{m>=1} eps^m k_m(z,w) against eps sum_n (z conj w)^n / (n! - eps), both
/// truncated at degree N in z.
inline AggregationResult aggregate_kernels_geometric(double eps, cplx z, cplx wpt, std::size_t degree) {
  detail::check_eps(eps);
  constexpr double cutoff = 1e-18;
  AggregationResult r;
  CompensatedSum<cplx> lhs;
  double weight = eps;
  std::size_t m = 1;
  for (; weight >= cutoff; ++m, weight *= eps) lhs.add(weight * kernel_partial(WeightIndex(m), z, wpt, degree));
  r.kernels_summed = m - 1;
  r.lhs = lhs.value();

  const cplx q = z * std::conj(wpt);
  CompensatedSum<cplx> rhs;
  cplx qn{1.0, 0.0};
  double factorial = 1.0;
  for (std::size_t n = 0; n <= degree; ++n) {
    if (n > 0) factorial *= static_cast<double>(n);
    rhs.add(qn / (factorial - eps));
    qn *= q;
  }
  r.rhs = eps * rhs.value();
  return r;
}

/// sum_{m>=1} eps^m/m! k_m(z,w) against sum_n (exp(eps/n!) - 1)(z conj w)^n.
inline AggregationResult aggregate_kernels_exponential(double eps, cplx z, cplx wpt, std::size_t degree) {
  detail::check_eps(eps);
  constexpr double cutoff = 1e-18;
  AggregationResult r;
  CompensatedSum<cplx> lhs;
  double weight = eps;
  std::size_t m = 1;
  for (; weight >= cutoff; ++m, weight *= eps / static_cast<double>(m))
    lhs.add(weight * kernel_partial(WeightIndex(m), z, wpt, degree));
  r.kernels_summed = m - 1;
  r.lhs = lhs.value();

  const cplx q = z * std::conj(wpt);
  CompensatedSum<cplx> rhs;
  cplx qn{1.0, 0.0};
  for (std::size_t n = 0; n <= degree; ++n) {
    rhs.add(std::expm1(eps * std::exp(-log_factorial(n))) * qn);
    qn *= q;
  }
  r.rhs = rhs.value();
  return r;
}

}  // namespace fockm
