#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "coeffspace.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "taylor.hpp"

namespace fockm {

/// A coefficient sequence (b_0, ..., b_N) with the level m of the dual space
/// F_{2-m} it is meant to live in. Norms can be taken at any level; `level` is metadata.
struct DualSequence {
  std::vector<cplx> coeffs;
  int level = 1;

  /// Unit vector e_n.
  static DualSequence unit(std::size_t n, int level = 1) {
    DualSequence b;
    b.coeffs.assign(n + 1, cplx{});
    b.coeffs[n] = 1.0;
    b.level = level;
    return b;
  }

  cplx operator[](std::size_t n) const { return n < coeffs.size() ? coeffs[n] : cplx{}; }

  /// Equality of coefficients after trailing zeros; the level is not compared.
  friend bool operator==(const DualSequence& a, const DualSequence& b) {
    const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
};

struct DualNormResult {
  double value = 0.0;
  /// Set when some nonzero coefficient contributed a term below double range.
  bool underflow = false;
};

/// ||b||_{2-m} = (sum_n |b_n|^2 (n!)^{2-m})^{1/2}. The weights decay in n for m > 2.
inline DualNormResult dual_norm(const DualSequence& b, int m) {
  if (m < 1) throw DomainError("dual norm level requires m >= 1");
  DualNormResult r;
  std::vector<double> logs;
  for (std::size_t n = 0; n < b.coeffs.size(); ++n) {
    const double a = std::abs(b.coeffs[n]);
    if (a == 0.0) continue;
    const double lt = 2.0 * std::log(a) + log_weight(2 - m, n);
    if (lt < -745.0) r.underflow = true;
    logs.push_back(lt);
  }
  if (logs.empty()) return r;
  const double ls = log_sum_exp(logs);
  if (ls >= 2.0 * kLogMaxDouble) throw RangeError("dual norm overflows double range", b.coeffs.size() - 1);
  r.value = std::exp(0.5 * ls);
  return r;
}

/// <f, b> through the F_1 pairing: sum_n f_n conj(b_n) n!.
inline cplx pairing(const TaylorCoeffs& f, const DualSequence& b) {
  const std::size_t n_max = std::min(f.size(), b.coeffs.size());
  CompensatedSum<cplx> acc;
  for (std::size_t n = 0; n < n_max; ++n) {
    const cplx fb = f.coeffs()[n] * std::conj(b.coeffs[n]);
    if (fb == cplx{}) continue;
    const double lf = log_factorial(n);
    if (std::log(std::abs(fb)) + lf >= kLogMaxDouble) throw RangeError("pairing term overflows double range", n);
    acc.add(fb * std::exp(lf));
  }
  return acc.value();
}

/// Cauchy product (a*b)_n = sum_{k<=n} a_k b_{n-k} over any coefficient ring.
template <typename T>
std::vector<T> convolve(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1, T{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Product in the dual algebra. The result level is the coarser (larger) one.
inline DualSequence cauchy_product(const DualSequence& a, const DualSequence& b) {
  DualSequence r;
  r.coeffs = convolve(a.coeffs, b.coeffs);
  r.level = std::max(a.level, b.level);
  return r;
}

/// A(d) = (sum_{n>=0} (1/n!)^d)^{1/2}, summed until terms drop below machine precision.
inline double vage_constant(int d) {
  if (d < 1) throw DomainError("the Vage constant is defined for q - p >= 1");
  CompensatedSum<double> acc;
  acc.add(1.0);
  for (std::size_t n = 1; n < 200; ++n) {
    const double term = std::exp(-static_cast<double>(d) * log_factorial(n));
    acc.add(term);
    if (term < 1e-18 * acc.value()) break;
  }
  return std::sqrt(acc.value());
}

struct VageResult {
  double lhs = 0.0;
  double bound = 0.0;
  bool holds = false;

  double ratio() const { return bound > 0.0 ? lhs / bound : std::numeric_limits<double>::infinity(); }
};

/// ||a*b||_{2-q} <= A(q-p) ||a||_{2-p} ||b||_{2-q} for 1 <= p < q.
///
/// The factor measured at the finer level p is the one paying for the convolution;
/// the product and the other factor are measured at the coarser level q.
inline VageResult vage_check(const DualSequence& a, const DualSequence& b, int p, int q) {
  if (p < 1) throw DomainError("vage_check requires p >= 1");
  if (q < p + 1) throw DomainError("vage_check requires q >= p + 1");
  VageResult r;
  r.lhs = dual_norm(cauchy_product(a, b), q).value;
  r.bound = vage_constant(q - p) * dual_norm(a, p).value * dual_norm(b, q).value;
  r.holds = r.lhs <= r.bound * (1.0 + 1e-12);
  return r;
}

/// The same bound with the roles of p and q exchanged on the product and on b:
/// ||a*b||_{2-p} <= A(q-p) ||a||_{2-q} ||b||_{2-p}. This arrangement fails, e.g. for
/// a = e_3, b = e_0, p = 2, q = 3; it is kept for diagnostics only.
inline VageResult vage_check_exchanged(const DualSequence& a, const DualSequence& b, int p, int q) {
  if (p < 1) throw DomainError("vage_check requires p >= 1");
  if (q < p + 1) throw DomainError("vage_check requires q >= p + 1");
  VageResult r;
  r.lhs = dual_norm(cauchy_product(a, b), p).value;
  r.bound = vage_constant(q - p) * dual_norm(a, q).value * dual_norm(b, p).value;
  r.holds = r.lhs <= r.bound * (1.0 + 1e-12);
  return r;
}

struct PathSample {
  double t = 0.0;
  DualSequence value;
};

/// Trapezoidal Riemann sum of t -> f(t) * g(t) over [0, 1].
///
/// Both paths must share one strictly increasing grid starting at 0 and ending at 1.
inline DualSequence riemann_integral_product(const std::vector<PathSample>& f_path,
                                             const std::vector<PathSample>& g_path) {
  if (f_path.size() != g_path.size()) throw InputError("paths are sampled on grids of different sizes");
  if (f_path.size() < 2) throw InputError("a path needs at least two samples");
  for (std::size_t i = 0; i < f_path.size(); ++i) {
    if (f_path[i].t != g_path[i].t) throw InputError("paths are sampled on different grids");
    if (i > 0 && !(f_path[i].t > f_path[i - 1].t)) throw InputError("path grid is not strictly increasing");
  }
  if (f_path.front().t != 0.0 || f_path.back().t != 1.0) throw InputError("path grid must cover [0, 1]");

  std::vector<CompensatedSum<cplx>> acc;
  int level = 1;
  auto accumulate = [&](const DualSequence& prod, double weight) {
    if (acc.size() < prod.coeffs.size()) acc.resize(prod.coeffs.size());
    for (std::size_t n = 0; n < prod.coeffs.size(); ++n) acc[n].add(weight * prod.coeffs[n]);
    level = std::max(level, prod.level);
  };
  for (std::size_t i = 0; i < f_path.size(); ++i) {
    const double left = i > 0 ? f_path[i].t - f_path[i - 1].t : 0.0;
    const double right = i + 1 < f_path.size() ? f_path[i + 1].t - f_path[i].t : 0.0;
    accumulate(cauchy_product(f_path[i].value, g_path[i].value), 0.5 * (left + right));
  }
  DualSequence r;
  r.level = level;
  r.coeffs.reserve(acc.size());
  for (const auto& a : acc) r.coeffs.push_back(a.value());
  return r;
}

}  // namespace fockm
