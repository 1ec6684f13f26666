#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "coeffspace.hpp"
#include "errors.hpp"
#include "hermite.hpp"
#include "numeric.hpp"
#include "taylor.hpp"

namespace fockm {

/// g = sum_n c_n eta_n in L2(R), stored by its Hermite coordinates.
struct L2Element {
  std::vector<cplx> hermite_coeffs;

  /// ||g||_{L2}, by Parseval.
  double norm() const {
    CompensatedSum<double> acc;
    for (const auto& c : hermite_coeffs) acc.add(std::norm(c));
    return std::sqrt(acc.value());
  }

  /// g(t) on the real line.
  cplx eval(double t) const {
    if (hermite_coeffs.empty()) return {};
    const auto eta = hermite_fns(hermite_coeffs.size() - 1, t);
    cplx s{};
    for (std::size_t n = 0; n < hermite_coeffs.size(); ++n) s += hermite_coeffs[n] * eta[n];
    return s;
  }

  friend bool operator==(const L2Element& a, const L2Element& b) {
    const std::size_t n = std::max(a.hermite_coeffs.size(), b.hermite_coeffs.size());
    for (std::size_t i = 0; i < n; ++i) {
      const cplx x = i < a.hermite_coeffs.size() ? a.hermite_coeffs[i] : cplx{};
      const cplx y = i < b.hermite_coeffs.size() ? b.hermite_coeffs[i] : cplx{};
      if (x != y) return false;
    }
    return true;
  }
};

/// h_m(z, t) = sum_n z^n / (n!)^{m/2} eta_n(t), summed with the kernel stop rule:
/// three consecutive terms past the coefficient peak below tol times the sum.
inline cplx h_kernel_eval(int m, cplx z, double t, double tol = 1e-16, std::size_t max_terms = 4000) {
  if (m < 1) throw DomainError("h_m requires m >= 1");
  if (!(tol > 0.0)) throw DomainError("h_m requires tol > 0");
  const double half_m = 0.5 * m;
  const double az = std::abs(z);
  double eta_prev = 0.0;
  double eta = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
  cplx coef{1.0, 0.0};
  CompensatedSum<cplx> acc;
  acc.add(coef * eta);
  int small_run = 0;
  for (std::size_t n = 0; n + 1 < max_terms; ++n) {
    const double nd = static_cast<double>(n);
    const double eta_next = -std::sqrt(2.0 / (nd + 1.0)) * t * eta - std::sqrt(nd / (nd + 1.0)) * eta_prev;
    eta_prev = eta;
    eta = eta_next;
    const double growth = std::pow(nd + 1.0, half_m);
    coef *= z / growth;
    const cplx term = coef * eta;
    acc.add(term);
    // The eta factor can vanish by accident, so the test uses the coefficient bound.
    const bool past_peak = az < growth;
    if (past_peak && std::abs(coef) < tol * std::abs(acc.value())) {
      if (++small_run == 3) break;
    } else {
      small_run = 0;
    }
  }
  return acc.value();
}

/// B_m g: coefficient n is c_n / (n!)^{m/2}.
inline TaylorCoeffs bargmann_forward(const L2Element& g, int m) {
  if (m < 1) throw DomainError("Bargmann transform requires m >= 1");
  std::vector<cplx> out(g.hermite_coeffs.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = g.hermite_coeffs[n] * std::exp(-0.5 * log_weight(m, n));
  return TaylorCoeffs(std::move(out));
}

/// Inverse transform: Hermite coordinate n is (n!)^{m/2} f_n.
inline L2Element bargmann_inverse(const TaylorCoeffs& f, int m) {
  if (m < 1) throw DomainError("Bargmann transform requires m >= 1");
  L2Element g;
  g.hermite_coeffs.resize(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double a = std::abs(f.coeffs()[n]);
    if (a == 0.0) continue;
    const double lw = 0.5 * log_weight(m, n);
    if (std::log(a) + lw >= kLogMaxDouble) throw RangeError("inverse Bargmann coordinate overflows double range", n);
    g.hermite_coeffs[n] = f.coeffs()[n] * std::exp(lw);
  }
  return g;
}

/// int h_m(z, t) g(t) dt by Gauss-Hermite quadrature on the given table.
inline cplx bargmann_quadrature(const L2Element& g, int m, cplx z, const HermiteEvaluation& table) {
  if (g.hermite_coeffs.size() > table.max_index + 1)
    throw InputError("Hermite table is too small for the element");
  CompensatedSum<cplx> acc;
  for (std::size_t j = 0; j < table.rule.nodes.size(); ++j) {
    cplx gj{};
    for (std::size_t n = 0; n < g.hermite_coeffs.size(); ++n) gj += g.hermite_coeffs[n] * table.values[n][j];
    acc.add(table.rule.weights[j] * h_kernel_eval(m, z, table.rule.nodes[j]) * gj);
  }
  return acc.value();
}

/// Closed form exp(2tz - t^2 - z^2/2) quoted for h_1.
inline cplx h1_quoted_closed_form(cplx z, double t) { return std::exp(2.0 * t * z - t * t - 0.5 * z * z); }

/// Generating function of the eta_n: pi^{-1/4} exp(-t^2/2 - sqrt(2) t z - z^2/2).
inline cplx h1_generating_function(cplx z, double t) {
  return std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t - std::numbers::sqrt2 * t * z - 0.5 * z * z);
}

struct ClosedFormComparison {
  double quoted_max_rel_err = 0.0;
  double generating_max_rel_err = 0.0;
  std::size_t samples = 0;
};

/// Compares the h_1 series against both closed forms over a grid of (z, t).
inline ClosedFormComparison compare_h1_closed_forms(const std::vector<cplx>& zs, const std::vector<double>& ts) {
  ClosedFormComparison r;
  for (cplx z : zs)
    for (double t : ts) {
      const cplx series = h_kernel_eval(1, z, t);
      r.quoted_max_rel_err = std::max(r.quoted_max_rel_err, relative_error(h1_quoted_closed_form(z, t), series));
      r.generating_max_rel_err =
          std::max(r.generating_max_rel_err, relative_error(h1_generating_function(z, t), series));
      ++r.samples;
    }
  return r;
}

}  // namespace fockm
