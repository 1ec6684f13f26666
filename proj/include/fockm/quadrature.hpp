#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace fockm {

/// Tolerances and sampling grid shared by every quadrature in the radial-kernel code.
struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  /// Maximum number of interval bisections per adaptive integral.
  int max_refinements = 400;
  /// Log-spaced abscissae for cached kernel tables.
  double grid_xmin = 1e-30;
  double grid_xmax = 1e12;
  int grid_points_per_decade = 40;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_refinements < 1) throw DomainError("max_refinements must be positive");
    if (!(grid_xmin > 0.0) || !(grid_xmax > grid_xmin) || grid_points_per_decade < 2)
      throw DomainError("kernel grid must be positive and strictly increasing");
  }

  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  int subdivisions = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

template <typename Heap>
void resum(const Heap& heap, double& total, double& err) {
  CompensatedSum<double> tv, te;
  auto copy = heap;
  while (!copy.empty()) {
    tv.add(copy.top().value);
    te.add(copy.top().error);
    copy.pop();
  }
  total = tv.value();
  err = te.value();
}

}  // namespace detail

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate is below max(abs_tol, rel_tol |I|). Throws ConvergenceError after
/// max_refinements bisections.
template <typename F>
QuadResult integrate(F&& f, double a, double b, double rel_tol, double abs_tol, int max_refinements) {
  QuadResult r;
  if (a == b) return r;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod_15(f, a, b));
  double total = heap.top().value;
  double err = heap.top().error;
  r.evaluations = 15;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (r.subdivisions >= max_refinements)
      throw ConvergenceError("adaptive quadrature did not converge", sign * total, err);
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Segment left = detail::gauss_kronrod_15(f, worst.a, mid);
    const detail::Segment right = detail::gauss_kronrod_15(f, mid, worst.b);
    r.evaluations += 30;
    ++r.subdivisions;
    heap.push(left);
    heap.push(right);
    total += (left.value + right.value) - worst.value;
    err += (left.error + right.error) - worst.error;
    if (r.subdivisions % 32 == 0) detail::resum(heap, total, err);
  }
  detail::resum(heap, total, err);
  r.value = sign * total;
  r.error = err;
  return r;
}

template <typename F>
QuadResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
  return integrate(std::forward<F>(f), a, b, cfg.rel_tol, cfg.abs_tol, cfg.max_refinements);
}

}  // namespace fockm
