#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace fockm {

// Normalized Hermite functions in the Rodrigues convention
//   eta_n(t) = pi^{-1/4} 2^{-n/2} (n!)^{-1/2} e^{t^2/2} (d/dt)^n e^{-t^2}.
// Since (d/dt)^n e^{-t^2} = (-1)^n H_n(t) e^{-t^2}, eta_n is (-1)^n times the usual
// orthonormal Hermite function psi_n. The recurrence runs on eta_n directly:
//   eta_{n+1} = -sqrt(2/(n+1)) t eta_n - sqrt(n/(n+1)) eta_{n-1}.

/// eta_0(t), ..., eta_N(t).
inline std::vector<double> hermite_fns(std::size_t max_index, double t) {
  std::vector<double> out(max_index + 1);
  out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
  if (max_index == 0) return out;
  out[1] = -std::sqrt(2.0) * t * out[0];
  for (std::size_t n = 1; n < max_index; ++n) {
    const double nd = static_cast<double>(n);
    out[n + 1] = -std::sqrt(2.0 / (nd + 1.0)) * t * out[n] - std::sqrt(nd / (nd + 1.0)) * out[n - 1];
  }
  return out;
}

inline double hermite_fn(std::size_t n, double t) { return hermite_fns(n, t)[n]; }

/// Gauss-Hermite rule in function form: sum_j weights[j] u(t_j) v(t_j) integrates
/// u v over the real line exactly when u v = e^{-t^2} p(t) with deg p <= 2 Q - 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  /// Classical weights multiplied by e^{t_j^2}.
  std::vector<double> weights;
};

/// Q-point rule. Nodes come from the symmetric Jacobi matrix, then one Newton polish
/// on psi_Q; weights from the Christoffel formula 1 / sum_{k<Q} psi_k(t_j)^2.
inline GaussHermiteRule gauss_hermite_rule(std::size_t points) {
  if (points == 0) throw DomainError("Gauss-Hermite rule needs at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(points), static_cast<Eigen::Index>(points));
  for (std::size_t k = 1; k < points; ++k) {
    const double off = std::sqrt(0.5 * static_cast<double>(k));
    jacobi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = off;
    jacobi(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (std::size_t j = 0; j < points; ++j) {
    double t = solver.eigenvalues()(static_cast<Eigen::Index>(j));
    for (int it = 0; it < 3; ++it) {
      const auto psi = hermite_fns(points, t);
      // Sign convention cancels in the ratio psi_Q / psi_Q'.
      const double value = psi[points];
      const double deriv = -std::sqrt(2.0 * static_cast<double>(points)) * psi[points - 1] - t * value;
      if (deriv == 0.0) break;
      const double step = value / deriv;
      t -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(t))) break;
    }
    const auto psi = hermite_fns(points - 1, t);
    double s = 0.0;
    for (double v : psi) s += v * v;
    rule.nodes[j] = t;
    rule.weights[j] = 1.0 / s;
  }
  return rule;
}

/// Tabulated eta_n at the nodes of a Gauss-Hermite rule.
struct HermiteEvaluation {
  std::size_t max_index = 0;
  GaussHermiteRule rule;
  /// values[n][j] = eta_n(t_j)
  std::vector<std::vector<double>> values;
  /// Largest |eta_n(t_j)| in the table.
  double bound = 0.0;

  static HermiteEvaluation build(std::size_t max_index, std::size_t points) {
    if (points < max_index + 1) throw DomainError("Hermite table needs at least max_index + 1 nodes");
    HermiteEvaluation h;
    h.max_index = max_index;
    h.rule = gauss_hermite_rule(points);
    h.values.assign(max_index + 1, std::vector<double>(points));
    for (std::size_t j = 0; j < points; ++j) {
      const auto eta = hermite_fns(max_index, h.rule.nodes[j]);
      for (std::size_t n = 0; n <= max_index; ++n) {
        h.values[n][j] = eta[n];
        h.bound = std::max(h.bound, std::abs(eta[n]));
      }
    }
    return h;
  }

  /// sum_j w_j eta_i(t_j) eta_k(t_j)
  double discrete_inner(std::size_t i, std::size_t k) const {
    double s = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) s += rule.weights[j] * values[i][j] * values[k][j];
    return s;
  }
};

}  // namespace fockm
