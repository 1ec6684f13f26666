#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "bargmann.hpp"
#include "coeffspace.hpp"
#include "dual_algebra.hpp"
#include "errors.hpp"
#include "hermite.hpp"
#include "operators.hpp"
#include "radial_kernel.hpp"
#include "stirling.hpp"

namespace fockm::verify {

/// Settings shared by every suite run.
struct RunConfig {
  std::size_t truncation_degree = 64;
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_refinements = 400;
  std::uint64_t seed = 42;
  /// Largest m in the radial-kernel moment check.
  int kernel_max_m = 4;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("tolerances must be positive");
    if (truncation_degree < 1) throw DomainError("truncation degree must be at least 1");
    if (kernel_max_m < 1) throw DomainError("kernel m must be at least 1");
  }

  QuadratureConfig quadrature() const {
    QuadratureConfig q;
    q.rel_tol = rel_tol;
    q.abs_tol = abs_tol;
    q.max_refinements = max_refinements;
    return q;
  }
};

/// One verified property: what was measured, the tolerance it is held to, and the verdict.
struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"stirling", "kernels", "operators", "bargmann", "dual"};
  return names;
}

namespace detail {

using Rng = std::mt19937_64;

inline cplx random_complex(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  return {re, nd(rng)};
}

inline TaylorCoeffs random_taylor(Rng& rng, std::size_t degree) {
  std::vector<cplx> c(degree + 1);
  for (auto& x : c) x = random_complex(rng);
  return TaylorCoeffs(std::move(c));
}

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Taylor<Rational> random_rational_taylor(Rng& rng, std::size_t degree) {
  std::uniform_int_distribution<int> num(-50, 50), den(1, 12);
  std::vector<Rational> c(degree + 1);
  for (auto& x : c) x = Rational(num(rng), den(rng));
  return Taylor<Rational>(std::move(c));
}

inline Check make_check(std::string suite, std::string name, double measured, double tolerance, bool passed,
                        std::string detail = {}) {
  return Check{std::move(suite), std::move(name), measured, tolerance, passed, std::move(detail)};
}

/// Runs `body`, turning library exceptions into a failed check with the error named.
inline Check guarded(const std::string& suite, const std::string& name, double tolerance,
                     const std::function<Check()>& body) {
  try {
    return body();
  } catch (const ConvergenceError& e) {
    return make_check(suite, name, std::numeric_limits<double>::infinity(), tolerance, false,
                      std::string("convergence failure: ") + e.what());
  } catch (const std::exception& e) {
    return make_check(suite, name, std::numeric_limits<double>::infinity(), tolerance, false,
                      std::string("error: ") + e.what());
  }
}

/// Bell numbers B_0..B_n from the Bell triangle.
inline std::vector<BigInt> bell_numbers(std::size_t n) {
  std::vector<BigInt> bell{BigInt(1)};
  std::vector<BigInt> row{BigInt(1)};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<BigInt> next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
    bell.push_back(row.front());
  }
  return bell;
}

/// 2 K_0(2 sqrt(x)) from K_0(y) = int_0^inf exp(-y cosh t) dt by exp-sinh quadrature.
inline double bessel_k2_oracle(double x) {
  const double y = 2.0 * std::sqrt(x);
  boost::math::quadrature::exp_sinh<double> integrator;
  const double k0 = integrator.integrate([y](double t) { return std::exp(-y * std::cosh(t)); }, 1e-15);
  return 2.0 * k0;
}

}  // namespace detail

inline std::vector<Check> run_stirling(const RunConfig&) {
  const std::string s = "stirling";
  std::vector<Check> out;
  out.push_back(detail::guarded(s, "base_values", 0.0, [&] {
    const bool ok = stirling_s2(0, 0) == 1 && stirling_s2(3, 5) == 0 && stirling_s2(4, 2) == 7 &&
                    stirling_s2(10, 5) == 42525;
    return detail::make_check(s, "base_values", ok ? 0.0 : 1.0, 0.0, ok, "S(0,0)=1, S(3,5)=0, S(4,2)=7, S(10,5)=42525");
  }));
  out.push_back(detail::guarded(s, "table_invariants", 0.0, [&] {
    StirlingTable t(60);
    std::size_t bad = 0;
    for (std::size_t k = 0; k <= 60; ++k) {
      if (t(k, 0) != (k == 0 ? 1 : 0) || t(k, k) != 1) ++bad;
      for (std::size_t n = 1; k >= 1 && n <= k; ++n)
        if (t(k, n) != BigInt(n) * t(k - 1, n) + t(k - 1, n - 1)) ++bad;
    }
    return detail::make_check(s, "table_invariants", static_cast<double>(bad), 0.0, bad == 0, "k <= 60");
  }));
  out.push_back(detail::guarded(s, "bell_row_sums", 0.0, [&] {
    const auto bell = detail::bell_numbers(40);
    std::size_t bad = 0;
    for (std::size_t k = 0; k <= 40; ++k) {
      BigInt sum = 0;
      for (const auto& v : default_stirling_table().row(k)) sum += v;
      if (sum != bell[k]) ++bad;
    }
    return detail::make_check(s, "bell_row_sums", static_cast<double>(bad), 0.0, bad == 0, "k <= 40");
  }));
  out.push_back(detail::guarded(s, "normal_ordering", 0.0, [&] {
    std::size_t bad = 0;
    for (std::size_t k = 1; k <= 8; ++k) bad += !verify_normal_ordering(k, 12);
    return detail::make_check(s, "normal_ordering", static_cast<double>(bad), 0.0, bad == 0, "k <= 8, degree <= 12");
  }));
  out.push_back(detail::guarded(s, "monomial_eigenvalues", 0.0, [&] {
    std::size_t bad = 0;
    for (std::size_t k = 1; k <= 10; ++k) {
      const auto coeffs = normal_order_coeffs(k);
      for (std::size_t j = 0; j <= 20; ++j) {
        BigInt direct = boost::multiprecision::pow(BigInt(j), static_cast<unsigned>(k));
        BigInt expanded = 0;
        for (const auto& [n, sv] : coeffs) {
          BigInt falling = 1;
          for (std::size_t i = 0; i < n; ++i) falling *= BigInt(j) - BigInt(i);
          expanded += sv * falling;
        }
        if (direct != expanded) ++bad;
      }
    }
    return detail::make_check(s, "monomial_eigenvalues", static_cast<double>(bad), 0.0, bad == 0, "k <= 10, j <= 20");
  }));
  return out;
}

inline std::vector<Check> run_kernels(const RunConfig& cfg) {
  const std::string s = "kernels";
  std::vector<Check> out;
  detail::Rng rng(cfg.seed ^ 0x6b65726e656c73ULL);
  const QuadratureConfig qcfg = cfg.quadrature();

  out.push_back(detail::guarded(s, "reproducing_property", 1e-12, [&] {
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m)
      for (int trial = 0; trial < 40; ++trial) {
        const auto f = detail::random_taylor(rng, detail::uniform_index(rng, 0, 30));
        std::uniform_real_distribution<double> r(0.0, 2.0), th(0.0, 2.0 * std::numbers::pi);
        const cplx w = std::polar(r(rng), th(rng));
        const cplx ip = inner_product(f, kernel_section(WeightIndex(m), w, 30), WeightIndex(m));
        worst = std::max(worst, relative_error(ip, eval_point(f, w)));
      }
    return detail::make_check(s, "reproducing_property", worst, 1e-12, worst <= 1e-12, "m <= 6, |w| <= 2, deg <= 30");
  }));
  out.push_back(detail::guarded(s, "hermitian_symmetry", 1e-14, [&] {
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m)
      for (int trial = 0; trial < 20; ++trial) {
        const cplx z = detail::random_complex(rng), w = detail::random_complex(rng);
        worst = std::max(worst, relative_error(kernel_eval(WeightIndex(m), z, w), std::conj(kernel_eval(WeightIndex(m), w, z))));
      }
    return detail::make_check(s, "hermitian_symmetry", worst, 1e-14, worst <= 1e-14);
  }));
  out.push_back(detail::guarded(s, "gram_positive_semidefinite", 1e-10, [&] {
    double most_negative = 0.0;
    for (int m = 1; m <= 6; ++m) {
      const int r = 8;
      std::vector<cplx> pts(r);
      for (auto& p : pts) p = detail::random_complex(rng);
      Eigen::MatrixXcd gram(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) gram(i, j) = kernel_eval(WeightIndex(m), pts[i], pts[j]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
      most_negative = std::min(most_negative, es.eigenvalues().minCoeff());
    }
    const double measured = -most_negative;
    return detail::make_check(s, "gram_positive_semidefinite", measured, 1e-10, measured <= 1e-10,
                              "minus the smallest Gram eigenvalue, 8 points, m <= 6");
  }));
  out.push_back(detail::guarded(s, "norm_monotone_in_m", 0.0, [&] {
    std::size_t bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      auto f = detail::random_taylor(rng, detail::uniform_index(rng, 2, 20));
      f.at(0) = 0.0;
      f.at(1) = 0.0;
      for (int m = 1; m < 8; ++m)
        if (norm(f, WeightIndex(m)).value > norm(f, WeightIndex(m + 1)).value) ++bad;
    }
    for (std::size_t n = 0; n <= 30; ++n)
      for (int m = 1; m <= 6; ++m) {
        const double got = norm(TaylorCoeffs::monomial(n), WeightIndex(m)).value;
        if (relative_error(got, std::exp(0.5 * log_weight(m, n))) > 1e-13) ++bad;
      }
    return detail::make_check(s, "norm_monotone_in_m", static_cast<double>(bad), 0.0, bad == 0);
  }));
  const double eps_grid[] = {0.1, 0.5, 0.9};
  const cplx z_grid[] = {cplx(0.3, 0.0), cplx(1.0, 0.5), cplx(-1.5, 1.0)};
  const cplx w_grid[] = {cplx(0.7, -0.2), cplx(1.0, 0.0), cplx(0.5, 1.5)};
  out.push_back(detail::guarded(s, "aggregation_geometric", 1e-10, [&] {
    double worst = 0.0;
    for (double e : eps_grid)
      for (cplx z : z_grid)
        for (cplx w : w_grid) {
          const auto r = aggregate_kernels_geometric(e, z, w, cfg.truncation_degree);
          worst = std::max(worst, relative_error(r.lhs, r.rhs));
        }
    return detail::make_check(s, "aggregation_geometric", worst, 1e-10, worst <= 1e-10, "3x3x3 grid of (eps, z, w)");
  }));
  out.push_back(detail::guarded(s, "aggregation_exponential", 1e-10, [&] {
    double worst = 0.0;
    for (double e : eps_grid)
      for (cplx z : z_grid)
        for (cplx w : w_grid) {
          const auto r = aggregate_kernels_exponential(e, z, w, cfg.truncation_degree);
          worst = std::max(worst, relative_error(r.lhs, r.rhs));
        }
    return detail::make_check(s, "aggregation_exponential", worst, 1e-10, worst <= 1e-10, "3x3x3 grid of (eps, z, w)");
  }));
  out.push_back(detail::guarded(s, "bessel_identification", 1e-8, [&] {
    double worst = 0.0;
    for (double x : {0.1, 0.5, 1.0, 2.0, 4.0, 10.0})
      worst = std::max(worst, relative_error(km_eval(2, x, qcfg), detail::bessel_k2_oracle(x)));
    return detail::make_check(s, "bessel_identification", worst, 1e-8, worst <= 1e-8,
                              "K_2(x) against 2 K_0(2 sqrt x), K_0 by exp-sinh quadrature");
  }));
  std::vector<std::vector<double>> moments;
  out.push_back(detail::guarded(s, "moment_identity", 1e-6, [&] {
    double worst = 0.0;
    for (int m = 1; m <= cfg.kernel_max_m; ++m) {
      moments.push_back(km_moments(m, 8, qcfg));
      for (std::size_t n = 0; n <= 8; ++n)
        worst = std::max(worst, relative_error(moments.back()[n], std::exp(log_weight(m, n))));
    }
    return detail::make_check(s, "moment_identity", worst, 1e-6, worst <= 1e-6,
                              "m <= " + std::to_string(cfg.kernel_max_m) + ", n <= 8");
  }));
  out.push_back(detail::guarded(s, "kernel_monotonicity", 0.0, [&] {
    std::size_t bad = 0;
    const int top = std::min(cfg.kernel_max_m, 4);
    for (int m = 1; m <= top; ++m) {
      double prev = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 100; ++i) {
        const double x = 0.01 * std::pow(5000.0, i / 99.0);
        const double v = km_eval(m, x, qcfg);
        if (!(v < prev)) ++bad;
        prev = v;
      }
    }
    return detail::make_check(s, "kernel_monotonicity", static_cast<double>(bad), 0.0, bad == 0,
                              "100 log-spaced points in [0.01, 50]");
  }));
  out.push_back(detail::guarded(s, "representation_consistency", 1e-6, [&] {
    double worst = 0.0;
    for (int m = 2; m <= 3; ++m)
      for (double x : {0.05, 0.5, 1.0, 3.0}) {
        const double e = km_exponential_form(m, x, qcfg);
        worst = std::max(worst, relative_error(km_product_form(m, x, qcfg), e));
        worst = std::max(worst, relative_error(std::exp(log_km_recursive(m, x, qcfg)), e));
      }
    return detail::make_check(s, "representation_consistency", worst, 1e-6, worst <= 1e-6,
                              "exponential, product and recursive routes, m = 2, 3");
  }));
  out.push_back(detail::guarded(s, "geometric_inner_product", 1e-6, [&] {
    if (moments.empty()) throw ConsistencyError("moments unavailable");
    double worst = 0.0;
    for (std::size_t mi = 0; mi < moments.size(); ++mi)
      for (int trial = 0; trial < 20; ++trial) {
        const auto f = detail::random_taylor(rng, detail::uniform_index(rng, 0, 6));
        const auto g = detail::random_taylor(rng, detail::uniform_index(rng, 0, 6));
        const int m = static_cast<int>(mi) + 1;
        const cplx geo = geometric_inner_product(f, g, moments[mi]);
        const cplx coef = inner_product(f, g, WeightIndex(m));
        // Relative to the absolute-term scale so that cancellation does not inflate the error.
        double scale = 0.0;
        for (std::size_t n = 0; n < std::min(f.size(), g.size()); ++n)
          scale += std::abs(f[n] * std::conj(g[n])) * std::exp(log_weight(m, n));
        worst = std::max(worst, std::abs(geo - coef) / scale);
      }
    return detail::make_check(s, "geometric_inner_product", worst, 1e-6, worst <= 1e-6, "random degree <= 6 pairs");
  }));
  return out;
}

inline std::vector<Check> run_operators(const RunConfig& cfg) {
  const std::string s = "operators";
  std::vector<Check> out;
  detail::Rng rng(cfg.seed ^ 0x6f70657261746f72ULL);

  out.push_back(detail::guarded(s, "adjointness_a", 1e-12, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int m = 1 + static_cast<int>(detail::uniform_index(rng, 0, 4));
      const auto f = detail::random_taylor(rng, detail::uniform_index(rng, 0, 40));
      const auto g = detail::random_taylor(rng, detail::uniform_index(rng, 0, 40));
      worst = std::max(worst, relative_error(inner_product(apply_a(f), g, WeightIndex(m)),
                                             inner_product(f, apply_a_star(g, m), WeightIndex(m))));
    }
    return detail::make_check(s, "adjointness_a", worst, 1e-12, worst <= 1e-12, "1000 pairs, m <= 5, deg <= 40");
  }));
  out.push_back(detail::guarded(s, "adjointness_b", 1e-12, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int m = 1 + static_cast<int>(detail::uniform_index(rng, 0, 4));
      const auto f = detail::random_taylor(rng, detail::uniform_index(rng, 0, 40));
      const auto g = detail::random_taylor(rng, detail::uniform_index(rng, 0, 40));
      worst = std::max(worst, relative_error(inner_product(apply_b(f), g, WeightIndex(m)),
                                             inner_product(f, apply_b_star(g, m), WeightIndex(m))));
    }
    return detail::make_check(s, "adjointness_b", worst, 1e-12, worst <= 1e-12, "1000 pairs, m <= 5, deg <= 40");
  }));
  out.push_back(detail::guarded(s, "word_identities", 0.0, [&] {
    std::size_t bad = 0;
    const auto A = OperatorWord::parse("A"), B = OperatorWord::parse("B");
    for (std::size_t n = 1; n <= 8; ++n)
      for (std::size_t j = 0; j <= 20; ++j) {
        const auto zj = Taylor<BigInt>::monomial(j);
        const auto n_big = BigInt(n);
        // B^n A = A B^n + n B^{n-1}
        if (!(apply_word(B.pow(n) * A, zj) == apply_word(A * B.pow(n), zj) + apply_word(B.pow(n - 1), zj) * n_big)) ++bad;
        // B A^n = A^n B + n A^{n-1}
        if (!(apply_word(B * A.pow(n), zj) == apply_word(A.pow(n) * B, zj) + apply_word(A.pow(n - 1), zj) * n_big)) ++bad;
      }
    return detail::make_check(s, "word_identities", static_cast<double>(bad), 0.0, bad == 0, "n <= 8, deg <= 20");
  }));
  out.push_back(detail::guarded(s, "a_star_routes", 0.0, [&] {
    std::size_t bad = 0;
    for (int m = 1; m <= 8; ++m)
      for (std::size_t j = 0; j <= 20; ++j) {
        const auto zj = Taylor<BigInt>::monomial(j);
        const auto word = apply_a_star_word(zj, m);
        if (!(word == apply_a_star_stirling(zj, m)) || !(word == apply_a_star(zj, m))) ++bad;
      }
    return detail::make_check(s, "a_star_routes", static_cast<double>(bad), 0.0, bad == 0,
                              "word, normal-ordered and coefficient forms, m <= 8, deg <= 20");
  }));
  out.push_back(detail::guarded(s, "commutator", 0.0, [&] {
    std::size_t bad = 0;
    for (int m = 1; m <= 6; ++m) {
      for (std::size_t j = 0; j <= 20; ++j) {
        const auto zj = Taylor<BigInt>::monomial(j);
        if (!(commutator_direct(zj, m) == commutator_formula(zj, m))) ++bad;
      }
      for (int trial = 0; trial < 10; ++trial) {
        const auto f = detail::random_rational_taylor(rng, detail::uniform_index(rng, 0, 15));
        if (!(commutator_direct(f, m) == commutator_formula(f, m))) ++bad;
      }
    }
    return detail::make_check(s, "commutator", static_cast<double>(bad), 0.0, bad == 0,
                              "exact, monomials deg <= 20 and random rational polynomials, m <= 6");
  }));
  out.push_back(detail::guarded(s, "norm_identity", 1e-12, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const int m = 1 + static_cast<int>(detail::uniform_index(rng, 0, 4));
      const auto f = detail::random_taylor(rng, detail::uniform_index(rng, 0, 40));
      const auto r = norm_identity_report(f, m);
      worst = std::max(worst, relative_error(r.rhs_sum(), r.lhs));
    }
    return detail::make_check(s, "norm_identity", worst, 1e-12, worst <= 1e-12, "200 random elements, m <= 5");
  }));
  out.push_back(detail::guarded(s, "domain_functional", 1e-14, [&] {
    double worst = 0.0;
    for (int m = 1; m <= 5; ++m)
      for (std::size_t n = 1; n <= 30; ++n) {
        const double got = in_domain(TaylorCoeffs::monomial(n), WeightIndex(m)).functional;
        const double want = std::exp(log_weight(m, n) + m * std::log(static_cast<double>(n)));
        worst = std::max(worst, relative_error(got, want));
        // The functional equals ||a* z^n||^2.
        worst = std::max(worst, relative_error(norm_squared(apply_a_star(TaylorCoeffs::monomial(n), m), WeightIndex(m)), want));
      }
    return detail::make_check(s, "domain_functional", worst, 1e-12, worst <= 1e-12);
  }));
  return out;
}

inline std::vector<Check> run_bargmann(const RunConfig& cfg) {
  const std::string s = "bargmann";
  std::vector<Check> out;
  detail::Rng rng(cfg.seed ^ 0x6261726721ULL);

  out.push_back(detail::guarded(s, "unitarity", 1e-12, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const int m = 1 + static_cast<int>(detail::uniform_index(rng, 0, 4));
      L2Element g;
      g.hermite_coeffs = detail::random_taylor(rng, detail::uniform_index(rng, 0, 60)).coeffs();
      worst = std::max(worst, relative_error(norm(bargmann_forward(g, m), WeightIndex(m)).value, g.norm()));
    }
    return detail::make_check(s, "unitarity", worst, 1e-12, worst <= 1e-12, "200 elements, m <= 5, N <= 60");
  }));
  out.push_back(detail::guarded(s, "round_trip", 0.0, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int m = 1 + static_cast<int>(detail::uniform_index(rng, 0, 4));
      L2Element g;
      g.hermite_coeffs = detail::random_taylor(rng, detail::uniform_index(rng, 0, 40)).coeffs();
      const auto back = bargmann_inverse(bargmann_forward(g, m), m);
      for (std::size_t n = 0; n < g.hermite_coeffs.size(); ++n)
        worst = std::max(worst, relative_error(back.hermite_coeffs[n], g.hermite_coeffs[n]));
    }
    return detail::make_check(s, "round_trip", worst, 1e-13, worst <= 1e-13, "coordinatewise, m <= 5, N <= 40");
  }));
  const auto table = HermiteEvaluation::build(15, 90);
  out.push_back(detail::guarded(s, "discrete_orthonormality", 1e-8, [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i <= 15; ++i)
      for (std::size_t k = 0; k <= 15; ++k)
        worst = std::max(worst, std::abs(table.discrete_inner(i, k) - (i == k ? 1.0 : 0.0)));
    return detail::make_check(s, "discrete_orthonormality", worst, 1e-8, worst <= 1e-8, "n <= 15, 90 nodes");
  }));
  out.push_back(detail::guarded(s, "quadrature_crosscheck", 1e-8, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      const int m = 1 + static_cast<int>(detail::uniform_index(rng, 0, 4));
      L2Element g;
      g.hermite_coeffs = detail::random_taylor(rng, detail::uniform_index(rng, 0, 15)).coeffs();
      std::uniform_real_distribution<double> r(0.0, 2.0), th(0.0, 2.0 * std::numbers::pi);
      const cplx z = std::polar(r(rng), th(rng));
      const cplx quad = bargmann_quadrature(g, m, z, table);
      const cplx coord = eval_point(bargmann_forward(g, m), z);
      worst = std::max(worst, std::abs(quad - coord) / std::max(1.0, std::abs(coord)));
    }
    return detail::make_check(s, "quadrature_crosscheck", worst, 1e-8, worst <= 1e-8,
                              "int h_m(z,t) g(t) dt against the coordinate formula, N <= 15, |z| <= 2");
  }));
  out.push_back(detail::guarded(s, "uniform_bound", 0.9, [&] {
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double t = -30.0 + 60.0 * i / 4000.0;
      for (double v : hermite_fns(200, t)) worst = std::max(worst, std::abs(v));
    }
    return detail::make_check(s, "uniform_bound", worst, 0.9, worst < 0.9, "max |eta_n(t)|, n <= 200, t in [-30, 30]");
  }));
  out.push_back(detail::guarded(s, "h1_generating_function", 1e-12, [&] {
    std::vector<cplx> zs = {cplx(0.5, 0.0), cplx(-1.0, 0.3), cplx(0.2, 1.1), cplx(1.5, -0.5)};
    std::vector<double> ts = {-2.0, -0.7, 0.0, 0.3, 1.4, 2.5};
    const auto r = compare_h1_closed_forms(zs, ts);
    return detail::make_check(s, "h1_generating_function", r.generating_max_rel_err, 1e-12,
                              r.generating_max_rel_err <= 1e-12,
                              "series h_1 against pi^{-1/4} exp(-t^2/2 - sqrt2 t z - z^2/2)");
  }));
  out.push_back(detail::guarded(s, "h1_quoted_form_differs", 1e-3, [&] {
    std::vector<cplx> zs = {cplx(0.5, 0.0), cplx(-1.0, 0.3), cplx(0.2, 1.1), cplx(1.5, -0.5)};
    std::vector<double> ts = {-2.0, -0.7, 0.0, 0.3, 1.4, 2.5};
    const auto r = compare_h1_closed_forms(zs, ts);
    return detail::make_check(s, "h1_quoted_form_differs", r.quoted_max_rel_err, 1e-3, r.quoted_max_rel_err > 1e-3,
                              "exp(2tz - t^2 - z^2/2) does not reproduce the h_1 series; measured is its max relative "
                              "deviation, which must exceed the tolerance");
  }));
  return out;
}

inline std::vector<Check> run_dual(const RunConfig& cfg) {
  const std::string s = "dual";
  std::vector<Check> out;
  detail::Rng rng(cfg.seed ^ 0x6475616cULL);

  auto random_dual = [&](std::size_t max_len) {
    DualSequence b;
    b.coeffs = detail::random_taylor(rng, detail::uniform_index(rng, 0, max_len - 1)).coeffs();
    return b;
  };

  out.push_back(detail::guarded(s, "vage_constant_A1", 1e-12, [&] {
    const double err = relative_error(vage_constant(1), std::sqrt(std::numbers::e));
    return detail::make_check(s, "vage_constant_A1", err, 1e-12, err <= 1e-12, "A(1) = sqrt(e)");
  }));
  out.push_back(detail::guarded(s, "vage_inequality", 1.0, [&] {
    double worst = 0.0;
    std::size_t violations = 0;
    for (int d = 1; d <= 3; ++d)
      for (int p = 1; p <= 3; ++p)
        for (int trial = 0; trial < 1000; ++trial) {
          const auto r = vage_check(random_dual(30), random_dual(30), p, p + d);
          violations += !r.holds;
          worst = std::max(worst, r.ratio());
        }
    return detail::make_check(s, "vage_inequality", worst, 1.0, violations == 0,
                              "worst lhs/bound over 1000 pairs per (p, q), q - p in {1, 2, 3}, p <= 3");
  }));
  out.push_back(detail::guarded(s, "vage_non_vacuous", 1e-12, [&] {
    double worst = 0.0;
    for (int d = 1; d <= 3; ++d) {
      const auto r = vage_check(DualSequence::unit(0), DualSequence::unit(0), 1, 1 + d);
      worst = std::max(worst, relative_error(r.ratio(), 1.0 / vage_constant(d)));
    }
    return detail::make_check(s, "vage_non_vacuous", worst, 1e-12, worst <= 1e-12,
                              "e_0 * e_0 attains lhs/bound = 1/A(q-p)");
  }));
  out.push_back(detail::guarded(s, "algebra_axioms", 0.0, [&] {
    std::size_t bad = 0;
    auto rnd = [&](std::size_t len) { return detail::random_rational_taylor(rng, len).coeffs(); };
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = rnd(detail::uniform_index(rng, 0, 8));
      const auto b = rnd(detail::uniform_index(rng, 0, 8));
      const auto c = rnd(detail::uniform_index(rng, 0, 8));
      if (convolve(a, b) != convolve(b, a)) ++bad;
      if (convolve(convolve(a, b), c) != convolve(a, convolve(b, c))) ++bad;
      if (convolve(a, std::vector<Rational>{Rational(1)}) != a) ++bad;
      const Rational k(3, 7);
      std::vector<Rational> ka = a, bc(std::max(b.size(), c.size()), Rational(0));
      for (auto& x : ka) x *= k;
      for (std::size_t i = 0; i < b.size(); ++i) bc[i] += b[i];
      for (std::size_t i = 0; i < c.size(); ++i) bc[i] += c[i];
      auto lhs = convolve(ka, bc);
      auto ab = convolve(a, b), ac = convolve(a, c);
      std::vector<Rational> rhs(std::max(ab.size(), ac.size()), Rational(0));
      for (std::size_t i = 0; i < ab.size(); ++i) rhs[i] += k * ab[i];
      for (std::size_t i = 0; i < ac.size(); ++i) rhs[i] += k * ac[i];
      if (lhs != rhs) ++bad;
    }
    return detail::make_check(s, "algebra_axioms", static_cast<double>(bad), 0.0, bad == 0,
                              "commutative, associative, bilinear, unit e_0; exact rationals");
  }));
  out.push_back(detail::guarded(s, "norm_chain", 0.0, [&] {
    std::size_t bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto b = random_dual(40);
      const TaylorCoeffs f(b.coeffs);
      for (int m = 1; m <= 5; ++m) {
        const double coarser = dual_norm(b, m + 1).value, finer = dual_norm(b, m).value;
        if (coarser > finer * (1.0 + 1e-14)) ++bad;
        if (norm(f, WeightIndex(m)).value > norm(f, WeightIndex(m + 1)).value * (1.0 + 1e-14)) ++bad;
      }
      if (dual_norm(b, 1).value > norm(f, WeightIndex(1)).value * (1.0 + 1e-14) ||
          norm(f, WeightIndex(1)).value > dual_norm(b, 1).value * (1.0 + 1e-14))
        ++bad;
    }
    return detail::make_check(s, "norm_chain", static_cast<double>(bad), 0.0, bad == 0,
                              "||.||_{2-(m+1)} <= ||.||_{2-m} and ||.||_{F_m} <= ||.||_{F_{m+1}}");
  }));
  out.push_back(detail::guarded(s, "pairing_cauchy_schwarz", 0.0, [&] {
    std::size_t bad = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const int m = 1 + static_cast<int>(detail::uniform_index(rng, 0, 4));
      const auto f = detail::random_taylor(rng, detail::uniform_index(rng, 0, 30));
      const auto b = random_dual(31);
      if (std::abs(pairing(f, b)) > norm(f, WeightIndex(m)).value * dual_norm(b, m).value * (1.0 + 1e-12)) ++bad;
    }
    return detail::make_check(s, "pairing_cauchy_schwarz", static_cast<double>(bad), 0.0, bad == 0,
                              "|<f, b>| <= ||f||_m ||b||_{2-m}, 500 random pairs");
  }));
  out.push_back(detail::guarded(s, "riemann_order", 0.1, [&] {
    // f(t) = e_0 + t e_1 + t^2 e_2, g(t) = t e_0 + t^3 e_1; exact integral of f*g:
    //   e_0/2 + (1/3 + 1/4) e_1 + (1/4 + 1/5) e_2 + (1/6) e_3.
    const std::vector<cplx> exact = {0.5, 1.0 / 3.0 + 0.25, 0.25 + 0.2, 1.0 / 6.0};
    auto path = [](std::size_t intervals, bool first) {
      std::vector<PathSample> p;
      for (std::size_t i = 0; i <= intervals; ++i) {
        const double t = i == intervals ? 1.0 : static_cast<double>(i) / static_cast<double>(intervals);
        DualSequence v;
        v.level = 2;
        v.coeffs = first ? std::vector<cplx>{1.0, t, t * t} : std::vector<cplx>{t, t * t * t};
        p.push_back({t, v});
      }
      return p;
    };
    std::vector<double> log_h, log_err;
    for (std::size_t intervals : {8, 16, 32, 64, 128}) {
      const auto r = riemann_integral_product(path(intervals, true), path(intervals, false));
      DualSequence diff;
      diff.coeffs.resize(std::max(r.coeffs.size(), exact.size()));
      for (std::size_t n = 0; n < diff.coeffs.size(); ++n) diff.coeffs[n] = r[n] - (n < exact.size() ? exact[n] : cplx{});
      log_h.push_back(std::log(1.0 / static_cast<double>(intervals)));
      log_err.push_back(std::log(dual_norm(diff, 2).value));
    }
    // Least-squares slope of log error against log h.
    const double n = static_cast<double>(log_h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
      sx += log_h[i];
      sy += log_err[i];
      sxx += log_h[i] * log_h[i];
      sxy += log_h[i] * log_err[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return detail::make_check(s, "riemann_order", slope, 0.1, slope >= 1.9 && slope <= 2.1,
                              "measured convergence order of the trapezoidal integral, target [1.9, 2.1]");
  }));
  return out;
}

/// Identity suite for the ladder operators at a single m, on elements up to degree `degree`.
inline std::vector<Check> run_operator_identities(int m, std::size_t degree, std::uint64_t seed) {
  if (m < 1) throw DomainError("m must be at least 1");
  const std::string s = "operators";
  std::vector<Check> out;
  detail::Rng rng(seed ^ 0x6f70657261746f72ULL);
  const WeightIndex w(m);
  out.push_back(detail::guarded(s, "adjointness_a", 1e-12, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto f = detail::random_taylor(rng, detail::uniform_index(rng, 0, degree));
      const auto g = detail::random_taylor(rng, detail::uniform_index(rng, 0, degree));
      worst = std::max(worst, relative_error(inner_product(apply_a(f), g, w), inner_product(f, apply_a_star(g, m), w)));
    }
    return detail::make_check(s, "adjointness_a", worst, 1e-12, worst <= 1e-12);
  }));
  out.push_back(detail::guarded(s, "adjointness_b", 1e-12, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto f = detail::random_taylor(rng, detail::uniform_index(rng, 0, degree));
      const auto g = detail::random_taylor(rng, detail::uniform_index(rng, 0, degree));
      worst = std::max(worst, relative_error(inner_product(apply_b(f), g, w), inner_product(f, apply_b_star(g, m), w)));
    }
    return detail::make_check(s, "adjointness_b", worst, 1e-12, worst <= 1e-12);
  }));
  out.push_back(detail::guarded(s, "a_star_routes", 0.0, [&] {
    std::size_t bad = 0;
    for (std::size_t j = 0; j <= degree; ++j) {
      const auto zj = Taylor<BigInt>::monomial(j);
      const auto word = apply_a_star_word(zj, m);
      if (!(word == apply_a_star_stirling(zj, m)) || !(word == apply_a_star(zj, m))) ++bad;
    }
    return detail::make_check(s, "a_star_routes", static_cast<double>(bad), 0.0, bad == 0);
  }));
  out.push_back(detail::guarded(s, "commutator", 0.0, [&] {
    std::size_t bad = 0;
    for (std::size_t j = 0; j <= degree; ++j) {
      const auto zj = Taylor<BigInt>::monomial(j);
      if (!(commutator_direct(zj, m) == commutator_formula(zj, m))) ++bad;
    }
    return detail::make_check(s, "commutator", static_cast<double>(bad), 0.0, bad == 0);
  }));
  out.push_back(detail::guarded(s, "norm_identity", 1e-12, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto r = norm_identity_report(detail::random_taylor(rng, detail::uniform_index(rng, 0, degree)), m);
      worst = std::max(worst, relative_error(r.rhs_sum(), r.lhs));
    }
    return detail::make_check(s, "norm_identity", worst, 1e-12, worst <= 1e-12);
  }));
  return out;
}

/// Runs one suite by name, or every suite for "all". Checks come back in a fixed order.
inline std::vector<Check> run_suite(const RunConfig& cfg, const std::string& suite) {
  cfg.validate();
  if (suite == "stirling") return run_stirling(cfg);
  if (suite == "kernels") return run_kernels(cfg);
  if (suite == "operators") return run_operators(cfg);
  if (suite == "bargmann") return run_bargmann(cfg);
  if (suite == "dual") return run_dual(cfg);
  if (suite == "all") {
    std::vector<Check> all;
    for (const auto& name : suite_names()) {
      auto part = run_suite(cfg, name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw InputError("unknown suite '" + suite + "'");
}

inline bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

}  // namespace fockm::verify
