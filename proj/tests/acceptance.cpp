// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "fockm/fockm.hpp"

namespace {

using fockm::cplx;
using fockm::TaylorCoeffs;
using fockm::WeightIndex;

struct Outcome {
  bool passed = false;
  std::string measured;
};

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(20260000ULL + salt); }

cplx random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  return {re, nd(rng)};
}

TaylorCoeffs random_taylor(std::mt19937_64& rng, std::size_t max_degree) {
  std::vector<cplx> c(std::uniform_int_distribution<std::size_t>(0, max_degree)(rng) + 1);
  for (auto& x : c) x = random_complex(rng);
  return TaylorCoeffs(std::move(c));
}

fockm::QuadratureConfig quad() {
  fockm::QuadratureConfig c;
  c.rel_tol = 1e-10;
  return c;
}

Outcome moments() {
  double worst = 0.0;
  for (int m = 1; m <= 4; ++m) {
    const auto mom = fockm::km_moments(m, 8, quad());
    for (std::size_t n = 0; n <= 8; ++n) worst = std::max(worst, fockm::relative_error(mom[n], std::exp(fockm::log_weight(m, n))));
  }
  return {worst <= 1e-6, "max rel err " + sci(worst) + " (tol 1e-6, m<=4, n<=8)"};
}

Outcome bessel() {
  boost::math::quadrature::exp_sinh<double> integrator;
  double worst = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 4.0, 10.0}) {
    const double y = 2.0 * std::sqrt(x);
    const double k0 = integrator.integrate([y](double t) { return std::exp(-y * std::cosh(t)); }, 1e-15);
    worst = std::max(worst, fockm::relative_error(fockm::km_eval(2, x, quad()), 2.0 * k0));
  }
  return {worst <= 1e-8, "max rel err " + sci(worst) + " (tol 1e-8, 6 points)"};
}

Outcome normal_ordering() {
  int bad = 0;
  for (std::size_t k = 1; k <= 8; ++k) bad += !fockm::verify_normal_ordering(k, 12);
  return {bad == 0, std::to_string(bad) + " mismatches (exact, k<=8, deg<=12)"};
}

Outcome adjointness() {
  auto rng = rng_for(4);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int m = 1 + i % 5;
    const auto f = random_taylor(rng, 40), g = random_taylor(rng, 40);
    worst = std::max(worst, fockm::relative_error(fockm::inner_product(fockm::apply_a(f), g, WeightIndex(m)),
                                                  fockm::inner_product(f, fockm::apply_a_star(g, m), WeightIndex(m))));
  }
  return {worst <= 1e-12, "max rel err " + sci(worst) + " (tol 1e-12, 1000 pairs)"};
}

Outcome commutator() {
  int bad = 0;
  for (int m = 1; m <= 6; ++m)
    for (std::size_t j = 0; j <= 20; ++j) {
      const auto zj = fockm::Taylor<fockm::BigInt>::monomial(j);
      bad += !(fockm::commutator_direct(zj, m) == fockm::commutator_formula(zj, m));
    }
  return {bad == 0, std::to_string(bad) + " mismatches (exact, m<=6, deg<=20)"};
}

Outcome norm_identity() {
  auto rng = rng_for(6);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto r = fockm::norm_identity_report(random_taylor(rng, 40), 1 + i % 5);
    worst = std::max(worst, fockm::relative_error(r.rhs_sum(), r.lhs));
  }
  return {worst <= 1e-12, "max rel err " + sci(worst) + " (tol 1e-12, 200 elements)"};
}

Outcome bargmann() {
  auto rng = rng_for(7);
  double unitary = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int m = 1 + i % 5;
    fockm::L2Element g;
    g.hermite_coeffs = random_taylor(rng, 60).coeffs();
    unitary = std::max(unitary, fockm::relative_error(fockm::norm(fockm::bargmann_forward(g, m), WeightIndex(m)).value, g.norm()));
  }
  const auto table = fockm::HermiteEvaluation::build(15, 90);
  std::uniform_real_distribution<double> radius(0.0, 2.0), angle(0.0, 2.0 * std::numbers::pi);
  double cross = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int m = 1 + i % 5;
    fockm::L2Element g;
    g.hermite_coeffs = random_taylor(rng, 15).coeffs();
    const cplx z = std::polar(radius(rng), angle(rng));
    const cplx coord = fockm::eval_point(fockm::bargmann_forward(g, m), z);
    cross = std::max(cross, std::abs(fockm::bargmann_quadrature(g, m, z, table) - coord) / std::max(1.0, std::abs(coord)));
  }
  return {unitary <= 1e-12 && cross <= 1e-8,
          "unitarity " + sci(unitary) + " (tol 1e-12), quadrature cross-check " + sci(cross) + " (tol 1e-8)"};
}

Outcome vage() {
  auto rng = rng_for(8);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  auto random_dual = [&] {
    fockm::DualSequence b;
    b.coeffs.resize(len(rng));
    for (auto& c : b.coeffs) c = random_complex(rng);
    return b;
  };
  int violations = 0, exchanged_violations = 0, pairs = 0;
  double worst = 0.0;
  for (int p = 1; p <= 3; ++p)
    for (int d = 1; d <= 3; ++d)
      for (int i = 0; i < 1000; ++i, ++pairs) {
        const auto a = random_dual(), b = random_dual();
        const auto r = fockm::vage_check(a, b, p, p + d);
        violations += !r.holds;
        worst = std::max(worst, r.ratio());
        exchanged_violations += !fockm::vage_check_exchanged(a, b, p, p + d).holds;
      }
  const double a1 = fockm::relative_error(fockm::vage_constant(1), std::sqrt(std::numbers::e));
  return {violations == 0 && a1 <= 1e-12,
          std::to_string(violations) + "/" + std::to_string(pairs) + " violations, worst ratio " + sci(worst) +
              ", A(1) rel err " + sci(a1) + "; exchanged-level arrangement violated in " +
              std::to_string(exchanged_violations) + " pairs"};
}

Outcome reproducing() {
  auto rng = rng_for(9);
  std::uniform_real_distribution<double> radius(0.0, 2.0), angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int m = 1; m <= 6; ++m)
    for (int i = 0; i < 200; ++i) {
      const auto f = random_taylor(rng, 30);
      const cplx w = std::polar(radius(rng), angle(rng));
      worst = std::max(worst, fockm::relative_error(fockm::inner_product(f, fockm::kernel_section(WeightIndex(m), w, 30), WeightIndex(m)),
                                                    fockm::eval_point(f, w)));
    }
  return {worst <= 1e-12, "max rel err " + sci(worst) + " (tol 1e-12, m<=6, |w|<=2, deg<=30)"};
}

Outcome aggregation() {
  double worst = 0.0;
  for (double eps : {0.1, 0.5, 0.9})
    for (cplx z : {cplx(0.3, 0.0), cplx(1.0, 0.5), cplx(-1.5, 1.0)})
      for (cplx w : {cplx(0.7, -0.2), cplx(1.0, 0.0), cplx(0.5, 1.5)}) {
        const auto g = fockm::aggregate_kernels_geometric(eps, z, w, 64);
        const auto e = fockm::aggregate_kernels_exponential(eps, z, w, 64);
        worst = std::max({worst, fockm::relative_error(g.lhs, g.rhs), fockm::relative_error(e.lhs, e.rhs)});
      }
  return {worst <= 1e-10, "max rel err " + sci(worst) + " (tol 1e-10, 27 grid points, both identities)"};
}

Outcome riemann() {
  // f(t) = e0 + t^2 e1 + t^3 e2, g(t) = t e0 + (1 - t^2) e1.
  auto sample = [](std::size_t intervals, bool first) {
    std::vector<fockm::PathSample> p;
    for (std::size_t i = 0; i <= intervals; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(intervals);
      fockm::DualSequence v;
      v.coeffs = first ? std::vector<cplx>{1.0, t * t, t * t * t} : std::vector<cplx>{t, 1.0 - t * t};
      p.push_back({t, v});
    }
    return p;
  };
  // Exact coefficients of int_0^1 f*g.
  const std::vector<cplx> exact = {0.5, 2.0 / 3.0 + 0.25, 1.0 / 3.0, 0.25 - 1.0 / 6.0};
  std::vector<double> xs, ys;
  for (std::size_t n : {8, 16, 32, 64, 128}) {
    const auto r = fockm::riemann_integral_product(sample(n, true), sample(n, false));
    fockm::DualSequence diff;
    for (std::size_t k = 0; k < std::max(r.coeffs.size(), exact.size()); ++k)
      diff.coeffs.push_back(r[k] - (k < exact.size() ? exact[k] : cplx{}));
    xs.push_back(std::log(1.0 / static_cast<double>(n)));
    ys.push_back(std::log(fockm::dual_norm(diff, 2).value));
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return {slope >= 1.9 && slope <= 2.1, "measured order " + std::to_string(slope) + " (target [1.9, 2.1])"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "moment identity", 60.0, moments},
      {2, "Bessel identification", 5.0, bessel},
      {3, "normal ordering", 1.0, normal_ordering},
      {4, "adjointness", 5.0, adjointness},
      {5, "commutator", 1.0, commutator},
      {6, "norm identity", 2.0, norm_identity},
      {7, "Bargmann unitarity", 10.0, bargmann},
      {8, "Vage inequality", 5.0, vage},
      {9, "reproducing property", 2.0, reproducing},
      {10, "kernel aggregation", 2.0, aggregation},
      {11, "Riemann integral refinement", 2.0, riemann},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.passed;
    std::printf("%s [%d] %s: %s; %.2fs (budget %.0fs%s)\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.measured.c_str(), secs,
                c.budget_seconds, secs > c.budget_seconds ? ", over budget" : "");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
