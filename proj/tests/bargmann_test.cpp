#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fockm/bargmann.hpp"
#include "fockm/coeffspace.hpp"
#include "fockm/errors.hpp"
#include "fockm/hermite.hpp"
#include "support.hpp"

namespace {

using fockm::cplx;
using fockm::L2Element;
using fockm::TaylorCoeffs;

// (d/dt)^n e^{-t^2} = P_n(t) e^{-t^2} with P_{n+1} = P_n' - 2t P_n; the normalized
// function is P_n(t) e^{-t^2/2} / (pi^{1/4} 2^{n/2} sqrt(n!)).
long double rodrigues_eta(std::size_t n, long double t) {
  std::vector<long double> p{1.0L};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<long double> next(p.size() + 1, 0.0L);
    for (std::size_t i = 1; i < p.size(); ++i) next[i - 1] += static_cast<long double>(i) * p[i];
    for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] -= 2.0L * p[i];
    p = next;
  }
  long double val = 0.0L;
  for (std::size_t i = p.size(); i-- > 0;) val = val * t + p[i];
  const long double norm = std::pow(std::numbers::pi_v<long double>, 0.25L) * std::pow(2.0L, 0.5L * n) *
                           std::sqrt(std::tgamma(static_cast<long double>(n) + 1.0L));
  return val * std::exp(-0.5L * t * t) / norm;
}

L2Element random_l2(std::mt19937_64& rng, std::size_t max_n) {
  L2Element g;
  g.hermite_coeffs = fockm::testing::random_taylor(rng, max_n).coeffs();
  return g;
}

TEST(Hermite, SpecValues) {
  EXPECT_NEAR(fockm::hermite_fn(0, 0.0), std::pow(std::numbers::pi, -0.25), 1e-16);
  EXPECT_NEAR(fockm::hermite_fn(0, 0.0), 0.751126, 1e-6);
  EXPECT_EQ(fockm::hermite_fn(1, 0.0), 0.0);
}

TEST(Hermite, MatchesRodriguesFormula) {
  for (std::size_t n = 0; n <= 12; ++n)
    for (double t : {-3.0, -1.3, -0.2, 0.0, 0.4, 1.0, 2.2, 4.5}) {
      const double want = static_cast<double>(rodrigues_eta(n, t));
      EXPECT_NEAR(fockm::hermite_fn(n, t), want, 1e-12) << n << " " << t;
    }
}

TEST(Hermite, SignConventionFlipsOddFunctions) {
  // eta_1(t) = -sqrt(2) pi^{-1/4} t e^{-t^2/2}: negative for t > 0.
  EXPECT_LT(fockm::hermite_fn(1, 1.0), 0.0);
  EXPECT_NEAR(fockm::hermite_fn(1, 1.0), -std::sqrt(2.0) * std::pow(std::numbers::pi, -0.25) * std::exp(-0.5), 1e-15);
}

TEST(Hermite, ParityOfEachFunction) {
  for (std::size_t n = 0; n <= 30; ++n)
    for (double t : {0.3, 1.7, 3.1}) {
      const double sign = n % 2 ? -1.0 : 1.0;
      EXPECT_NEAR(fockm::hermite_fn(n, -t), sign * fockm::hermite_fn(n, t), 1e-14);
    }
}

TEST(GaussHermite, RuleIntegratesPolynomials) {
  const auto rule = fockm::gauss_hermite_rule(20);
  ASSERT_EQ(rule.nodes.size(), 20u);
  // int t^{2k} e^{-t^2} dt = Gamma(k + 1/2); weights here absorb e^{t^2}.
  for (int k = 0; k <= 10; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < 20; ++j)
      s += rule.weights[j] * std::exp(-rule.nodes[j] * rule.nodes[j]) * std::pow(rule.nodes[j], 2 * k);
    EXPECT_NEAR(s / std::tgamma(k + 0.5), 1.0, 1e-12) << k;
  }
}

TEST(HermiteEvaluation, DiscreteOrthonormality) {
  const auto table = fockm::HermiteEvaluation::build(30, 31);
  for (std::size_t i = 0; i <= 30; ++i)
    for (std::size_t k = 0; k <= 30; ++k) EXPECT_NEAR(table.discrete_inner(i, k), i == k ? 1.0 : 0.0, 1e-8);
  EXPECT_LT(table.bound, 0.9);
  EXPECT_THROW((void)fockm::HermiteEvaluation::build(10, 10), fockm::DomainError);
}

TEST(Hermite, UniformBoundScan) {
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i)
    for (double v : fockm::hermite_fns(200, -30.0 + 0.03 * i)) worst = std::max(worst, std::abs(v));
  EXPECT_LT(worst, 0.9);
  EXPECT_NEAR(worst, std::pow(std::numbers::pi, -0.25), 1e-12);
}

TEST(HKernel, SpecExamples) {
  for (int m = 1; m <= 4; ++m) EXPECT_NEAR(std::abs(fockm::h_kernel_eval(m, 0.0, 0.7) - fockm::hermite_fn(0, 0.7)), 0.0, 1e-16);
  long double oracle = 0.0L;
  for (std::size_t n = 0; n <= 40; n += 2) oracle += rodrigues_eta(n, 0.0L) / std::tgamma(static_cast<long double>(n) + 1.0L);
  EXPECT_NEAR(fockm::h_kernel_eval(2, 1.0, 0.0).real(), static_cast<double>(oracle), 1e-15);
}

TEST(HKernel, ClosedFormsForMEqualsOne) {
  const std::vector<cplx> zs = {cplx(0.5, 0.0), cplx(-1.0, 0.3), cplx(0.2, 1.1)};
  const std::vector<double> ts = {-1.5, 0.0, 0.3, 2.0};
  const auto r = fockm::compare_h1_closed_forms(zs, ts);
  EXPECT_EQ(r.samples, 12u);
  EXPECT_LE(r.generating_max_rel_err, 1e-12);
  EXPECT_GT(r.quoted_max_rel_err, 1e-3);
  EXPECT_NEAR(std::abs(fockm::h_kernel_eval(1, 0.5, 0.3) - fockm::h1_generating_function(0.5, 0.3)), 0.0, 1e-15);
}

TEST(Bargmann, SpecExamples) {
  for (int m = 1; m <= 4; ++m)
    for (std::size_t n = 0; n <= 10; ++n) {
      L2Element eta_n;
      eta_n.hermite_coeffs.assign(n + 1, 0.0);
      eta_n.hermite_coeffs[n] = 1.0;
      const auto f = fockm::bargmann_forward(eta_n, m);
      const double want = std::pow(std::tgamma(static_cast<double>(n) + 1.0), -0.5 * m);
      EXPECT_NEAR(std::abs(f[n] - want) / want, 0.0, 1e-14);
      const auto back = fockm::bargmann_inverse(TaylorCoeffs::monomial(n, want), m);
      EXPECT_NEAR(std::abs(back.hermite_coeffs[n] - 1.0), 0.0, 1e-13);
    }
  EXPECT_TRUE(fockm::bargmann_forward(L2Element{}, 3).is_zero());
  EXPECT_EQ(fockm::bargmann_inverse(TaylorCoeffs{}, 3).norm(), 0.0);

  L2Element g;
  g.hermite_coeffs = {1.0, 0.0, 1.0};
  const auto f = fockm::bargmann_forward(g, 2);
  EXPECT_EQ(f[0], cplx(1.0));
  EXPECT_NEAR(std::abs(f[2] - 0.5), 0.0, 1e-16);
}

TEST(Bargmann, Unitarity) {
  auto rng = fockm::testing::rng_for(41);
  for (int m = 1; m <= 5; ++m)
    for (int i = 0; i < 40; ++i) {
      const auto g = random_l2(rng, 60);
      EXPECT_LE(fockm::relative_error(fockm::norm(fockm::bargmann_forward(g, m), fockm::WeightIndex(m)).value, g.norm()), 1e-12);
    }
}

TEST(Bargmann, RoundTripIsCoordinatewise) {
  auto rng = fockm::testing::rng_for(42);
  for (int m = 1; m <= 5; ++m)
    for (int i = 0; i < 20; ++i) {
      const auto g = random_l2(rng, 40);
      const auto back = fockm::bargmann_inverse(fockm::bargmann_forward(g, m), m);
      ASSERT_EQ(back.hermite_coeffs.size(), g.hermite_coeffs.size());
      for (std::size_t n = 0; n < g.hermite_coeffs.size(); ++n)
        EXPECT_LE(fockm::relative_error(back.hermite_coeffs[n], g.hermite_coeffs[n]), 1e-13);
    }
}

TEST(Bargmann, InverseOverflowIsRangeError) {
  EXPECT_THROW((void)fockm::bargmann_inverse(TaylorCoeffs::monomial(200), 6), fockm::RangeError);
}

TEST(Bargmann, QuadratureAgreesWithCoordinates) {
  auto rng = fockm::testing::rng_for(43);
  const auto table = fockm::HermiteEvaluation::build(15, 90);
  std::uniform_real_distribution<double> radius(0.0, 2.0), angle(0.0, 2.0 * std::numbers::pi);
  for (int m = 1; m <= 5; ++m)
    for (int i = 0; i < 10; ++i) {
      const auto g = random_l2(rng, 15);
      const cplx z = std::polar(radius(rng), angle(rng));
      const cplx coord = fockm::eval_point(fockm::bargmann_forward(g, m), z);
      EXPECT_LE(std::abs(fockm::bargmann_quadrature(g, m, z, table) - coord), 1e-8 * std::max(1.0, std::abs(coord)));
    }
}

TEST(L2Element, ParsevalAndEvaluation) {
  L2Element g;
  g.hermite_coeffs = {cplx(3, 0), cplx(0, 4)};
  EXPECT_NEAR(g.norm(), 5.0, 1e-15);
  const double t = 0.8;
  EXPECT_NEAR(std::abs(g.eval(t) - (3.0 * fockm::hermite_fn(0, t) + cplx(0, 4) * fockm::hermite_fn(1, t))), 0.0, 1e-15);
}

}  // namespace
