#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "jdx/errors.hpp"
#include "jdx/numint.hpp"
#include "oracles.hpp"

using namespace jdx;
using numint::integrate_adaptive;

TEST(Numint, PolynomialOnUnitInterval) {
  const auto r = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-10);
  EXPECT_TRUE(r.converged);
}

TEST(Numint, ExponentialTailMap) {
  numint::QuadratureConfig cfg;
  const auto r = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, INFINITY, cfg);
  EXPECT_NEAR(r.value, 1.0, cfg.rel_tol);
}

TEST(Numint, TemperedTailAgainstLogTrapezoid) {
  auto f = [](double z) { return std::exp(-5 * z) * std::pow(z, -1.5); };
  const double ref = oracle::trapezoid_log(f, 1.0, 40.0, 2'000'000);
  numint::QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-10;
  const auto r = integrate_adaptive(f, 1.0, INFINITY, cfg);
  EXPECT_NEAR(r.value / ref - 1.0, 0.0, 1e-6);
}

TEST(Numint, ReversedLimitsFlipSign) {
  auto f = [](double x) { return std::cos(x); };
  const auto a = integrate_adaptive(f, 0.0, 2.0);
  const auto b = integrate_adaptive(f, 2.0, 0.0);
  EXPECT_DOUBLE_EQ(a.value, -b.value);
  EXPECT_NEAR(a.value, std::sin(2.0), 1e-10);
}

TEST(Numint, DoublyInfiniteGaussian) {
  const auto r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY);
  EXPECT_NEAR(r.value, std::sqrt(M_PI), 1e-8);
}

TEST(Numint, Additivity) {
  numint::QuadratureConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-11;
  auto f = [](double z) { return std::exp(-z) * std::pow(z, -0.3); };
  const auto whole = integrate_adaptive(f, 0.0, INFINITY, cfg);
  const auto l = integrate_adaptive(f, 0.0, 0.9, cfg);
  const auto r = integrate_adaptive(f, 0.9, INFINITY, cfg);
  EXPECT_NEAR(whole.value, l.value + r.value, whole.abs_error + l.abs_error + r.abs_error + 1e-12);
  EXPECT_NEAR(whole.value, std::tgamma(0.7), 1e-8);
}

TEST(Numint, NanIntegrandThrows) {
  EXPECT_THROW(integrate_adaptive([](double x) { return x > 0.5 ? NAN : 1.0; }, 0.0, 1.0),
               NumericError);
}

TEST(Numint, RejectsBadConfig) {
  numint::QuadratureConfig cfg;
  cfg.abs_tol = 0.0;
  EXPECT_THROW(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, cfg), ParameterError);
  EXPECT_THROW(integrate_adaptive([](double) { return 1.0; }, NAN, 1.0), ParameterError);
}

TEST(Numint, BudgetExhaustionReportsNotConverged) {
  numint::QuadratureConfig cfg;
  cfg.max_evaluations = 100;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-15;
  const auto r = integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(numint::require_converged(r, "oscillatory"), NumericError);
}

namespace {
const oracle::TemperedStable kTs;
}

TEST(Numint, CompensatedAgainstLogTrapezoid) {
  const double eps = 0.5;
  auto w = [](double z) { return kTs.h(z); };
  auto one = [](double) { return 1.0; };
  auto phi_bar = [eps](double z) { return 1.0 - oracle::phi(eps, z); };
  numint::QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-11;
  const auto r = numint::integrate_compensated(
      [&](double z) { return one(z) * phi_bar(z); }, w, eps, cfg);
  const double ref = 2.0 * oracle::trapezoid_log(
                               [&](double z) { return z * z * kTs.h(z) * phi_bar(z); }, 1e-20,
                               eps, 2'000'000);
  EXPECT_NEAR(r.value / ref - 1.0, 0.0, 1e-6);
}

TEST(Numint, CompensatedOddIntegrandVanishes) {
  const auto r = numint::integrate_compensated([](double z) { return z; },
                                               [](double z) { return kTs.h(z); }, 0.5);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(Numint, CompensatedShrinksWithEps) {
  double prev = INFINITY;
  for (double eps : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
    const auto r = numint::integrate_compensated([](double) { return 1.0; },
                                                 [](double z) { return kTs.h(z); }, eps);
    EXPECT_LT(r.value, prev);
    EXPECT_GT(r.value, 0.0);
    prev = r.value;
  }
}

TEST(Numint, GaussLegendre16ExactForDegree31) {
  const double v = numint::GaussLegendre16::integrate01([](double x) { return std::pow(x, 31); });
  EXPECT_NEAR(v, 1.0 / 32.0, 1e-15);
}
