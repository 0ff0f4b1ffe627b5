#include <gtest/gtest.h>

#include <cmath>

#include "jdx/errors.hpp"
#include "jdx/levy.hpp"
#include "jdx/presets.hpp"
#include "jdx/truncation.hpp"
#include "oracles.hpp"

using namespace jdx;

namespace {
const oracle::TemperedStable kTs;
model::ModelSpec pure() { return model::make_pure_levy({}); }
model::ModelSpec tanh3() { return model::make_state_dependent_tanh(0.3, {}); }
}  // namespace

TEST(SmoothStep, ShapeAndDerivatives) {
  EXPECT_EQ(truncation::smooth_step(-0.1), 0.0);
  EXPECT_EQ(truncation::smooth_step(1.2), 1.0);
  EXPECT_NEAR(truncation::smooth_step(0.5), 0.5, 1e-15);
  for (double s : {0.2, 0.5, 0.8}) {
    EXPECT_NEAR(truncation::smooth_step(s) + truncation::smooth_step(1 - s), 1.0, 1e-15);
    const double d = 1e-5;
    EXPECT_NEAR(truncation::smooth_step_d1(s),
                (truncation::smooth_step(s + d) - truncation::smooth_step(s - d)) / (2 * d), 1e-8);
    EXPECT_NEAR(truncation::smooth_step_d2(s),
                (truncation::smooth_step_d1(s + d) - truncation::smooth_step_d1(s - d)) / (2 * d),
                1e-6);
  }
}

TEST(Truncation, PhiMatchesOracle) {
  const truncation::TruncationScheme s(pure(), 0.5);
  for (double z : {0.1, 0.26, 0.3, 0.4, 0.49, 0.7, -0.33})
    EXPECT_NEAR(s.phi(z), oracle::phi(0.5, z), 1e-15);
}

TEST(Truncation, LambdaBracket) {
  for (double eps : {0.125, 0.25, 0.5, 1.0}) {
    const truncation::TruncationScheme s(pure(), eps);
    EXPECT_GE(s.lambda(), 2 * kTs.tail_mass(eps));
    EXPECT_LE(s.lambda(), 2 * kTs.tail_mass(eps / 2));
    EXPECT_NEAR(s.lambda_positive(), s.lambda_negative(), 1e-9 * s.lambda());
  }
}

TEST(Truncation, LambdaAgainstDirectSimpson) {
  const double eps = 0.5;
  const truncation::TruncationScheme s(pure(), eps);
  auto f = [&](double z) { return oracle::phi(eps, z) * kTs.h(z); };
  const double ref = 2 * (oracle::simpson(f, eps / 2, eps, 20000) + kTs.tail_mass(eps));
  EXPECT_NEAR(s.lambda() / ref - 1.0, 0.0, 1e-8);
}

TEST(Truncation, RejectsBadEps) {
  EXPECT_THROW(truncation::TruncationScheme(pure(), 0.0), ParameterError);
  EXPECT_THROW(truncation::TruncationScheme(pure(), -1.0), ParameterError);
}

TEST(Truncation, DensitySplit) {
  const truncation::TruncationScheme s(pure(), 0.25);
  const auto sd = truncation::split_densities(s);
  for (double z : {0.05, 0.15, 0.2, 0.6}) {
    EXPECT_NEAR(sd.h_eps(z) + sd.hbar_eps(z), kTs.h(z), 1e-12 * kTs.h(z));
    EXPECT_NEAR(sd.breve_h(z) * s.lambda(), sd.h_eps(z), 1e-12 * kTs.h(z));
  }
}

TEST(Truncation, CompensatedDriftTanhAgainstTrapezoid) {
  const auto m = tanh3();
  const double eps = 0.5, x = 1.0;
  const truncation::TruncationScheme s(m, eps);
  auto integrand = [&](double z) { return m.gamma(x, z) * oracle::phi(eps, z) * kTs.h(z); };
  const double ref =
      m.b(x) - (oracle::trapezoid_log(integrand, eps / 2, 1.0, 1'000'000) +
                oracle::trapezoid_log([&](double z) { return integrand(-z); }, eps / 2, 1.0, 1'000'000));
  EXPECT_NEAR(truncation::compensated_drift(s, x), ref, 1e-6 * std::abs(ref));
  EXPECT_NEAR(ref, 0.05, 1e-12);
}

TEST(Truncation, CompensatedDriftAsymmetricJump) {
  // gamma = zeta + 0.2 zeta^2: even part survives the compensator
  const auto base = pure();
  auto d = base.definition();
  d.jump.f = [](double, double z) { return z + 0.2 * z * z; };
  d.jump.dz = [](double, double z) { return 1 + 0.4 * z; };
  d.jump.dzz = [](double, double) { return 0.4; };
  d.gamma_x_free = true;
  const model::ModelSpec m(d);
  const double eps = 0.5;
  const truncation::TruncationScheme s(m, eps);
  const double ref =
      0.05 - 2 * 0.2 * oracle::simpson([&](double z) { return z * z * oracle::phi(eps, z) * kTs.h(z); },
                                       eps / 2, 1.0, 200000);
  EXPECT_NEAR(truncation::compensated_drift(s, 0.3), ref, 1e-8);
  EXPECT_NEAR(truncation::compensated_drift_x(s, 0.3), 0.0, 1e-8);
}

TEST(Truncation, TransformedDensityNormalizedAndMatchesG) {
  const auto m = tanh3();
  const truncation::TruncationScheme s(m, 0.25);
  for (double z : {-0.8, 0.0, 1.2}) {
    auto f = [&](double v) { return truncation::transformed_jump_density(s, z, v); };
    const double mass = oracle::simpson(f, -8.0, -0.05, 400000) + oracle::simpson(f, 0.05, 8.0, 400000);
    EXPECT_NEAR(mass, 1.0, 1e-7);
    for (double y : {0.6, -0.9, 1.4}) {
      const double lg = s.lambda() * f(y);
      EXPECT_NEAR(lg, model::process_levy_density(m, z, y), 1e-10 * lg);
      EXPECT_NEAR(truncation::shifted_jump_density(s, z, z + y), f(y), 1e-14);
    }
  }
}

TEST(Levy, AbsRegionMass) {
  const auto r = levy::integrate_levy_tail([](double) { return 1.0; }, pure(), levy::AbsRegion{1.0});
  EXPECT_NEAR(r.value / (2 * kTs.tail_mass(1.0)) - 1.0, 0.0, 1e-7);
}

TEST(Levy, GammaRegionIdentityEqualsHalfLine) {
  const auto m = pure();
  const auto a = levy::integrate_levy_tail([](double) { return 1.0; }, m, levy::GammaRegion{0.3, 0.8});
  EXPECT_NEAR(a.value / kTs.tail_mass(0.8) - 1.0, 0.0, 1e-7);
}

TEST(Levy, UnattainedLevelIsEmpty) {
  auto d = pure().definition();
  d.jump.f = [](double, double z) { return std::tanh(z); };
  d.jump.dz = [](double, double z) { return 1 - std::tanh(z) * std::tanh(z); };
  d.jump.dzz = nullptr;
  const model::ModelSpec m(d);
  const auto r = levy::integrate_levy_tail([](double) { return 1.0; }, m, levy::GammaRegion{0.0, 2.0});
  EXPECT_EQ(r.value, 0.0);
}

TEST(Levy, MassDifferenceMatchesTwoMasses) {
  const auto m = tanh3();
  numint::QuadratureConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-11;
  auto w = [](double z) { return kTs.h(z); };
  const double a = levy::gamma_region_mass(m, 0.4, 0.9, w, 0.0, cfg).value;
  const double b = levy::gamma_region_mass(m, 0.4001, 0.9, w, 0.0, cfg).value;
  const double d = levy::gamma_region_mass_difference(m, 0.4, 0.9, 0.4001, 0.9, w, 0.0, cfg).value;
  EXPECT_NEAR(d, a - b, 1e-10);
}
