#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "jdx/errors.hpp"
#include "jdx/expansion.hpp"
#include "jdx/montecarlo.hpp"
#include "jdx/presets.hpp"
#include "jdx/rng.hpp"
#include "oracles.hpp"

using namespace jdx;

namespace {

const oracle::TemperedStable kTs;
model::ModelSpec pure() { return model::make_pure_levy({}); }

struct Moments {
  double mean, var, skew, exkurt;
};
Moments moments(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  return {m, m2, m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3};
}

mc::SimScheme scheme(std::uint64_t seed, int threads = 2) {
  mc::SimScheme s;
  s.seed = seed;
  s.threads = threads;
  return s;
}

}  // namespace

TEST(Philox, KnownAnswer) {
  const auto out = rng::philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
  const auto ff = rng::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                  {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(ff[0], 0x408f276du);
  EXPECT_EQ(ff[1], 0x41c83b0eu);
  EXPECT_EQ(ff[2], 0xa20bc7c6u);
  EXPECT_EQ(ff[3], 0x6d5451fdu);
}

TEST(PathRng, StreamsAndChannelsDiffer) {
  rng::PathRng a(1, 0, 5), b(1, 0, 5), c(1, 1, 5), d(1, 0, 5, 1), e(1, 0, 6);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
  EXPECT_NE(x, e());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(SmallJumpMode, ParseRoundTrip) {
  for (auto m : {mc::SmallJumpMode::DriftCompensateOnly, mc::SmallJumpMode::GaussianSubstitute,
                 mc::SmallJumpMode::Hybrid})
    EXPECT_EQ(mc::parse_small_jump_mode(mc::to_string(m)), m);
  EXPECT_THROW(mc::parse_small_jump_mode("exact"), ParameterError);
}

TEST(SimScheme, Validation) {
  auto s = scheme(1);
  s.eps = 1.5;
  EXPECT_THROW(s.validate(), ParameterError);
  s = scheme(1);
  s.n_steps = 0;
  EXPECT_THROW(s.validate(), ParameterError);
}

TEST(Simulator, ZeroTimeReturnsStart) {
  const mc::Simulator sim(pure(), scheme(3));
  for (double v : sim.simulate_terminal(0.7, 0.0, 100)) EXPECT_EQ(v, 0.7);
}

TEST(Simulator, DeterministicAcrossThreadCounts) {
  const auto a = mc::simulate_terminal(pure(), scheme(11, 1), 0.0, 0.1, 5000);
  const auto b = mc::simulate_terminal(pure(), scheme(11, 4), 0.0, 0.1, 5000);
  EXPECT_EQ(a, b);
  const auto c = mc::simulate_terminal(pure(), scheme(12, 4), 0.0, 0.1, 5000);
  EXPECT_NE(a, c);
  const mc::Simulator sim(pure(), scheme(11));
  EXPECT_EQ(sim.sample(0.0, 0.1, 1234), a[1234]);
}

TEST(Simulator, BrownianWhenNoJumpsRemain) {
  // symmetric compact h inside (-eps/2, eps/2): no big jumps, no compensator
  model::ModelDefinition d;
  d.drift = {[](double) { return 0.0; }, nullptr, nullptr};
  d.vol = {[](double) { return 0.5; }, nullptr, nullptr};
  d.jump = {[](double, double z) { return z; }, [](double, double) { return 0.0; },
            [](double, double) { return 1.0; }, [](double, double) { return 0.0; },
            [](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
  d.levy = {[](double z) {
              const double a = std::abs(z);
              return a > 0.05 && a < 0.4 ? 3.0 : 0.0;
            },
            nullptr, nullptr};
  d.gamma_x_free = true;
  d.constant_coefficients = true;
  auto s = scheme(21, 4);
  s.eps = 1.0;
  s.small_jump_mode = mc::SmallJumpMode::DriftCompensateOnly;
  const mc::Simulator sim{model::ModelSpec(d), s};
  EXPECT_EQ(sim.jump_intensity(), 0.0);
  const double t = 0.3, n = 200000;
  const auto m = moments(sim.simulate_terminal(1.0, t, static_cast<std::uint64_t>(n)));
  const double var = 0.25 * t;
  EXPECT_NEAR(m.mean, 1.0, 4 * std::sqrt(var / n));
  EXPECT_NEAR(m.var, var, 4 * var * std::sqrt(2 / n));
  EXPECT_NEAR(m.skew, 0.0, 4 * std::sqrt(6 / n));
  EXPECT_NEAR(m.exkurt, 0.0, 4 * std::sqrt(24 / n));
}

TEST(Simulator, PureLevyMeanAndVariance) {
  // X_t - x has mean b t and variance t (sigma^2 + int z^2 h)
  const double t = 0.1;
  const std::uint64_t n = 1'000'000;
  const auto xs = mc::simulate_terminal(pure(), scheme(31, 4), 0.0, t, n);
  const auto m = moments(xs);
  const double m2 = 2 * kTs.power_moment(2, 60.0);
  const double m4 = 2 * kTs.power_moment(4, 60.0);
  const double var = t * (0.04 + m2);
  const double k4 = t * m4;
  const truncation::TruncationScheme s(pure(), 0.25);
  const expansion::GeneratorContext ctx{s};
  const expansion::SmoothFunction id{[](double w) { return w; }, [](double) { return 1.0; },
                                     [](double) { return 0.0; }};
  EXPECT_NEAR(m.mean, expansion::dynkin_expand(ctx, id, 0.0, t, 1), 4 * std::sqrt(var / n));
  EXPECT_NEAR(m.var, var, 4 * std::sqrt((k4 + 2 * var * var) / n));
}

TEST(Simulator, JumpQuantileMonotone) {
  const mc::Simulator sim(pure(), scheme(1));
  double prev = -INFINITY;
  for (double u = 0.01; u < 1.0; u += 0.01) {
    const double q = sim.jump_quantile(u);
    EXPECT_GE(q, prev);
    prev = q;
  }
}

TEST(Simulator, HybridQuantileMatchesSimulatedLaw) {
  // hybrid with fine cutoff 0.01: jump law phi_delta h / lambda_delta, delta = 0.01
  const mc::Simulator sim(pure(), scheme(1));
  const double lam = sim.jump_intensity();
  const double ref = 2 * oracle::simpson([](double z) { return oracle::phi(0.01, z) * kTs.h(z); },
                                         0.005, 0.01, 20000) +
                     2 * kTs.tail_mass(0.01);
  EXPECT_NEAR(lam / ref - 1.0, 0.0, 1e-6);
  const double p_above = kTs.tail_mass(0.3) / lam;
  EXPECT_NEAR(sim.jump_quantile(1 - p_above), 0.3, 1e-4);
}

TEST(Estimators, TailTrivialCases) {
  const std::vector<double> below(100, 0.5);
  const auto a = mc::estimate_tail(below, 0.0, 1.0);
  EXPECT_EQ(a.mean, 0.0);
  EXPECT_EQ(a.std_error, 0.0);
  const std::vector<double> above(100, 2.0);
  const auto b = mc::estimate_tail(above, 0.0, 1.0);
  EXPECT_EQ(b.mean, 1.0);
  EXPECT_EQ(b.std_error, 0.0);
}

TEST(Estimators, TailBernoulli) {
  std::mt19937_64 g(7);
  std::bernoulli_distribution bern(0.01);
  std::vector<double> v(1'000'000);
  for (auto& x : v) x = bern(g) ? 2.0 : 0.0;
  const auto e = mc::estimate_tail(v, 0.0, 1.0);
  EXPECT_NEAR(e.mean, 0.01, 4 * std::sqrt(0.01 * 0.99 / 1e6));
  EXPECT_NEAR(e.std_error, std::sqrt(0.01 * 0.99 / 1e6), 1e-5);
}

TEST(Estimators, DensityBandwidthOrder) {
  std::mt19937_64 g(9);
  std::normal_distribution<double> nd;
  std::vector<double> v(2'000'000);
  for (auto& x : v) x = nd(g);
  const double y = 0.5;
  const double pdf = std::exp(-0.125) / std::sqrt(2 * M_PI);
  const double f2 = (y * y - 1) * pdf;
  for (double db : {0.05, 0.1}) {
    const auto e = mc::estimate_density(v, 0.0, y, {db});
    // window average bias = db^2/6 f''
    EXPECT_NEAR(e.mean, pdf + db * db / 6 * f2, 4 * e.std_error);
  }
  EXPECT_THROW(mc::estimate_density(v, 0.0, y, {0.3}), ParameterError);
}

TEST(Estimators, CallPriceSynthetic) {
  const std::vector<double> lp = {std::log(0.8), std::log(1.5), std::log(2.0), 0.0};
  const auto e = mc::call_price_from_samples(lp, 1.2);
  EXPECT_NEAR(e.mean, (0.3 + 0.8) / 4, 1e-15);
  double prev = INFINITY;
  for (double K : {1.1, 1.3, 1.6, 1.9, 2.5}) {
    const double v = mc::call_price_from_samples(lp, K).mean;
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(Fit, ExactPolynomialRecovery) {
  const std::vector<double> ts = {0.0125, 0.025, 0.05, 0.1};
  std::vector<mc::MCEstimate> es;
  for (double t : ts) es.push_back({0.02 * t + 0.005 * t * t, 1e-6, 1000});
  const auto f = mc::fit_expansion_coeffs(ts, es);
  EXPECT_NEAR(f.coef[0], 0.02, 1e-12);
  EXPECT_NEAR(f.coef[1], 0.01, 1e-9);
  EXPECT_NEAR(f.coef[2], 0.0, 1e-8);
  EXPECT_NEAR(f.chi2, 0.0, 1e-12);
}

TEST(Fit, ZScoresStandardNormal) {
  const std::vector<double> ts = {0.0125, 0.025, 0.05, 0.1};
  std::mt19937_64 g(42);
  std::normal_distribution<double> nd;
  const std::array<double, 3> c = {0.02, 0.01, 0.3};
  double s1 = 0, s2 = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    std::vector<mc::MCEstimate> es;
    for (double t : ts) {
      const double se = 2e-5 * std::sqrt(t);
      es.push_back({c[0] * t + c[1] * t * t / 2 + c[2] * t * t * t + se * nd(g), se, 1000});
    }
    const auto f = mc::fit_expansion_coeffs(ts, es);
    const double z = (f.coef[1] - c[1]) / f.std_error(1);
    s1 += z;
    s2 += z * z;
  }
  const double mean = s1 / reps, var = s2 / reps - mean * mean;
  EXPECT_NEAR(mean, 0.0, 4 / std::sqrt(reps));
  EXPECT_NEAR(var, 1.0, 4 * std::sqrt(2.0 / reps));
}

TEST(Fit, RejectsDegenerateInput) {
  std::vector<mc::MCEstimate> es(4, {0.01, 0.0, 10});
  EXPECT_THROW(mc::fit_expansion_coeffs({0.1, 0.2, 0.3, 0.4}, es), ParameterError);
  std::vector<mc::MCEstimate> es2(2, {0.01, 1e-3, 10});
  EXPECT_THROW(mc::fit_expansion_coeffs({0.1, 0.2}, es2), ParameterError);
}

TEST(Samples, RoundTrip) {
  const std::string path = testing::TempDir() + "jdx_roundtrip.jdxsamp";
  const std::vector<double> v = {0.0, -1.5, 3.25e-300, INFINITY, 1.0 / 3.0};
  mc::write_samples(path, v);
  EXPECT_EQ(mc::read_samples(path), v);
  std::FILE* f = std::fopen(path.c_str(), "r+b");
  ASSERT_NE(f, nullptr);
  std::fputc('X', f);
  std::fclose(f);
  EXPECT_THROW(mc::read_samples(path), Error);
  std::remove(path.c_str());
}

TEST(Calibration, TanhConverges) {
  auto s = scheme(5, 4);
  s.n_steps = 4;
  const auto m = model::make_state_dependent_tanh(0.3, {});
  const int steps = mc::calibrate_steps(m, s, 0.5, 0.8, 0.1, 100000);
  EXPECT_GE(steps, 8);
  EXPECT_LE(steps, 4096);
}
