#include <gtest/gtest.h>

#include <cmath>

#include "jdx/errors.hpp"
#include "jdx/expression.hpp"
#include "jdx/model.hpp"
#include "jdx/model_io.hpp"
#include "jdx/presets.hpp"
#include "oracles.hpp"

using namespace jdx;
using namespace jdx::model;

namespace {

ModelSpec pure() { return make_pure_levy({}); }
ModelSpec tanh3() { return make_state_dependent_tanh(0.3, {}); }

ModelSpec from_json(const char* text) { return model_from_json(nlohmann::json::parse(text)).model; }

}  // namespace

TEST(Conditions, PurePresetPassesEverything) {
  const auto r = check_conditions(pure(), ValidationGrid::make(-2, 2, 41, 1e-3, 5, 60));
  for (const auto& c : r.conditions) EXPECT_TRUE(c.pass) << c.id << " " << c.description;
  EXPECT_TRUE(r.all_required_pass());
}

TEST(Conditions, VolatilityCrossingZeroFails) {
  const auto m = from_json(R"j({"custom": {"b": "0", "sigma": "x",
      "gamma": "zeta", "h": "exp(-5*abs(zeta))*abs(zeta)^(-1.5)"}})j");
  const auto r = check_conditions(m);
  const auto& c = r.at("C4ii");
  EXPECT_FALSE(c.pass);
  EXPECT_LT(m.sigma(c.witness_x), m.regularity().delta_vol);
  EXPECT_FALSE(r.all_required_pass());
}

TEST(Conditions, VanishingVolatilityWitnessAtZero) {
  const auto m = from_json(R"j({"custom": {"b": "0", "sigma": "abs(x)",
      "gamma": "zeta", "h": "exp(-5*abs(zeta))*abs(zeta)^(-1.5)"}})j");
  const auto& c = check_conditions(m).at("C4ii");
  EXPECT_FALSE(c.pass);
  EXPECT_DOUBLE_EQ(c.witness_x, 0.0);
  EXPECT_DOUBLE_EQ(c.worst_value, 0.0);
}

TEST(Conditions, TanhJumpDerivativeBoundedBelow) {
  const auto r = check_conditions(tanh3());
  const auto& c = r.at("C2b");
  EXPECT_TRUE(c.pass);
  EXPECT_GE(c.worst_value, 0.7 - 1e-12);
}

TEST(GammaInverse, Identity) { EXPECT_DOUBLE_EQ(gamma_inverse(pure(), 0.3, 0.7), 0.7); }

TEST(GammaInverse, Linear) {
  const auto m = from_json(R"j({"custom": {"b": "0", "sigma": "0.2", "gamma": "2*zeta",
      "h": "exp(-5*abs(zeta))*abs(zeta)^(-1.5)"}})j");
  EXPECT_NEAR(gamma_inverse(m, -1.3, 1.0), 0.5, 1e-12);
}

TEST(GammaInverse, TanhAgainstBisection) {
  const double x = M_PI / 2, y = 0.5;
  const double ref = oracle::bisect([](double z) { return z + 0.3 * std::tanh(z) - 0.5; }, 0.0, 0.5);
  const double z = gamma_inverse(tanh3(), x, y);
  EXPECT_NEAR(z, ref, 1e-11);
  EXPECT_LT(std::abs(tanh3().gamma(x, z) - y), 1e-12);
}

TEST(GammaInverse, OutOfRangeThrows) {
  const auto m = from_json(R"j({"custom": {"b": "0", "sigma": "0.2", "gamma": "tanh(zeta)",
      "h": "exp(-5*abs(zeta))*abs(zeta)^(-1.5)"}})j");
  EXPECT_THROW(gamma_inverse(m, 0.0, 1.5), RangeError);
  EXPECT_FALSE(try_gamma_inverse(m, 0.0, 1.5).has_value());
  EXPECT_TRUE(try_gamma_inverse(m, 0.0, 0.5).has_value());
}

TEST(BarGamma, TanhAgainstBisection) {
  const double u = 1.2, zeta = 0.4;
  const double ref = oracle::bisect(
      [&](double z) { return z + 0.4 + 0.3 * std::sin(z) * std::tanh(0.4) - 1.2; }, -2.0, 2.0);
  const double z = bar_gamma(tanh3(), u, zeta);
  EXPECT_NEAR(z, ref, 1e-11);
  EXPECT_LT(std::abs(z + tanh3().gamma(z, zeta) - u), 1e-12);
}

TEST(ProcessLevyDensity, TanhAtZeroIsH) {
  const auto m = tanh3();
  EXPECT_NEAR(process_levy_density(m, 0.0, 0.5), m.h(0.5), 1e-13);
}

TEST(ProcessLevyDensity, JetMatchesCentralDifferences) {
  const auto m = tanh3();
  const double x = 0.7, y = 0.9, d = 1e-5;
  const auto j = process_levy_density_jet(m, x, y);
  ASSERT_TRUE(j.in_range);
  EXPECT_NEAR(j.g, process_levy_density(m, x, y), 1e-14);
  const double gx = (process_levy_density(m, x + d, y) - process_levy_density(m, x - d, y)) / (2 * d);
  const double gy = (process_levy_density(m, x, y + d) - process_levy_density(m, x, y - d)) / (2 * d);
  EXPECT_NEAR(j.g_x, gx, 1e-6 * std::abs(gx) + 1e-9);
  EXPECT_NEAR(j.g_y, gy, 1e-6 * std::abs(gy) + 1e-9);
}

TEST(ModelSpec, FiniteDifferenceFallbackMatchesAnalytic) {
  const auto a = pure();
  ModelDefinition d = a.definition();
  d.levy.d1 = nullptr;
  d.levy.d2 = nullptr;
  const ModelSpec f(d);
  EXPECT_EQ(f.levy_mode(), DerivativeMode::FiniteDifference);
  EXPECT_EQ(a.levy_mode(), DerivativeMode::Analytic);
  for (double z : {0.3, 1.0, -2.0}) {
    EXPECT_NEAR(f.h_z(z), a.h_z(z), 1e-6 * std::abs(a.h_z(z)));
    EXPECT_NEAR(f.h_zz(z), a.h_zz(z), 1e-4 * std::abs(a.h_zz(z)));
  }
}

TEST(Presets, PureLevyShape) {
  const auto m = make_preset("pure-levy-tempered-stable",
                             {{"c", 1}, {"M", 5}, {"alpha", 0.5}, {"sigma", 0.2}, {"b", 0.05}});
  const oracle::TemperedStable ts;
  for (double z : {-1.5, -0.1, 0.01, 0.8}) {
    EXPECT_NEAR(m.h(z), ts.h(z), 1e-12 * ts.h(z));
    EXPECT_DOUBLE_EQ(m.gamma(0.4, z), z);
  }
  EXPECT_DOUBLE_EQ(m.sigma(3.0), 0.2);
  EXPECT_DOUBLE_EQ(m.b(-1.0), 0.05);
}

TEST(Presets, TanhShape) {
  const auto m = make_preset("state-dependent-tanh", {{"a", 0.3}});
  EXPECT_NEAR(m.gamma(1.1, 0.7), 0.7 + 0.3 * std::sin(1.1) * std::tanh(0.7), 1e-15);
}

TEST(Presets, InvalidParameters) {
  EXPECT_THROW(make_preset("state-dependent-tanh", {{"a", 1.5}}), ParameterError);
  EXPECT_THROW(make_preset("pure-levy-tempered-stable", {{"alpha", 2.5}}), ParameterError);
  EXPECT_THROW(make_preset("pure-levy-tempered-stable", {{"bogus", 1}}), Error);
  EXPECT_THROW(make_preset("no-such-preset"), Error);
}

TEST(Expression, Grammar) {
  const auto e = expr::Expression::parse("-2^2 + 3*x*zeta - exp(0) + sqrt(4)/abs(-2)");
  EXPECT_DOUBLE_EQ(e(1.0, 2.0), -4 + 6 - 1 + 1);
  EXPECT_TRUE(e.uses_x());
  EXPECT_TRUE(e.uses_zeta());
  EXPECT_DOUBLE_EQ(expr::Expression::parse("2^3^2")(0), 512.0);
  EXPECT_NEAR(expr::Expression::parse("sin(pi/2) + cos(0) + log(exp(2)) + tanh(0)")(0), 4.0, 1e-15);
  EXPECT_THROW(expr::Expression::parse("1 +"), ParseError);
  EXPECT_THROW(expr::Expression::parse("foo(1)"), ParseError);
  EXPECT_THROW(expr::Expression::parse("(1"), ParseError);
}

TEST(ModelIo, PresetWithSettings) {
  const auto lm = model_from_json(nlohmann::json::parse(
      R"j({"preset": "state-dependent-tanh", "params": {"a": 0.3}, "eps": 0.25, "rel_tol": 1e-9})j"));
  EXPECT_EQ(*lm.eps, 0.25);
  EXPECT_EQ(*lm.rel_tol, 1e-9);
  EXPECT_FALSE(lm.abs_tol.has_value());
}

TEST(ModelIo, RejectsMalformedRecords) {
  using nlohmann::json;
  EXPECT_THROW(model_from_json(json::parse(R"j({})j")), ParseError);
  EXPECT_THROW(model_from_json(json::parse(R"j({"preset": "pure-levy-tempered-stable", "extra": 1})j")),
               ParseError);
  EXPECT_THROW(model_from_json(json::parse(
                   R"j({"custom": {"b": "0", "sigma": "1", "gamma": "zeta", "h": "x*zeta"}})j")),
               ParseError);
  EXPECT_THROW(load_model_file("/nonexistent/model.json"), Error);
}

TEST(ModelIo, ConditionReportJson) {
  const auto j = to_json(check_conditions(pure()));
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_TRUE(j["conditions"].contains("C4ii"));
  EXPECT_TRUE(j["conditions"]["C4ii"]["pass"].get<bool>());
}
