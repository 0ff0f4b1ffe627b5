#include "jdx/presets.hpp"

#include <cmath>
#include <set>

#include "jdx/errors.hpp"
#include "jdx/pricing.hpp"

namespace jdx::model {

void TemperedStableParams::validate() const {
  if (!(c > 0.0)) throw ParameterError("tempered-stable: c must be positive");
  if (!(M > 0.0)) throw ParameterError("tempered-stable: M must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("tempered-stable: alpha must lie in (0, 1)");
  if (!(sigma > 0.0)) throw ParameterError("tempered-stable: sigma must be positive");
  if (!std::isfinite(b)) throw ParameterError("tempered-stable: b must be finite");
}

DensityFn tempered_stable_density(double c, double M, double alpha) {
  const double k = 1.0 + alpha;
  DensityFn d;
  d.f = [=](double z) {
    const double a = std::abs(z);
    return c * std::exp(-M * a) * std::pow(a, -k);
  };
  d.d1 = [=](double z) {
    const double a = std::abs(z);
    const double hv = c * std::exp(-M * a) * std::pow(a, -k);
    return (z > 0.0 ? -1.0 : 1.0) * hv * (M + k / a);
  };
  d.d2 = [=](double z) {
    const double a = std::abs(z);
    const double hv = c * std::exp(-M * a) * std::pow(a, -k);
    const double r = M + k / a;
    return hv * (r * r + k / (a * a));
  };
  return d;
}

namespace {

ScalarFn constant_fn(double v) {
  return {[v](double) { return v; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

JumpFn identity_jump() {
  JumpFn j;
  j.f = [](double, double z) { return z; };
  j.dx = [](double, double) { return 0.0; };
  j.dz = [](double, double) { return 1.0; };
  j.dzz = [](double, double) { return 0.0; };
  j.dxx = [](double, double) { return 0.0; };
  j.dxz = [](double, double) { return 0.0; };
  return j;
}

ModelDefinition base_definition(const TemperedStableParams& p) {
  p.validate();
  ModelDefinition d;
  d.drift = constant_fn(p.b);
  d.vol = constant_fn(p.sigma);
  d.jump = identity_jump();
  d.levy = tempered_stable_density(p.c, p.M, p.alpha);
  d.gamma_x_free = true;
  d.constant_coefficients = true;
  d.regularity = {0.5, 0.5, 0.5 * p.sigma};
  return d;
}

double number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ParameterError(std::string("parameter '") + key + "' must be a number");
  return j.at(key).get<double>();
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ParameterError("unknown preset parameter '" + it.key() + "'");
}

TemperedStableParams ts_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("preset parameters must be an object");
  TemperedStableParams p;
  p.c = number(j, "c", p.c);
  p.M = number(j, "M", p.M);
  p.alpha = number(j, "alpha", p.alpha);
  p.sigma = number(j, "sigma", p.sigma);
  p.b = number(j, "b", p.b);
  return p;
}

}  // namespace

ModelSpec make_pure_levy(const TemperedStableParams& p) {
  auto d = base_definition(p);
  d.name = "pure-levy-tempered-stable";
  return ModelSpec(std::move(d));
}

ModelSpec make_state_dependent_tanh(double a, const TemperedStableParams& p) {
  if (!(std::abs(a) < 1.0))
    throw ParameterError("state-dependent-tanh: |a| must be < 1 (1 - |a| bounds d gamma/d zeta from below)");
  auto d = base_definition(p);
  d.name = "state-dependent-tanh";
  d.jump.f = [a](double x, double z) { return z + a * std::sin(x) * std::tanh(z); };
  d.jump.dx = [a](double x, double z) { return a * std::cos(x) * std::tanh(z); };
  d.jump.dz = [a](double x, double z) {
    const double s = 1.0 / std::cosh(z);
    return 1.0 + a * std::sin(x) * s * s;
  };
  d.jump.dzz = [a](double x, double z) {
    const double s = 1.0 / std::cosh(z);
    return -2.0 * a * std::sin(x) * s * s * std::tanh(z);
  };
  d.jump.dxx = [a](double x, double z) { return -a * std::sin(x) * std::tanh(z); };
  d.jump.dxz = [a](double x, double z) {
    const double s = 1.0 / std::cosh(z);
    return a * std::cos(x) * s * s;
  };
  d.gamma_x_free = (a == 0.0);
  const double lower = 1.0 - std::abs(a);
  d.regularity = {0.5 * lower, 0.5 * lower, 0.5 * p.sigma};
  return ModelSpec(std::move(d));
}

ModelSpec make_exp_levy_pricing(const TemperedStableParams& p) {
  if (!(p.M > 3.0))
    throw ParameterError("exp-levy-pricing: tempering M must exceed 3 for the exponential moment condition");
  auto d = base_definition(p);
  d.name = "exp-levy-pricing";
  d.requires_exp_moment = true;
  ModelSpec provisional(d);
  const double b = pricing::martingale_drift(provisional, 0.0);
  d.drift = constant_fn(b);
  return ModelSpec(std::move(d));
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "pure-levy-tempered-stable", "state-dependent-tanh", "exp-levy-pricing"};
  return names;
}

ModelSpec make_preset(const std::string& name, const nlohmann::json& params) {
  const nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;
  if (!p.is_object()) throw ParameterError("preset parameters must be an object");
  if (name == "pure-levy-tempered-stable") {
    reject_unknown(p, {"c", "M", "alpha", "sigma", "b"});
    return make_pure_levy(ts_from_json(p));
  }
  if (name == "state-dependent-tanh") {
    reject_unknown(p, {"a", "base", "c", "M", "alpha", "sigma", "b"});
    const double a = number(p, "a", 0.3);
    nlohmann::json base = p.contains("base") ? p.at("base") : nlohmann::json::object();
    for (const char* k : {"c", "M", "alpha", "sigma", "b"})
      if (p.contains(k)) base[k] = p.at(k);
    return make_state_dependent_tanh(a, ts_from_json(base));
  }
  if (name == "exp-levy-pricing") {
    reject_unknown(p, {"c", "M", "alpha", "sigma"});
    return make_exp_levy_pricing(ts_from_json(p));
  }
  throw ParameterError("unknown preset '" + name + "'");
}

}  // namespace jdx::model
