#include "jdx/model_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "jdx/errors.hpp"
#include "jdx/expression.hpp"
#include "jdx/presets.hpp"

namespace jdx::model {

namespace {

std::optional<double> optional_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  if (!j.at(key).is_number()) throw ParseError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

expr::Expression expression(const nlohmann::json& c, const char* key) {
  if (!c.contains(key) || !c.at(key).is_string())
    throw ParseError(std::string("custom model needs a string expression '") + key + "'");
  return expr::Expression::parse(c.at(key).get<std::string>());
}

ModelSpec custom_model(const nlohmann::json& c) {
  if (!c.is_object()) throw ParseError("'custom' must be an object");
  for (auto it = c.begin(); it != c.end(); ++it) {
    static const std::set<std::string> allowed = {"b", "sigma", "gamma", "h", "name",
                                                  "regularity", "requires_exp_moment"};
    if (!allowed.count(it.key())) throw ParseError("unknown custom-model key '" + it.key() + "'");
  }
  const auto b = expression(c, "b");
  const auto sigma = expression(c, "sigma");
  const auto gamma = expression(c, "gamma");
  const auto h = expression(c, "h");
  if (b.uses_zeta() || sigma.uses_zeta()) throw ParseError("b and sigma may depend on x only");
  if (h.uses_x()) throw ParseError("h may depend on zeta only");

  ModelDefinition d;
  d.name = c.value("name", std::string("custom"));
  d.drift.f = [b](double x) { return b(x); };
  d.vol.f = [sigma](double x) { return sigma(x); };
  d.jump.f = [gamma](double x, double z) { return gamma(x, z); };
  d.levy.f = [h](double z) { return h(0.0, z); };
  d.gamma_x_free = !gamma.uses_x();
  d.constant_coefficients = !b.uses_x() && !sigma.uses_x();
  d.requires_exp_moment = c.value("requires_exp_moment", false);
  if (c.contains("regularity")) {
    const auto& r = c.at("regularity");
    d.regularity.delta_jump = r.value("delta_jump", d.regularity.delta_jump);
    d.regularity.delta_flow = r.value("delta_flow", d.regularity.delta_flow);
    d.regularity.delta_vol = r.value("delta_vol", d.regularity.delta_vol);
  }
  return ModelSpec(std::move(d));
}

}  // namespace

LoadedModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("model file must contain a JSON object");
  const bool has_preset = j.contains("preset"), has_custom = j.contains("custom");
  if (has_preset == has_custom)
    throw ParseError("model file needs exactly one of 'preset' or 'custom'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> allowed = {"preset", "params", "custom",
                                                  "eps",    "abs_tol", "rel_tol"};
    if (!allowed.count(it.key())) throw ParseError("unknown model-file key '" + it.key() + "'");
  }
  std::optional<ModelSpec> m;
  if (has_preset) {
    if (!j.at("preset").is_string()) throw ParseError("'preset' must be a string");
    m = make_preset(j.at("preset").get<std::string>(),
                    j.contains("params") ? j.at("params") : nlohmann::json::object());
  } else {
    m = custom_model(j.at("custom"));
  }
  return {*m, optional_number(j, "eps"), optional_number(j, "abs_tol"),
          optional_number(j, "rel_tol")};
}

LoadedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
  return model_from_json(j);
}

nlohmann::json to_json(const ConditionReport& r) {
  nlohmann::json out;
  out["pass"] = r.all_required_pass();
  nlohmann::json conds = nlohmann::json::object();
  for (const auto& c : r.conditions) {
    nlohmann::json e;
    e["pass"] = c.pass;
    e["required"] = c.required;
    if (std::isfinite(c.worst_value))
      e["worst_value"] = c.worst_value;
    else
      e["worst_value"] = std::isnan(c.worst_value) ? "nan" : (c.worst_value > 0 ? "inf" : "-inf");
    e["witness"] = {c.witness_x, c.witness_zeta};
    e["description"] = c.description;
    conds[c.id] = e;
  }
  out["conditions"] = conds;
  return out;
}

}  // namespace jdx::model
