#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "jdx/model.hpp"

namespace jdx::model {

/// A model read from JSON together with optional numeric settings stored in
/// the same file ("eps", "abs_tol", "rel_tol").
struct LoadedModel {
  ModelSpec model;
  std::optional<double> eps, abs_tol, rel_tol;
};

/// {"preset": name, "params": {...}} or
/// {"custom": {"b": expr, "sigma": expr, "gamma": expr, "h": expr}}.
LoadedModel model_from_json(const nlohmann::json& j);
LoadedModel load_model_file(const std::string& path);

nlohmann::json to_json(const ConditionReport& r);

}  // namespace jdx::model
