#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jdx/model.hpp"

namespace jdx::model {

/// h(zeta) = c exp(-M |zeta|) |zeta|^{-1-alpha} plus constant b and sigma.
struct TemperedStableParams {
  double c = 1.0;
  double M = 5.0;
  double alpha = 0.5;
  double sigma = 0.2;
  double b = 0.05;

  void validate() const;
};

/// Tempered-stable Levy density with analytic derivatives.
DensityFn tempered_stable_density(double c, double M, double alpha);

/// gamma = zeta, constant b and sigma.
ModelSpec make_pure_levy(const TemperedStableParams& p);

/// gamma = zeta + a sin(x) tanh(zeta); requires |a| < 1.
ModelSpec make_state_dependent_tanh(double a, const TemperedStableParams& p);

/// gamma = zeta with the martingale drift; requires M > 3. p.b is ignored.
ModelSpec make_exp_levy_pricing(const TemperedStableParams& p);

const std::vector<std::string>& preset_names();

/// Builds a preset from a JSON parameter record. Unknown keys are rejected.
ModelSpec make_preset(const std::string& name, const nlohmann::json& params = {});

}  // namespace jdx::model
