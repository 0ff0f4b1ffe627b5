#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jdx/expansion.hpp"
#include "jdx/montecarlo.hpp"

namespace jdx::validation {

struct ValidationOptions {
  double x = 0.0, y = 1.0;
  std::vector<double> t_grid{0.0125, 0.025, 0.05, 0.1};
  std::uint64_t n_samples = 1'000'000;
  /// expansion eps; <= 0 picks the largest in-regime eps from 0.5, 0.25, ...
  double eps = 0.0;
  mc::SimScheme sim{};
  /// run calibrate_steps at the largest t before sampling
  bool calibrate_steps = true;
  expansion::ExpansionConfig expansion{};
  /// when set, each t's samples go to "<prefix>.<index>.jdxsamp"
  std::string dump_prefix;
};

struct ValidationRow {
  double t = 0;
  mc::MCEstimate mc;
  double expansion = 0;      ///< t A1 + t^2/2 A2
  double residual = 0;       ///< MC - expansion
  double residual_over_t3 = 0;
  double deviation_over_se = 0;  ///< (residual - C t^3) / std error
};

struct ValidationResult {
  expansion::TailCoefficients analytic;
  std::vector<ValidationRow> rows;
  /// weighted least-squares t^3 constant of the residuals
  double C = 0, C_std_error = 0;
  mc::ExpansionFit fit;
  int n_steps_used = 0;
  double sim_eps = 0;
};

/// MC tail estimates on a t-grid against the second-order tail expansion.
/// Paths share random numbers across t.
ValidationResult run_validation(const model::ModelSpec& m, const ValidationOptions& opt);

/// Largest eps in 0.5, 0.25, ... (down to ~1e-3) that is in regime at (x, y);
/// 0.5 when none is.
double auto_eps(const model::ModelSpec& m, double x, double y);

}  // namespace jdx::validation
