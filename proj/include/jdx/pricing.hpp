#pragma once

#include "jdx/model.hpp"
#include "jdx/numint.hpp"

namespace jdx::pricing {

numint::QuadratureConfig default_pricing_quadrature();

/// b(x) = -sigma^2(x)/2 - int (e^{gamma} - 1 - gamma 1_{|z|<=1}) h(z) dz,
/// making exp(X) a local martingale. Throws ParameterError when the
/// exponential tail integral diverges.
double martingale_drift(const model::ModelSpec& m, double x,
                        const numint::QuadratureConfig& cfg = default_pricing_quadrature());

/// b(x) + sigma^2/2 + int (e^{gamma} - 1 - gamma 1_{|z|<=1}) h, using the model's own b.
double drift_identity_residual(const model::ModelSpec& m, double x,
                               const numint::QuadratureConfig& cfg = default_pricing_quadrature());

struct PricingModel {
  model::ModelSpec model;  ///< drift replaced by the martingale drift
  double S0;
  double x0;               ///< log S0
};

/// Replaces the drift of `base` by the martingale drift. The exponential
/// moment condition is checked on the standard x-grid.
PricingModel make_pricing_model(const model::ModelSpec& base, double S0);

/// lim_{t->0} v_t / t = int (S0 e^{gamma(x0,z)} - K)_+ h(z) dz for K > S0.
double otm_leading_term(const PricingModel& pm, double K,
                        const numint::QuadratureConfig& cfg = default_pricing_quadrature());

/// S0 int_{K/S0}^inf A1(x0, log s) ds, with A1 tabulated on a log-s grid and
/// interpolated monotonically.
double fubini_leading_term(const PricingModel& pm, double K,
                           const numint::QuadratureConfig& cfg = default_pricing_quadrature());

}  // namespace jdx::pricing
