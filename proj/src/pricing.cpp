#include "jdx/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "jdx/errors.hpp"
#include "jdx/expansion.hpp"
#include "jdx/levy.hpp"

namespace jdx::pricing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// int (e^{gamma} - 1 - gamma 1_{|z|<=1}) h(z) dz.
double jump_exponential_compensator(const model::ModelSpec& m, double x,
                                    const numint::QuadratureConfig& cfg) {
  // |z| <= 1 in compensated form: (e^g - 1 - g) = g^2 int_0^1 e^{beta g}(1-beta) dbeta
  numint::Integrand psi = [&](double z) {
    const double g = m.gamma(x, z);
    if (std::abs(g) > 1.0) return (std::expm1(g) - g) / (z * z);
    const double r = g / z;
    return r * r * numint::GaussLegendre16::integrate01(
                       [&](double b) { return std::exp(b * g) * (1.0 - b); });
  };
  numint::Integrand h = [&](double z) { return m.h(z); };
  const auto near = numint::integrate_compensated(psi, h, 1.0, cfg);
  numint::require_converged(near, "martingale drift (|z| <= 1)");

  numint::Integrand far_f = [&](double z) {
    const double hv = m.h(z);
    if (hv == 0.0) return 0.0;
    return std::expm1(m.gamma(x, z)) * hv;
  };
  numint::QuadratureConfig c = cfg;
  c.max_evaluations = std::min<std::size_t>(cfg.max_evaluations, 200'000);
  const auto far = numint::integrate_adaptive(far_f, 1.0, kInf, c) +
                   numint::integrate_adaptive(far_f, -kInf, -1.0, c);
  if (!far.converged || !std::isfinite(far.value) || !std::isfinite(far_f(200.0)))
    throw ParameterError(
        "martingale drift: int_{|z|>1} (e^gamma - 1) h diverges; the exponential moment "
        "condition fails");
  return near.value + far.value;
}

}  // namespace

numint::QuadratureConfig default_pricing_quadrature() {
  numint::QuadratureConfig c;
  c.abs_tol = 1e-13;
  c.rel_tol = 1e-11;
  return c;
}

double martingale_drift(const model::ModelSpec& m, double x, const numint::QuadratureConfig& cfg) {
  const double s = m.sigma(x);
  return -0.5 * s * s - jump_exponential_compensator(m, x, cfg);
}

double drift_identity_residual(const model::ModelSpec& m, double x,
                               const numint::QuadratureConfig& cfg) {
  const double s = m.sigma(x);
  return m.b(x) + 0.5 * s * s + jump_exponential_compensator(m, x, cfg);
}

PricingModel make_pricing_model(const model::ModelSpec& base, double S0) {
  if (!(S0 > 0.0) || !std::isfinite(S0)) throw ParameterError("spot S0 must be positive");
  const auto grid = model::ValidationGrid::standard();
  for (double x : grid.x) martingale_drift(base, x);  // throws on (C5) failure
  model::ScalarFn drift;
  const bool constant = base.gamma_x_free() && base.constant_coefficients();
  if (constant) {
    const double b = martingale_drift(base, 0.0);
    drift.f = [b](double) { return b; };
    drift.d1 = [](double) { return 0.0; };
    drift.d2 = [](double) { return 0.0; };
  } else {
    auto keep = std::make_shared<const model::ModelSpec>(base);
    drift.f = [keep](double x) { return martingale_drift(*keep, x); };
  }
  auto def = base.definition();
  def.drift = drift;
  def.requires_exp_moment = true;
  def.constant_coefficients = constant;
  return {model::ModelSpec(def), S0, std::log(S0)};
}

double otm_leading_term(const PricingModel& pm, double K, const numint::QuadratureConfig& cfg) {
  if (!(K > pm.S0)) throw ParameterError("otm_leading_term: strike must exceed spot (OTM only)");
  const auto& m = pm.model;
  const double x0 = pm.x0, S0 = pm.S0;
  model::Fn1 payoff = [&](double z) {
    return std::max(S0 * std::exp(m.gamma(x0, z)) - K, 0.0);
  };
  const auto r = levy::integrate_levy_tail(payoff, m, levy::GammaRegion{x0, std::log(K / S0)}, cfg);
  numint::require_converged(r, "OTM leading term");
  return r.value;
}

namespace {

/// Cubic Hermite through (y_i, f_i) with slopes d_i, limited (Fritsch-Carlson)
/// so that monotone data give a monotone interpolant.
struct MonotoneHermite {
  std::vector<double> y, f, d;

  void limit() {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double sec = (f[i + 1] - f[i]) / (y[i + 1] - y[i]);
      if (sec == 0.0) {
        d[i] = d[i + 1] = 0.0;
        continue;
      }
      if (d[i] * sec < 0.0) d[i] = 0.0;
      if (d[i + 1] * sec < 0.0) d[i + 1] = 0.0;
      const double a = d[i] / sec, b = d[i + 1] / sec;
      const double r = a * a + b * b;
      if (r > 9.0) {
        const double t = 3.0 / std::sqrt(r);
        d[i] = t * a * sec;
        d[i + 1] = t * b * sec;
      }
    }
  }

  double operator()(double q) const {
    auto it = std::upper_bound(y.begin(), y.end(), q);
    std::size_t i = it == y.begin() ? 0 : static_cast<std::size_t>(it - y.begin()) - 1;
    i = std::min(i, y.size() - 2);
    const double hh = y[i + 1] - y[i];
    const double t = (q - y[i]) / hh;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f[i] + (t3 - 2 * t2 + t) * hh * d[i] +
           (-2 * t3 + 3 * t2) * f[i + 1] + (t3 - t2) * hh * d[i + 1];
  }
};

}  // namespace

double fubini_leading_term(const PricingModel& pm, double K, const numint::QuadratureConfig& cfg) {
  if (!(K > pm.S0)) throw ParameterError("fubini_leading_term: strike must exceed spot (OTM only)");
  const auto& m = pm.model;
  const double x0 = pm.x0, S0 = pm.S0;
  const double y0 = std::log(K / S0);
  expansion::ExpansionConfig ec;
  ec.quad = cfg;
  auto A1 = [&](double y) {
    model::Fn1 one = [](double) { return 1.0; };
    const auto r = levy::integrate_levy_tail(one, m, levy::GammaRegion{x0, y}, cfg);
    numint::require_converged(r, "A1 for the Fubini check");
    return r.value;
  };
  const double top0 = A1(y0) * std::exp(y0);
  if (top0 == 0.0) return 0.0;
  // upper end: where A1(y) e^y is negligible (or the range of gamma ends)
  double y1 = y0 + 1.0;
  while (A1(y1) * std::exp(y1) > 1e-16 * top0 && y1 < y0 + 1e3) y1 = y0 + 2.0 * (y1 - y0);

  // log A1 on a uniform grid with exact slopes -g/A1
  constexpr int kNodes = 2049;
  MonotoneHermite interp;
  for (int i = 0; i < kNodes; ++i) {
    const double y = y0 + (y1 - y0) * i / (kNodes - 1);
    const double a = A1(y);
    if (!(a > 0.0)) break;
    interp.y.push_back(y);
    interp.f.push_back(std::log(a));
    interp.d.push_back(-model::process_levy_density(m, x0, y) / a);
  }
  if (interp.y.size() < 2) return 0.0;
  interp.limit();
  numint::Integrand f = [&](double y) { return std::exp(interp(y) + y); };
  const auto r = numint::integrate_adaptive(f, interp.y.front(), interp.y.back(), cfg);
  numint::require_converged(r, "Fubini integral");
  return S0 * r.value;
}

}  // namespace jdx::pricing
