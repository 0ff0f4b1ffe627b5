#include "jdx/truncation.hpp"

#include <cmath>
#include <memory>

#include "jdx/errors.hpp"

namespace jdx::truncation {

namespace {

double e_fn(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = e_fn(s), b = e_fn(1.0 - s);
  return a / (a + b);
}

double smooth_step_d1(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double p = smooth_step(s);
  const double q = 1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s));
  return p * (1.0 - p) * q;
}

double smooth_step_d2(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double p = smooth_step(s);
  const double q = 1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s));
  const double dq = -2.0 / (s * s * s) + 2.0 / ((1.0 - s) * (1.0 - s) * (1.0 - s));
  const double d1 = p * (1.0 - p) * q;
  return (1.0 - 2.0 * p) * d1 * q + p * (1.0 - p) * dq;
}

numint::QuadratureConfig default_scheme_quadrature() {
  numint::QuadratureConfig c;
  c.abs_tol = 1e-14;
  c.rel_tol = 1e-12;
  return c;
}

TruncationScheme::TruncationScheme(model::ModelSpec m, double eps,
                                   numint::QuadratureConfig cfg)
    : model_(std::move(m)), eps_(eps), cfg_(cfg) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ParameterError("truncation level eps must be positive and finite");
  cfg_.validate();
  auto f = [this](double z) { return h_eps(z); };
  const double a = 0.5 * eps_;
  const auto pos = numint::integrate_adaptive(f, a, INFINITY, cfg_);
  const auto neg = numint::integrate_adaptive(f, -INFINITY, -a, cfg_);
  numint::require_converged(pos + neg, "lambda_eps");
  lambda_pos_ = pos.value;
  lambda_ = pos.value + neg.value;
  lambda_err_ = pos.abs_error + neg.abs_error;
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_))
    throw NumericError("lambda_eps is negative or not finite");
}

double TruncationScheme::phi(double z) const {
  return smooth_step((std::abs(z) - 0.5 * eps_) / (0.5 * eps_));
}

double TruncationScheme::phi_d1(double z) const {
  const double s = (std::abs(z) - 0.5 * eps_) / (0.5 * eps_);
  return (z >= 0.0 ? 1.0 : -1.0) * smooth_step_d1(s) * 2.0 / eps_;
}

double TruncationScheme::phi_d2(double z) const {
  const double s = (std::abs(z) - 0.5 * eps_) / (0.5 * eps_);
  return smooth_step_d2(s) * 4.0 / (eps_ * eps_);
}

double TruncationScheme::h_eps(double z) const {
  const double p = phi(z);
  if (p == 0.0) return 0.0;
  return p * model_.h(z);
}

double TruncationScheme::hbar_eps(double z) const {
  const double p = phi(z);
  if (p == 1.0) return 0.0;
  return (1.0 - p) * model_.h(z);
}

TruncationScheme make_truncation(const model::ModelSpec& m, double eps,
                                 numint::QuadratureConfig cfg) {
  return TruncationScheme(m, eps, cfg);
}

SplitDensities split_densities(const TruncationScheme& s) {
  // the returned closures share a copy of the scheme
  auto sp = std::make_shared<const TruncationScheme>(s);
  return {[sp](double z) { return sp->h_eps(z); },
          [sp](double z) { return sp->hbar_eps(z); },
          [sp](double z) { return sp->breve_h(z); }};
}

double transformed_jump_density(const TruncationScheme& s, double z, double zeta) {
  const auto& m = s.model();
  const auto r = model::try_gamma_inverse(m, z, zeta);
  if (!r) return 0.0;
  const double bh = s.breve_h(*r);
  if (bh == 0.0) return 0.0;
  return bh / std::abs(m.gamma_z(z, *r));
}

double shifted_jump_density(const TruncationScheme& s, double z, double zeta) {
  return transformed_jump_density(s, z, zeta - z);
}

namespace {

double drift_correction(const TruncationScheme& s, double x, bool derivative) {
  const double a = 0.5 * s.eps();
  if (a >= 1.0) return 0.0;
  const auto& m = s.model();
  auto f = [&](double z) {
    const double he = s.h_eps(z);
    if (he == 0.0) return 0.0;
    return (derivative ? m.gamma_x(x, z) : m.gamma(x, z)) * he;
  };
  const auto r = numint::integrate_adaptive(f, a, 1.0, s.quadrature()) +
                 numint::integrate_adaptive(f, -1.0, -a, s.quadrature());
  numint::require_converged(r, "compensated drift");
  return r.value;
}

}  // namespace

double compensated_drift(const TruncationScheme& s, double x) {
  return s.model().b(x) - drift_correction(s, x, false);
}

double compensated_drift_x(const TruncationScheme& s, double x) {
  double corr = 0.0;
  if (!s.model().gamma_x_free()) corr = drift_correction(s, x, true);
  return s.model().b_x(x) - corr;
}

}  // namespace jdx::truncation
