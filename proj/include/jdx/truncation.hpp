#pragma once

#include "jdx/model.hpp"
#include "jdx/numint.hpp"

namespace jdx::truncation {

/// Smooth step psi(s) = e(s) / (e(s) + e(1-s)), e(s) = exp(-1/s) for s > 0.
double smooth_step(double s);
double smooth_step_d1(double s);
double smooth_step_d2(double s);

/// Quadrature settings for the scheme's own integrals (lambda_eps, b_eps).
numint::QuadratureConfig default_scheme_quadrature();

/// epsilon-decomposition of a model's driving Levy density into big jumps
/// (h_eps = phi_eps h, compound Poisson with intensity lambda_eps) and small
/// jumps (hbar_eps = (1 - phi_eps) h).
class TruncationScheme {
 public:
  TruncationScheme(model::ModelSpec m, double eps,
                   numint::QuadratureConfig cfg = default_scheme_quadrature());

  const model::ModelSpec& model() const { return model_; }
  double eps() const { return eps_; }
  double lambda() const { return lambda_; }
  double lambda_error() const { return lambda_err_; }
  const numint::QuadratureConfig& quadrature() const { return cfg_; }

  /// phi_eps(z) = psi((|z| - eps/2) / (eps/2)).
  double phi(double z) const;
  double phi_d1(double z) const;
  double phi_d2(double z) const;

  double h_eps(double z) const;
  double hbar_eps(double z) const;
  /// Zero when lambda_eps = 0 (no big jumps).
  double breve_h(double z) const { return lambda_ > 0.0 ? h_eps(z) / lambda_ : 0.0; }

  /// lambda_eps restricted to one sign of zeta.
  double lambda_positive() const { return lambda_pos_; }
  double lambda_negative() const { return lambda_ - lambda_pos_; }

 private:
  model::ModelSpec model_;
  double eps_;
  numint::QuadratureConfig cfg_;
  double lambda_ = 0.0, lambda_pos_ = 0.0, lambda_err_ = 0.0;
};

TruncationScheme make_truncation(const model::ModelSpec& m, double eps,
                                 numint::QuadratureConfig cfg = default_scheme_quadrature());

struct SplitDensities {
  model::Fn1 h_eps, hbar_eps, breve_h;
};
SplitDensities split_densities(const TruncationScheme& s);

/// Gamma_eps(zeta; z): density of gamma(z, J) with J ~ breve_h. Zero outside
/// the range of gamma(z, .).
double transformed_jump_density(const TruncationScheme& s, double z, double zeta);
/// Shifted density of z + gamma(z, J).
double shifted_jump_density(const TruncationScheme& s, double z, double zeta);

/// b_eps(x) = b(x) - int_{|zeta|<=1} gamma(x,zeta) h_eps(zeta) dzeta.
double compensated_drift(const TruncationScheme& s, double x);
/// d/dx b_eps(x).
double compensated_drift_x(const TruncationScheme& s, double x);

}  // namespace jdx::truncation
