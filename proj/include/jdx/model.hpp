#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace jdx::model {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

enum class DerivativeMode { Analytic, FiniteDifference };

/// Scalar coefficient with optional analytic derivatives.
struct ScalarFn {
  Fn1 f, d1, d2;
};

/// Jump generator gamma(x, zeta) with optional analytic partials.
struct JumpFn {
  Fn2 f, dx, dz, dzz, dxx, dxz;
};

/// Levy density h on zeta != 0 with optional analytic derivatives.
struct DensityFn {
  Fn1 f, d1, d2;
};

/// Non-degeneracy constants used by check_conditions.
struct Regularity {
  double delta_jump = 1e-3;
  double delta_flow = 1e-3;
  double delta_vol = 1e-3;
};

struct ModelDefinition {
  std::string name = "custom";
  ScalarFn drift;
  ScalarFn vol;
  JumpFn jump;
  DensityFn levy;
  Regularity regularity;
  /// gamma does not depend on x.
  bool gamma_x_free = false;
  /// b and sigma are constants.
  bool constant_coefficients = false;
  /// The exponential-moment condition is required (pricing models).
  bool requires_exp_moment = false;
};

/// Immutable local jump-diffusion model dX = b dt + sigma dW + jumps gamma(X-, zeta)
/// driven by a Levy density h. Missing derivative accessors fall back to
/// central differences.
class ModelSpec {
 public:
  explicit ModelSpec(ModelDefinition def);

  const std::string& name() const { return def_.name; }
  const Regularity& regularity() const { return def_.regularity; }
  bool gamma_x_free() const { return def_.gamma_x_free; }
  bool constant_coefficients() const { return def_.constant_coefficients; }
  bool requires_exp_moment() const { return def_.requires_exp_moment; }
  const ModelDefinition& definition() const { return def_; }

  double b(double x) const { return def_.drift.f(x); }
  double b_x(double x) const;
  double b_xx(double x) const;
  double sigma(double x) const { return def_.vol.f(x); }
  double sigma_x(double x) const;
  double sigma_xx(double x) const;
  /// v = sigma^2 / 2 and its derivatives.
  double v(double x) const;
  double v_x(double x) const;
  double v_xx(double x) const;

  double gamma(double x, double z) const { return def_.jump.f(x, z); }
  double gamma_x(double x, double z) const;
  double gamma_z(double x, double z) const;
  double gamma_zz(double x, double z) const;
  double gamma_xx(double x, double z) const;
  double gamma_xz(double x, double z) const;

  double h(double z) const { return def_.levy.f(z); }
  double h_z(double z) const;
  double h_zz(double z) const;

  DerivativeMode drift_mode() const;
  DerivativeMode vol_mode() const;
  DerivativeMode jump_mode() const;
  DerivativeMode levy_mode() const;

  /// +1 when zeta -> gamma(x, zeta) increases, -1 when it decreases.
  int orientation() const { return orientation_; }

  /// Copy of this model with the drift replaced.
  ModelSpec with_drift(ScalarFn drift, bool constant) const;

 private:
  ModelDefinition def_;
  int orientation_ = 1;
};

inline constexpr double kTolRoot = 1e-12;

/// zeta with gamma(x, zeta) = y. Throws RangeError when y is not attained.
double gamma_inverse(const ModelSpec& m, double x, double y, double tol = kTolRoot);
std::optional<double> try_gamma_inverse(const ModelSpec& m, double x, double y,
                                        double tol = kTolRoot);

/// z with z + gamma(z, zeta) = u.
double bar_gamma(const ModelSpec& m, double u, double zeta, double tol = kTolRoot);

/// g(x; y) = h(gamma^{-1}(x,y)) / |d_zeta gamma|, zero outside the range.
double process_levy_density(const ModelSpec& m, double x, double y);

/// g together with its first partials, by the chain rule through gamma^{-1}.
struct LevyDensityJet {
  double g = 0.0, g_x = 0.0, g_y = 0.0;
  double zeta = 0.0;  ///< gamma^{-1}(x, y) when in range
  bool in_range = false;
};
LevyDensityJet process_levy_density_jet(const ModelSpec& m, double x, double y);

// ---- condition checks -----------------------------------------------------

struct ValidationGrid {
  std::vector<double> x;
  std::vector<double> zeta;
  /// 41 points on [-2, 2]; 80 log-spaced |zeta| per sign on [1e-4, 10].
  static ValidationGrid standard();
  static ValidationGrid make(double x_lo, double x_hi, int nx, double z_lo,
                             double z_hi, int nz_per_sign);
};

struct ConditionResult {
  std::string id;
  std::string description;
  bool pass = false;
  bool required = true;
  double worst_value = 0.0;
  double witness_x = 0.0;
  double witness_zeta = 0.0;
};

struct ConditionReport {
  std::vector<ConditionResult> conditions;
  bool all_required_pass() const;
  const ConditionResult& at(const std::string& id) const;
};

ConditionReport check_conditions(const ModelSpec& m,
                                 const ValidationGrid& grid = ValidationGrid::standard(),
                                 std::optional<Regularity> thresholds = std::nullopt);

}  // namespace jdx::model
