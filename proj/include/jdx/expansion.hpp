#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jdx/model.hpp"
#include "jdx/numint.hpp"
#include "jdx/truncation.hpp"

namespace jdx::expansion {

enum class DerivativePolicy {
  /// chain rule through gamma^{-1} with the model's derivative accessors
  Analytic,
  /// Richardson-refined central differences of g and of x -> A1(x; y)
  Numeric,
};

struct ExpansionConfig {
  numint::QuadratureConfig quad = default_quadrature();
  /// Below this |zeta| the compensated brackets switch to the Taylor form.
  double zeta_switch = 1e-3;
  DerivativePolicy policy = DerivativePolicy::Analytic;
  double fd_rel_step = 1e-4;
  /// Inner split of the compensated integrals, as a fraction of eps.
  double compensated_split = 0.5;

  static numint::QuadratureConfig default_quadrature();
};

struct TailCoefficients {
  double x = 0, y = 0, eps = 0;
  double A1 = 0;
  double D = 0, J1 = 0, J2 = 0;
  double A2 = 0;  ///< D + J1 + J2
  double error_budget = 0;
  std::vector<std::string> flags;
};

struct DensityCoefficients {
  double x = 0, y = 0, eps = 0;
  double a1 = 0;
  double eth = 0, Im1 = 0, Im2 = 0;
  double a2 = 0;  ///< eth + Im1 + Im2
  double error_budget = 0;
  std::vector<std::string> flags;
};

/// A1(x; y) = nu{zeta : gamma(x, zeta) >= y}. Also integrates g(x; .) over
/// [y, inf) and throws ConsistencyError when the two disagree.
double tail_A1(const model::ModelSpec& m, double x, double y, const ExpansionConfig& cfg = {});

/// Second-order tail coefficient A2 = D + J1 + J2.
TailCoefficients tail_A2(const truncation::TruncationScheme& s, double x, double y,
                         const ExpansionConfig& cfg = {});

struct TailExpansion {
  double t = 0;
  double value = 0;  ///< t A1 + t^2/2 A2
  TailCoefficients coefficients;
};
TailExpansion tail_expansion(const truncation::TruncationScheme& s, double x, double y, double t,
                             const ExpansionConfig& cfg = {});
double tail_expansion_value(const TailCoefficients& c, double t);

/// a1(x; y) = g(x; y).
double density_a1(const model::ModelSpec& m, double x, double y);
/// a2 = eth + Im1 + Im2 (a1 filled in as well).
DensityCoefficients density_a2(const truncation::TruncationScheme& s, double x, double y,
                               const ExpansionConfig& cfg = {});

/// A C^2 function with optional derivative accessors (central differences
/// are used for the missing ones).
struct SmoothFunction {
  std::function<double(double)> f, d1, d2;

  double operator()(double y) const { return f(y); }
  double first(double y) const;
  double second(double y) const;
};

struct GeneratorContext {
  truncation::TruncationScheme scheme;
  ExpansionConfig cfg{};
  /// Chebyshev nodes for y -> L f(y) when L is applied twice
  int nested_nodes = 48;
};

/// L_eps f(y) = v(y) f''(y) + b_eps(y) f'(y)
///            + int int_0^1 f''(y + beta gamma) (1-beta) dbeta gamma^2 hbar_eps.
double generator_apply(const GeneratorContext& ctx, const SmoothFunction& f, double y);

/// sum_{k <= order} t^k / k! L_eps^k f(x), order in {1, 2}.
double dynkin_expand(const GeneratorContext& ctx, const SmoothFunction& f, double x, double t,
                     int order);

struct EpsilonInvarianceEntry {
  double eps = 0;
  bool in_regime = false;
  bool ok = false;       ///< the coefficients could be computed
  std::string error;     ///< set when !ok
  TailCoefficients tail;
  DensityCoefficients density;
};

struct EpsilonInvarianceReport {
  double x = 0, y = 0;
  std::vector<EpsilonInvarianceEntry> entries;
  double A2_spread = 0;  ///< max - min over the computed entries
  double a2_spread = 0;
  bool out_of_regime = false;
};

/// Largest |gamma(x', +-eps)| over x' in [x - y, x + y].
double small_jump_reach(const model::ModelSpec& m, double x, double y, double eps);

/// eps < |gamma^{-1}(x, y)| and two jumps below eps cannot reach the level y.
/// Outside this regime the eps-truncated coefficients miss an O(t^2) term.
bool in_regime(const model::ModelSpec& m, double x, double y, double eps);

EpsilonInvarianceReport epsilon_invariance(const model::ModelSpec& m, double x, double y,
                                           const std::vector<double>& eps_list,
                                           const ExpansionConfig& cfg = {});

/// Reduced evaluation for x-free gamma. Cross-checked against tail_A2.
TailCoefficients state_independent_A2(const truncation::TruncationScheme& s, double x, double y,
                                      const ExpansionConfig& cfg = {});

}  // namespace jdx::expansion
