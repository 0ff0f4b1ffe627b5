#pragma once

#include <variant>

#include "jdx/model.hpp"
#include "jdx/numint.hpp"

namespace jdx::levy {

/// {zeta : |zeta| >= a}, a > 0.
struct AbsRegion {
  double a;
};

/// {zeta : gamma(x, zeta) >= y}.
struct GammaRegion {
  double x, y;
};

using Region = std::variant<AbsRegion, GammaRegion>;

/// Integral of f(zeta) h(zeta) over the region. For a GammaRegion the boundary
/// is resolved through gamma_inverse; an unattained level y > 0 gives an empty
/// region. The region must stay away from zeta = 0.
numint::QuadratureResult integrate_levy_tail(const model::Fn1& f, const model::ModelSpec& m,
                                             const Region& region,
                                             const numint::QuadratureConfig& cfg = {});

/// Mass of the weight w over {zeta : gamma(x, zeta) >= y}. The weight must
/// vanish on |zeta| < gap when the region contains a neighbourhood of 0
/// (y <= 0); those zeta are skipped.
numint::QuadratureResult gamma_region_mass(const model::ModelSpec& m, double x, double y,
                                           const model::Fn1& w, double gap,
                                           const numint::QuadratureConfig& cfg);

/// Signed difference  mass(x1, y1) - mass(x2, y2)  of the same weight, computed
/// as a single integral between the two region boundaries. Accurate when the
/// boundaries are close.
numint::QuadratureResult gamma_region_mass_difference(const model::ModelSpec& m, double x1,
                                                      double y1, double x2, double y2,
                                                      const model::Fn1& w, double gap,
                                                      const numint::QuadratureConfig& cfg);

}  // namespace jdx::levy
