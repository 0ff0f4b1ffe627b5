#include "jdx/levy.hpp"

#include <cmath>
#include <limits>

#include "jdx/errors.hpp"

namespace jdx::levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Region {gamma(x, .) >= y} as {zeta >= z} (orientation +1) or {zeta <= z}
/// (orientation -1); z may be infinite.
double boundary(const model::ModelSpec& m, double x, double y) {
  const auto r = model::try_gamma_inverse(m, x, y);
  if (r) return *r;
  const double g0 = m.gamma(x, 0.0);
  const bool above = y > g0;  // level above the whole range: empty region
  const int s = m.orientation();
  if (above) return s > 0 ? kInf : -kInf;
  return s > 0 ? -kInf : kInf;
}

numint::QuadratureResult integral_over(const model::Fn1& w, double lo, double hi, double gap,
                                       const numint::QuadratureConfig& cfg) {
  if (lo == hi) return {};
  if (lo > hi) return -integral_over(w, hi, lo, gap, cfg);
  numint::QuadratureResult r;
  if (gap > 0.0) {
    if (lo < -gap) r += numint::integrate_adaptive(w, lo, std::min(hi, -gap), cfg);
    if (hi > gap) r += numint::integrate_adaptive(w, std::max(lo, gap), hi, cfg);
    return r;
  }
  if (lo < 0.0 && hi > 0.0) {
    r += numint::integrate_adaptive(w, lo, 0.0, cfg);
    r += numint::integrate_adaptive(w, 0.0, hi, cfg);
    return r;
  }
  return numint::integrate_adaptive(w, lo, hi, cfg);
}

}  // namespace

numint::QuadratureResult gamma_region_mass(const model::ModelSpec& m, double x, double y,
                                           const model::Fn1& w, double gap,
                                           const numint::QuadratureConfig& cfg) {
  const double z = boundary(m, x, y);
  if (m.orientation() > 0) return integral_over(w, z, kInf, gap, cfg);
  return integral_over(w, -kInf, z, gap, cfg);
}

numint::QuadratureResult gamma_region_mass_difference(const model::ModelSpec& m, double x1,
                                                      double y1, double x2, double y2,
                                                      const model::Fn1& w, double gap,
                                                      const numint::QuadratureConfig& cfg) {
  const double z1 = boundary(m, x1, y1);
  const double z2 = boundary(m, x2, y2);
  if (z1 == z2) return {};
  if (std::isinf(z1) || std::isinf(z2)) {
    return gamma_region_mass(m, x1, y1, w, gap, cfg) +
           -gamma_region_mass(m, x2, y2, w, gap, cfg);
  }
  if (m.orientation() > 0) return integral_over(w, z1, z2, gap, cfg);
  return integral_over(w, z2, z1, gap, cfg);
}

numint::QuadratureResult integrate_levy_tail(const model::Fn1& f, const model::ModelSpec& m,
                                             const Region& region,
                                             const numint::QuadratureConfig& cfg) {
  model::Fn1 w = [&](double z) {
    const double hv = m.h(z);
    return hv == 0.0 ? 0.0 : f(z) * hv;
  };
  if (const auto* a = std::get_if<AbsRegion>(&region)) {
    if (!(a->a > 0.0)) throw ParameterError("integrate_levy_tail: |zeta| >= a needs a > 0");
    return numint::integrate_adaptive(w, a->a, kInf, cfg) +
           numint::integrate_adaptive(w, -kInf, -a->a, cfg);
  }
  const auto& g = std::get<GammaRegion>(region);
  if (!(g.y > m.gamma(g.x, 0.0)))
    throw ParameterError("integrate_levy_tail: region {gamma >= y} must exclude zeta = 0");
  return gamma_region_mass(m, g.x, g.y, w, 0.0, cfg);
}

}  // namespace jdx::levy
