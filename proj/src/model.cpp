#include "jdx/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jdx/derivative.hpp"
#include "jdx/errors.hpp"
#include "jdx/numint.hpp"

namespace jdx::model {

namespace {

double fd_step(double x) { return std::max(1e-6, 1e-6 * std::abs(x)); }
double fd_step2(double x) { return std::max(1e-4, 1e-4 * std::abs(x)); }

double d1_or_fd(const Fn1& d, const Fn1& f, double x) {
  if (d) return d(x);
  return diff::central(f, x, fd_step(x));
}

double d2_or_fd(const Fn1& d2, const Fn1& d1, const Fn1& f, double x) {
  if (d2) return d2(x);
  if (d1) return diff::central(d1, x, fd_step(x));
  return diff::central2(f, x, fd_step2(x));
}

DerivativeMode mode_of(bool analytic) {
  return analytic ? DerivativeMode::Analytic : DerivativeMode::FiniteDifference;
}

}  // namespace

ModelSpec::ModelSpec(ModelDefinition def) : def_(std::move(def)) {
  if (!def_.drift.f || !def_.vol.f || !def_.jump.f || !def_.levy.f)
    throw ParameterError("model '" + def_.name +
                         "' must define b, sigma, gamma and h");
  const double s = gamma_z(0.0, 0.0);
  if (!std::isfinite(s) || s == 0.0)
    throw ParameterError("model '" + def_.name +
                         "': d gamma / d zeta vanishes or is not finite at (0,0)");
  orientation_ = s > 0.0 ? 1 : -1;
}

double ModelSpec::b_x(double x) const { return d1_or_fd(def_.drift.d1, def_.drift.f, x); }
double ModelSpec::b_xx(double x) const {
  return d2_or_fd(def_.drift.d2, def_.drift.d1, def_.drift.f, x);
}
double ModelSpec::sigma_x(double x) const { return d1_or_fd(def_.vol.d1, def_.vol.f, x); }
double ModelSpec::sigma_xx(double x) const {
  return d2_or_fd(def_.vol.d2, def_.vol.d1, def_.vol.f, x);
}
double ModelSpec::v(double x) const {
  const double s = sigma(x);
  return 0.5 * s * s;
}
double ModelSpec::v_x(double x) const { return sigma(x) * sigma_x(x); }
double ModelSpec::v_xx(double x) const {
  const double s1 = sigma_x(x);
  return s1 * s1 + sigma(x) * sigma_xx(x);
}

double ModelSpec::gamma_x(double x, double z) const {
  if (def_.jump.dx) return def_.jump.dx(x, z);
  if (def_.gamma_x_free) return 0.0;
  return diff::central([&](double u) { return gamma(u, z); }, x, fd_step(x));
}

double ModelSpec::gamma_z(double x, double z) const {
  if (def_.jump.dz) return def_.jump.dz(x, z);
  return diff::central([&](double u) { return gamma(x, u); }, z, fd_step(z));
}

double ModelSpec::gamma_zz(double x, double z) const {
  if (def_.jump.dzz) return def_.jump.dzz(x, z);
  if (def_.jump.dz)
    return diff::central([&](double u) { return def_.jump.dz(x, u); }, z, fd_step(z));
  return diff::central2([&](double u) { return gamma(x, u); }, z, fd_step2(z));
}

double ModelSpec::gamma_xx(double x, double z) const {
  if (def_.jump.dxx) return def_.jump.dxx(x, z);
  if (def_.gamma_x_free) return 0.0;
  if (def_.jump.dx)
    return diff::central([&](double u) { return def_.jump.dx(u, z); }, x, fd_step(x));
  return diff::central2([&](double u) { return gamma(u, z); }, x, fd_step2(x));
}

double ModelSpec::gamma_xz(double x, double z) const {
  if (def_.jump.dxz) return def_.jump.dxz(x, z);
  if (def_.gamma_x_free) return 0.0;
  if (def_.jump.dz)
    return diff::central([&](double u) { return def_.jump.dz(u, z); }, x, fd_step(x));
  const double hx = fd_step2(x), hz = fd_step2(z);
  return (gamma(x + hx, z + hz) - gamma(x + hx, z - hz) - gamma(x - hx, z + hz) +
          gamma(x - hx, z - hz)) /
         (4.0 * hx * hz);
}

double ModelSpec::h_z(double z) const { return d1_or_fd(def_.levy.d1, def_.levy.f, z); }
double ModelSpec::h_zz(double z) const {
  return d2_or_fd(def_.levy.d2, def_.levy.d1, def_.levy.f, z);
}

DerivativeMode ModelSpec::drift_mode() const {
  return mode_of(def_.drift.d1 && def_.drift.d2);
}
DerivativeMode ModelSpec::vol_mode() const { return mode_of(def_.vol.d1 && def_.vol.d2); }
DerivativeMode ModelSpec::jump_mode() const {
  const auto& j = def_.jump;
  return mode_of(j.dx && j.dz && j.dzz && j.dxx && j.dxz);
}
DerivativeMode ModelSpec::levy_mode() const { return mode_of(def_.levy.d1 && def_.levy.d2); }

ModelSpec ModelSpec::with_drift(ScalarFn drift, bool constant) const {
  ModelDefinition d = def_;
  d.drift = std::move(drift);
  d.constant_coefficients = constant && def_.constant_coefficients;
  return ModelSpec(std::move(d));
}

// ---- inverse maps -----------------------------------------------------------

namespace {

constexpr double kBracketLimit = 1e8;
constexpr int kMaxIter = 300;

/// Monotone root of F on a bracket [lo, hi] (F(lo), F(hi) of opposite sign),
/// bisection safeguarded Newton.
template <class F, class DF>
double safeguarded_newton(F&& f, DF&& df, double lo, double hi, double flo,
                          double tol, const char* what) {
  if (flo == 0.0) return lo;
  const double slo = flo > 0.0 ? 1.0 : -1.0;
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIter; ++it) {
    const double fz = f(z);
    if (!std::isfinite(fz)) throw NumericError(std::string(what) + ": non-finite residual");
    if ((fz > 0.0 ? 1.0 : -1.0) == slo)
      lo = z;
    else
      hi = z;
    const double d = df(z);
    double next = (d != 0.0 && std::isfinite(d)) ? z - fz / d : 0.5 * (lo + hi);
    const bool inside = (next > std::min(lo, hi) && next < std::max(lo, hi));
    if (!inside) next = 0.5 * (lo + hi);
    if (std::abs(fz) <= tol) {
      // one polishing step when it stays in the bracket
      return inside ? next : z;
    }
    if (next == z) return z;
    z = next;
  }
  throw NumericError(std::string(what) + ": root finding did not converge");
}

}  // namespace

std::optional<double> try_gamma_inverse(const ModelSpec& m, double x, double y,
                                        double tol) {
  const double g0 = m.gamma(x, 0.0);
  if (y == g0) return 0.0;
  const int s = m.orientation();
  const double dir = (y > g0 ? 1.0 : -1.0) * s;
  auto F = [&](double z) { return m.gamma(x, z) - y; };
  auto dF = [&](double z) { return m.gamma_z(x, z); };
  double lo = 0.0, flo = g0 - y;
  double step = std::max(std::abs(y - g0), 1e-3);
  for (;;) {
    const double hi = dir * step;
    const double fhi = F(hi);
    if (!std::isfinite(fhi)) return std::nullopt;
    if ((fhi > 0.0) != (flo > 0.0) || fhi == 0.0) {
      if (fhi == 0.0) return hi;
      return safeguarded_newton(F, dF, lo, hi, flo, tol, "gamma_inverse");
    }
    lo = hi;
    flo = fhi;
    step *= 2.0;
    if (step > kBracketLimit) return std::nullopt;
  }
}

double gamma_inverse(const ModelSpec& m, double x, double y, double tol) {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw ParameterError("gamma_inverse: non-finite argument");
  auto r = try_gamma_inverse(m, x, y, tol);
  if (!r) {
    std::ostringstream os;
    os << "gamma_inverse: y=" << y << " is outside the range of gamma(" << x << ", .)";
    throw RangeError(os.str());
  }
  return *r;
}

double bar_gamma(const ModelSpec& m, double u, double zeta, double tol) {
  if (!std::isfinite(u) || !std::isfinite(zeta))
    throw ParameterError("bar_gamma: non-finite argument");
  if (zeta == 0.0) return u;
  auto F = [&](double z) { return z + m.gamma(z, zeta) - u; };
  auto dF = [&](double z) { return 1.0 + m.gamma_x(z, zeta); };
  const double sgn = dF(u) > 0.0 ? 1.0 : -1.0;  // orientation of z -> z + gamma
  double z0 = u - m.gamma(u, zeta);
  double f0 = F(z0);
  if (f0 == 0.0) return z0;
  const double dir = (f0 > 0.0 ? -1.0 : 1.0) * sgn;
  double step = std::max(std::abs(m.gamma(u, zeta)), 1e-3);
  for (;;) {
    const double z1 = z0 + dir * step;
    const double f1 = F(z1);
    if (!std::isfinite(f1)) throw NumericError("bar_gamma: non-finite residual");
    if ((f1 > 0.0) != (f0 > 0.0) || f1 == 0.0) {
      if (f1 == 0.0) return z1;
      return safeguarded_newton(F, dF, z0, z1, f0, tol, "bar_gamma");
    }
    z0 = z1;
    f0 = f1;
    step *= 2.0;
    if (step > kBracketLimit) throw NumericError("bar_gamma: bracket expansion failed");
  }
}

double process_levy_density(const ModelSpec& m, double x, double y) {
  if (y == 0.0) throw ParameterError("process_levy_density: y must be nonzero");
  const auto z = try_gamma_inverse(m, x, y);
  if (!z) return 0.0;
  return m.h(*z) / std::abs(m.gamma_z(x, *z));
}

LevyDensityJet process_levy_density_jet(const ModelSpec& m, double x, double y) {
  if (y == 0.0) throw ParameterError("process_levy_density: y must be nonzero");
  LevyDensityJet j;
  const auto z = try_gamma_inverse(m, x, y);
  if (!z) return j;
  j.in_range = true;
  j.zeta = *z;
  const double gz = m.gamma_z(x, *z);
  const double s = gz > 0.0 ? 1.0 : -1.0;
  const double hv = m.h(*z), h1 = m.h_z(*z);
  const double gzz = m.gamma_zz(x, *z);
  const double gx = m.gamma_x(x, *z);
  const double gxz = m.gamma_xz(x, *z);
  j.g = s * hv / gz;
  // d zeta*/dy = 1/gz, d zeta*/dx = -gx/gz
  j.g_y = s * (h1 / (gz * gz) - hv * gzz / (gz * gz * gz));
  const double dzdx = -gx / gz;
  j.g_x = s * (h1 * dzdx / gz - hv * (gxz + gzz * dzdx) / (gz * gz));
  return j;
}

// ---- grids and condition checks -------------------------------------------

ValidationGrid ValidationGrid::make(double x_lo, double x_hi, int nx, double z_lo,
                                   double z_hi, int nz_per_sign) {
  if (nx < 1 || nz_per_sign < 1 || !(z_lo > 0.0) || !(z_hi >= z_lo) || !(x_hi >= x_lo))
    throw ParameterError("invalid validation grid");
  ValidationGrid g;
  for (int i = 0; i < nx; ++i)
    g.x.push_back(nx == 1 ? x_lo : x_lo + (x_hi - x_lo) * i / (nx - 1));
  const double a = std::log(z_lo), b = std::log(z_hi);
  std::vector<double> pos;
  for (int i = 0; i < nz_per_sign; ++i)
    pos.push_back(std::exp(nz_per_sign == 1 ? a : a + (b - a) * i / (nz_per_sign - 1)));
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) g.zeta.push_back(-*it);
  for (double p : pos) g.zeta.push_back(p);
  return g;
}

ValidationGrid ValidationGrid::standard() { return make(-2.0, 2.0, 41, 1e-4, 10.0, 80); }

bool ConditionReport::all_required_pass() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionResult& c) { return c.pass || !c.required; });
}

const ConditionResult& ConditionReport::at(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return c;
  throw ParameterError("no condition with id " + id);
}

namespace {

/// Tracks the extreme of a tested quantity and fails on non-finite values.
struct Tracker {
  ConditionResult r;
  bool minimize;
  bool any = false;
  bool broken = false;

  Tracker(std::string id, std::string desc, bool min_mode) : minimize(min_mode) {
    r.id = std::move(id);
    r.description = std::move(desc);
  }

  void see(double value, double x, double z) {
    if (broken) return;
    if (!std::isfinite(value)) {
      broken = true;
      r.worst_value = value;
      r.witness_x = x;
      r.witness_zeta = z;
      return;
    }
    if (!any || (minimize ? value < r.worst_value : value > r.worst_value)) {
      r.worst_value = value;
      r.witness_x = x;
      r.witness_zeta = z;
      any = true;
    }
  }
};

}  // namespace

ConditionReport check_conditions(const ModelSpec& m, const ValidationGrid& grid,
                                 std::optional<Regularity> thresholds) {
  if (grid.x.empty() || grid.zeta.empty()) throw ParameterError("empty validation grid");
  for (double z : grid.zeta)
    if (z == 0.0) throw ParameterError("validation grid must exclude zeta = 0");
  const Regularity th = thresholds.value_or(m.regularity());
  ConditionReport rep;

  // (C1): h positive and finite with finite derivatives; finite tail mass.
  {
    Tracker t("C1", "h > 0 and finite, h', h'' finite, finite mass away from 0", true);
    double zmin = std::numeric_limits<double>::infinity();
    bool nonpositive = false;
    for (double z : grid.zeta) {
      const double hv = m.h(z);
      if (!(hv > 0.0)) nonpositive = true;
      t.see(hv, 0.0, z);
      if (!std::isfinite(m.h_z(z)) || !std::isfinite(m.h_zz(z))) t.see(NAN, 0.0, z);
      zmin = std::min(zmin, std::abs(z));
    }
    bool mass_ok = true;
    try {
      numint::QuadratureConfig cfg;
      cfg.max_evaluations = 50'000;
      auto f = [&](double z) { return m.h(z); };
      auto r = numint::integrate_adaptive(f, zmin, INFINITY, cfg) +
               numint::integrate_adaptive(f, -INFINITY, -zmin, cfg);
      mass_ok = r.converged && std::isfinite(r.value);
    } catch (const Error&) {
      mass_ok = false;
    }
    t.r.pass = !t.broken && !nonpositive && mass_ok;
    rep.conditions.push_back(t.r);
  }

  // (C2-a): gamma(x, 0) = 0.
  {
    Tracker t("C2a", "gamma(x, 0) = 0", false);
    for (double x : grid.x) t.see(std::abs(m.gamma(x, 0.0)), x, 0.0);
    t.r.pass = !t.broken && t.r.worst_value <= 1e-12;
    rep.conditions.push_back(t.r);
  }

  // (C2-b): |d_zeta gamma| >= delta_jump with a constant sign.
  {
    Tracker t("C2b", "|d gamma / d zeta| >= delta_jump, constant sign", true);
    bool sign_flip = false;
    for (double x : grid.x) {
      for (double z : grid.zeta) {
        const double d = m.gamma_z(x, z);
        if (d * m.orientation() <= 0.0) sign_flip = true;
        t.see(std::abs(d), x, z);
        if (!std::isfinite(m.gamma(x, z)) || !std::isfinite(m.gamma_zz(x, z)))
          t.see(NAN, x, z);
      }
    }
    t.r.pass = !t.broken && !sign_flip && t.r.worst_value >= th.delta_jump;
    rep.conditions.push_back(t.r);
  }

  // (C3): b, sigma and the gamma partials finite (bounded on the grid).
  {
    Tracker t("C3", "b, sigma, gamma partials bounded (up to order 2)", false);
    for (double x : grid.x) {
      const double vals[] = {m.b(x), m.b_x(x), m.b_xx(x),
                             m.sigma(x), m.sigma_x(x), m.sigma_xx(x)};
      for (double v : vals) t.see(std::abs(v), x, 0.0);
      for (double z : grid.zeta) {
        t.see(std::abs(m.gamma_x(x, z)), x, z);
        t.see(std::abs(m.gamma_xx(x, z)), x, z);
        t.see(std::abs(m.gamma_xz(x, z)), x, z);
      }
    }
    t.r.pass = !t.broken;
    rep.conditions.push_back(t.r);
  }

  // (C4)(i): |1 + d_x gamma| >= delta_flow.
  {
    Tracker t("C4i", "|1 + d gamma / dx| >= delta_flow", true);
    for (double x : grid.x)
      for (double z : grid.zeta) t.see(std::abs(1.0 + m.gamma_x(x, z)), x, z);
    t.r.pass = !t.broken && t.r.worst_value >= th.delta_flow;
    rep.conditions.push_back(t.r);
  }

  // (C4)(ii): sigma >= delta_vol.
  {
    Tracker t("C4ii", "sigma(x) >= delta_vol", true);
    for (double x : grid.x) t.see(m.sigma(x), x, 0.0);
    t.r.pass = !t.broken && t.r.worst_value >= th.delta_vol;
    rep.conditions.push_back(t.r);
  }

  // (C5): sup_x int_{|z|>=1} exp(3|gamma|) h < infinity.
  {
    Tracker t("C5", "sup_x int_{|z|>=1} exp(3|gamma(x,z)|) h(z) dz finite", false);
    bool ok = true;
    for (double x : grid.x) {
      auto f = [&](double z) {
        const double e = std::exp(3.0 * std::abs(m.gamma(x, z)));
        const double hv = m.h(z);
        return hv == 0.0 ? 0.0 : e * hv;
      };
      try {
        numint::QuadratureConfig cfg;
        cfg.max_evaluations = 20'000;
        auto r = numint::integrate_adaptive(f, 1.0, INFINITY, cfg) +
                 numint::integrate_adaptive(f, -INFINITY, -1.0, cfg);
        // an integrable tail has a vanishing integrand far out
        const double far = std::max(f(200.0), f(-200.0));
        if (!r.converged || !(far < 1e-3)) {
          ok = false;
          t.see(INFINITY, x, 0.0);
        } else {
          t.see(r.value, x, 0.0);
        }
      } catch (const Error&) {
        ok = false;
        t.see(INFINITY, x, 0.0);
      }
    }
    t.r.pass = ok && !t.broken;
    t.r.required = m.requires_exp_moment();
    rep.conditions.push_back(t.r);
  }
  return rep;
}

}  // namespace jdx::model
