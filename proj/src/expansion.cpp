#include "jdx/expansion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "jdx/derivative.hpp"
#include "jdx/errors.hpp"
#include "jdx/levy.hpp"

namespace jdx::expansion {

using model::ModelSpec;
using numint::QuadratureResult;
using truncation::TruncationScheme;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

numint::QuadratureConfig inner_config(const numint::QuadratureConfig& outer) {
  numint::QuadratureConfig c = outer;
  c.abs_tol = std::min(outer.abs_tol * 1e-3, 1e-16);
  c.rel_tol = std::min(outer.rel_tol * 1e-2, 1e-13);
  return c;
}

/// Second-order bracket B(s) with B(0) = B'(0) = 0, returned as B(s)/s^2.
/// Below `sw` the value is int_0^1 B''(beta s)(1 - beta) dbeta with B'' from a
/// 3-point stencil of width sw.
template <class B>
double compensated_ratio(B&& bracket, double s, double sw) {
  if (std::abs(s) >= sw) return bracket(s) / (s * s);
  return numint::GaussLegendre16::integrate01([&](double beta) {
    const double c = beta * s;
    const double d2 = (bracket(c + sw) - 2.0 * bracket(c) + bracket(c - sw)) / (sw * sw);
    return d2 * (1.0 - beta);
  });
}

/// Shared machinery for one (scheme, config).
class Engine {
 public:
  Engine(const TruncationScheme& s, const ExpansionConfig& cfg)
      : s_(s), m_(s.model()), cfg_(cfg), inner_(inner_config(cfg.quad)) {
    h_ = [this](double z) { return m_.h(z); };
    he_ = [this](double z) { return s_.h_eps(z); };
  }

  double budget = 0.0;

  // ---- tail masses --------------------------------------------------------

  /// nu{gamma(x, .) >= y}, y > 0.
  double A1(double x, double y) const {
    const auto r = levy::gamma_region_mass(m_, x, y, h_, 0.0, inner_);
    numint::require_converged(r, "A1 mass");
    return r.value;
  }

  /// nu_eps{gamma(x, .) >= y} (weight h_eps), any y.
  double A1_eps(double x, double y) const {
    const auto r = levy::gamma_region_mass(m_, x, y, he_, 0.5 * s_.eps(), inner_);
    numint::require_converged(r, "A1_eps mass");
    return r.value;
  }

  /// A1(x1, y1) - A1(x2, y2) as a single short integral.
  double A1_diff(double x1, double y1, double x2, double y2) const {
    const auto r = levy::gamma_region_mass_difference(m_, x1, y1, x2, y2, h_, 0.0, inner_);
    numint::require_converged(r, "A1 mass difference");
    return r.value;
  }

  // ---- process Levy density and its derivatives ---------------------------

  double g(double x, double y) const { return model::process_levy_density(m_, x, y); }

  double g_eps(double x, double y) const {
    const auto z = model::try_gamma_inverse(m_, x, y);
    if (!z) return 0.0;
    const double he = s_.h_eps(*z);
    if (he == 0.0) return 0.0;
    return he / std::abs(m_.gamma_z(x, *z));
  }

  double g_x(double x, double y) {
    if (cfg_.policy == DerivativePolicy::Analytic)
      return model::process_levy_density_jet(m_, x, y).g_x;
    return d1([&](double u) { return g(u, y); }, x, 1.0);
  }

  double g_y(double x, double y) {
    if (cfg_.policy == DerivativePolicy::Analytic)
      return model::process_levy_density_jet(m_, x, y).g_y;
    return d1([&](double u) { return g(x, u); }, y, 1.0);
  }

  double g_xx(double x, double y) {
    if (m_.gamma_x_free()) return 0.0;
    return d1([&](double u) { return g_x(u, y); }, x, 1.0);
  }
  double g_xy(double x, double y) {
    if (m_.gamma_x_free()) return 0.0;
    return d1([&](double u) { return g_x(x, u); }, y, 1.0);
  }
  double g_yy(double x, double y) { return d1([&](double u) { return g_y(x, u); }, y, 1.0); }

  /// d/dx A1(x; y).
  double A1_x(double x, double y) {
    if (m_.gamma_x_free()) return 0.0;
    if (cfg_.policy == DerivativePolicy::Analytic) {
      const auto z = model::try_gamma_inverse(m_, x, y);
      if (!z) return 0.0;
      return g(x, y) * m_.gamma_x(x, *z);
    }
    return d1([&](double u) { return A1(u, y); }, x, 1.0);
  }

  double A1_xx(double x, double y) {
    if (m_.gamma_x_free()) return 0.0;
    return d1([&](double u) { return A1_x(u, y); }, x, 1.0);
  }

  // ---- drift ---------------------------------------------------------------

  double b_eps(double x) const { return truncation::compensated_drift(s_, x); }
  double b_eps_x(double x) const { return truncation::compensated_drift_x(s_, x); }

  // ---- integrals -----------------------------------------------------------

  template <class Psi>
  double compensated(Psi&& psi, const char* what) {
    numint::Integrand f = [&](double z) { return psi(z); };
    numint::Integrand w = [this](double z) { return s_.hbar_eps(z); };
    const auto r = numint::integrate_compensated(f, w, s_.eps(), cfg_.quad, cfg_.compensated_split);
    numint::require_converged(r, what);
    budget += r.abs_error;
    return r.value;
  }

  template <class F>
  double big_jump(F&& f, const char* what) {
    numint::Integrand w = [&](double z) {
      const double he = s_.h_eps(z);
      return he == 0.0 ? 0.0 : f(z) * he;
    };
    const double a = 0.5 * s_.eps();
    const auto r = numint::integrate_adaptive(w, a, kInf, cfg_.quad) +
                   numint::integrate_adaptive(w, -kInf, -a, cfg_.quad);
    numint::require_converged(r, what);
    budget += r.abs_error;
    return r.value;
  }

  const TruncationScheme& scheme() const { return s_; }
  const ModelSpec& model() const { return m_; }
  const ExpansionConfig& cfg() const { return cfg_; }

 private:
  template <class F>
  double d1(F&& f, double at, double weight) {
    const auto e = diff::first(f, at, cfg_.fd_rel_step);
    budget += weight * e.discrepancy;
    return e.value;
  }

  const TruncationScheme& s_;
  const ModelSpec& m_;
  ExpansionConfig cfg_;
  numint::QuadratureConfig inner_;
  model::Fn1 h_, he_;
};

/// Chebyshev interpolant on [a, b] with derivatives up to order 2.
class Chebyshev {
 public:
  Chebyshev(const std::function<double(double)>& f, double a, double b, int n)
      : c_(0.5 * (a + b)), r_(0.5 * (b - a)) {
    std::vector<double> fx(n);
    for (int j = 0; j < n; ++j) fx[j] = f(c_ + r_ * std::cos(M_PI * (j + 0.5) / n));
    coef_[0].assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += fx[j] * std::cos(M_PI * k * (j + 0.5) / n);
      coef_[0][k] = 2.0 * s / n;
    }
    coef_[0][0] *= 0.5;
    for (int d = 1; d <= 2; ++d) coef_[d] = derivative(coef_[d - 1]);
  }

  double operator()(double y, int order) const {
    const double u = (y - c_) / r_;
    if (std::abs(u) > 1.0 + 1e-12)
      throw RangeError("Chebyshev interpolant evaluated outside its interval");
    const auto& a = coef_[order];
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = a.size(); k-- > 1;) {
      const double b0 = 2.0 * u * b1 - b2 + a[k];
      b2 = b1;
      b1 = b0;
    }
    return (u * b1 - b2 + a[0]) / std::pow(r_, order);
  }

 private:
  // coefficients of d/du, first coefficient not halved in the recursion
  static std::vector<double> derivative(const std::vector<double>& a) {
    const std::size_t n = a.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> full(a);
    full[0] *= 2.0;
    for (std::size_t k = n - 1; k-- > 0;)
      d[k] = (k + 2 < n ? d[k + 2] : 0.0) + 2.0 * (k + 1) * full[k + 1];
    d[0] *= 0.5;
    return d;
  }

  double c_, r_;
  std::array<std::vector<double>, 3> coef_;
};

void check_xy(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw ParameterError("x and y must be finite");
  if (!(y > 0.0)) throw ParameterError("the level y must be positive");
}

std::vector<std::string> regime_flags(const ModelSpec& m, double x, double y, double eps) {
  std::vector<std::string> flags;
  if (!model::try_gamma_inverse(m, x, y))
    flags.emplace_back("boundary");
  else if (!in_regime(m, x, y, eps))
    flags.emplace_back("out-of-regime");
  return flags;
}

template <class F>
auto named(const char* term, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const NumericError& e) {
    throw NumericError(std::string(term) + ": " + e.what());
  }
}

}  // namespace

numint::QuadratureConfig ExpansionConfig::default_quadrature() {
  numint::QuadratureConfig c;
  c.abs_tol = 1e-13;
  c.rel_tol = 1e-10;
  return c;
}

double tail_A1(const ModelSpec& m, double x, double y, const ExpansionConfig& cfg) {
  check_xy(x, y);
  const auto inner = inner_config(cfg.quad);
  model::Fn1 h = [&](double z) { return m.h(z); };
  const auto mass = levy::gamma_region_mass(m, x, y, h, 0.0, inner);
  numint::require_converged(mass, "A1 (mass form)");
  numint::Integrand gx = [&](double u) { return model::process_levy_density(m, x, u); };
  const auto viag = numint::integrate_adaptive(gx, y, kInf, cfg.quad);
  numint::require_converged(viag, "A1 (integral of g)");
  const double tol = mass.abs_error + viag.abs_error + cfg.quad.abs_tol +
                     cfg.quad.rel_tol * std::abs(mass.value);
  if (std::abs(mass.value - viag.value) > 100.0 * tol) {
    std::ostringstream os;
    os.precision(17);
    os << "A1 representations disagree at x=" << x << ", y=" << y << ": mass " << mass.value
       << " vs integral of g " << viag.value;
    throw ConsistencyError(os.str());
  }
  return mass.value;
}

TailCoefficients tail_A2(const TruncationScheme& s, double x, double y,
                         const ExpansionConfig& cfg) {
  check_xy(x, y);
  Engine e(s, cfg);
  const ModelSpec& m = s.model();
  TailCoefficients c;
  c.x = x;
  c.y = y;
  c.eps = s.eps();
  c.flags = regime_flags(m, x, y, s.eps());

  const double A1 = e.A1(x, y);
  const double g = e.g(x, y);
  const double gx = e.g_x(x, y);
  const double gy = e.g_y(x, y);
  const double A1x = e.A1_x(x, y);
  c.A1 = A1;

  c.D = named("D", [&] {
    const double A1xx = e.A1_xx(x, y);
    return e.b_eps(x) * (A1x + g) + e.b_eps(x + y) * g +
           m.v(x) * (A1xx + 2.0 * gx - gy) - m.v(x + y) * gy - m.v_x(x + y) * g;
  });

  const double F1 = A1x + g;
  auto bracket = [&](double z) {
    if (z == 0.0) return 0.0;
    const double gm = m.gamma(x, z);
    const double pre = e.A1_diff(x + gm, y - gm, x, y) - gm * F1;
    const double xb = model::bar_gamma(m, x + y, z);
    const double post = e.A1_diff(x, xb - x, x, y) - m.gamma(x + y, z) * g;
    return pre + post;
  };
  c.J1 = named("J1", [&] {
    return e.compensated(
        [&](double z) { return compensated_ratio(bracket, z, cfg.zeta_switch); },
        "J1 small-jump integral");
  });

  c.J2 = named("J2", [&] {
    return e.big_jump(
        [&](double z) {
          const double gm = m.gamma(x, z);
          return e.A1_eps(x + gm, y - gm) - 2.0 * A1;
        },
        "J2 big-jump integral");
  });

  c.A2 = c.D + c.J1 + c.J2;
  c.error_budget = e.budget;
  return c;
}

double tail_expansion_value(const TailCoefficients& c, double t) {
  return t * c.A1 + 0.5 * t * t * c.A2;
}

TailExpansion tail_expansion(const TruncationScheme& s, double x, double y, double t,
                             const ExpansionConfig& cfg) {
  if (!(t >= 0.0)) throw ParameterError("t must be nonnegative");
  TailExpansion r;
  r.t = t;
  r.coefficients = tail_A2(s, x, y, cfg);
  r.value = tail_expansion_value(r.coefficients, t);
  return r;
}

double density_a1(const ModelSpec& m, double x, double y) {
  check_xy(x, y);
  return model::process_levy_density(m, x, y);
}

DensityCoefficients density_a2(const TruncationScheme& s, double x, double y,
                               const ExpansionConfig& cfg) {
  check_xy(x, y);
  Engine e(s, cfg);
  const ModelSpec& m = s.model();
  DensityCoefficients c;
  c.x = x;
  c.y = y;
  c.eps = s.eps();
  c.flags = regime_flags(m, x, y, s.eps());

  const double g = e.g(x, y);
  const double gx = e.g_x(x, y);
  const double gy = e.g_y(x, y);
  c.a1 = g;

  c.eth = named("eth", [&] {
    const double gxx = e.g_xx(x, y), gxy = e.g_xy(x, y), gyy = e.g_yy(x, y);
    const double u = x + y;
    return e.b_eps(x) * (gx - gy) - e.b_eps_x(u) * g - e.b_eps(u) * gy +
           m.v(x) * (gxx - 2.0 * gxy + gyy) + 2.0 * m.v_x(u) * gy + m.v(u) * gyy +
           m.v_xx(u) * g;
  });

  auto bracket = [&](double z) {
    if (z == 0.0) return 0.0;
    const double gm = m.gamma(x, z);
    const double xb = model::bar_gamma(m, x + y, z);
    const double dub = 1.0 / (1.0 + m.gamma_x(xb, z));
    const double yb = xb - x;
    const double post = (yb == 0.0 ? 0.0 : e.g(x, yb)) * dub;
    return e.g(x + gm, y - gm) + post - 2.0 * g - gm * gx + gm * gy +
           m.gamma_x(x + y, z) * g + m.gamma(x + y, z) * gy;
  };
  c.Im1 = named("Im1", [&] {
    return e.compensated(
        [&](double z) { return compensated_ratio(bracket, z, cfg.zeta_switch); },
        "Im1 small-jump integral");
  });

  c.Im2 = named("Im2", [&] {
    return e.big_jump(
        [&](double z) {
          const double gm = m.gamma(x, z);
          const double yy = y - gm;
          return (yy == 0.0 ? 0.0 : e.g_eps(x + gm, yy)) - 2.0 * g;
        },
        "Im2 big-jump integral");
  });

  c.a2 = c.eth + c.Im1 + c.Im2;
  c.error_budget = e.budget;
  return c;
}

// ---- generator ----------------------------------------------------------------

double SmoothFunction::first(double y) const {
  if (d1) return d1(y);
  return diff::first(f, y).value;
}

double SmoothFunction::second(double y) const {
  if (d2) return d2(y);
  if (d1) return diff::first(d1, y).value;
  return diff::second(f, y).value;
}

double generator_apply(const GeneratorContext& ctx, const SmoothFunction& f, double y) {
  const auto& s = ctx.scheme;
  const auto& m = s.model();
  const double local = m.v(y) * f.second(y) + truncation::compensated_drift(s, y) * f.first(y);
  numint::Integrand psi = [&](double z) {
    const double gm = m.gamma(y, z);
    const double r = gm / z;
    const double inner = numint::GaussLegendre16::integrate01(
        [&](double beta) { return f.second(y + beta * gm) * (1.0 - beta); });
    return r * r * inner;
  };
  numint::Integrand w = [&](double z) { return s.hbar_eps(z); };
  const auto r =
      numint::integrate_compensated(psi, w, s.eps(), ctx.cfg.quad, ctx.cfg.compensated_split);
  numint::require_converged(r, "generator small-jump integral");
  return local + r.value;
}

double dynkin_expand(const GeneratorContext& ctx, const SmoothFunction& f, double x, double t,
                     int order) {
  if (order != 1 && order != 2) throw ParameterError("dynkin_expand: order must be 1 or 2");
  if (!(t >= 0.0)) throw ParameterError("dynkin_expand: t must be nonnegative");
  const double Lf = generator_apply(ctx, f, x);
  double value = f(x) + t * Lf;
  if (order == 2) {
    // y -> L f(y) on the span reached by the outer small-jump integral
    const auto& m = ctx.scheme.model();
    const double eps = ctx.scheme.eps();
    const double R = 1.05 * std::max(std::abs(m.gamma(x, eps)), std::abs(m.gamma(x, -eps))) + 1e-3;
    const Chebyshev lf_cheb([&](double y) { return generator_apply(ctx, f, y); }, x - R, x + R,
                            ctx.nested_nodes);
    SmoothFunction lf;
    lf.f = [&](double y) { return lf_cheb(y, 0); };
    lf.d1 = [&](double y) { return lf_cheb(y, 1); };
    lf.d2 = [&](double y) { return lf_cheb(y, 2); };
    value += 0.5 * t * t * generator_apply(ctx, lf, x);
  }
  return value;
}

// ---- diagnostics ----------------------------------------------------------------

double small_jump_reach(const ModelSpec& m, double x, double y, double eps) {
  // states visited before the level is crossed stay within [x - y, x + y]
  constexpr int kN = 65;
  double reach = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double xi = x - y + 2.0 * y * i / (kN - 1);
    reach = std::max({reach, std::abs(m.gamma(xi, eps)), std::abs(m.gamma(xi, -eps))});
  }
  return reach;
}

bool in_regime(const ModelSpec& m, double x, double y, double eps) {
  const auto z = model::try_gamma_inverse(m, x, y);
  return z && eps < std::abs(*z) && 2.0 * small_jump_reach(m, x, y, eps) <= y;
}

EpsilonInvarianceReport epsilon_invariance(const ModelSpec& m, double x, double y,
                                           const std::vector<double>& eps_list,
                                           const ExpansionConfig& cfg) {
  check_xy(x, y);
  if (eps_list.size() < 2) throw ParameterError("epsilon_invariance needs at least two eps values");
  EpsilonInvarianceReport rep;
  rep.x = x;
  rep.y = y;
  double lo_A = kInf, hi_A = -kInf, lo_a = kInf, hi_a = -kInf;
  for (double eps : eps_list) {
    EpsilonInvarianceEntry en;
    en.eps = eps;
    en.in_regime = in_regime(m, x, y, eps);
    if (!en.in_regime) rep.out_of_regime = true;
    try {
      TruncationScheme s(m, eps);
      en.tail = tail_A2(s, x, y, cfg);
      en.density = density_a2(s, x, y, cfg);
      en.ok = true;
      lo_A = std::min(lo_A, en.tail.A2);
      hi_A = std::max(hi_A, en.tail.A2);
      lo_a = std::min(lo_a, en.density.a2);
      hi_a = std::max(hi_a, en.density.a2);
    } catch (const Error& err) {
      en.error = err.what();
    }
    rep.entries.push_back(std::move(en));
  }
  rep.A2_spread = hi_A >= lo_A ? hi_A - lo_A : 0.0;
  rep.a2_spread = hi_a >= lo_a ? hi_a - lo_a : 0.0;
  return rep;
}

TailCoefficients state_independent_A2(const TruncationScheme& s, double x, double y,
                                      const ExpansionConfig& cfg) {
  check_xy(x, y);
  const ModelSpec& m = s.model();
  if (!m.gamma_x_free())
    throw ParameterError("state_independent_A2 requires a model with x-free gamma");
  Engine e(s, cfg);
  TailCoefficients c;
  c.x = x;
  c.y = y;
  c.eps = s.eps();
  c.flags = regime_flags(m, x, y, s.eps());

  // with gamma free of x every mass and density is a function of the level only
  auto G = [&](double level) { return e.A1(x, level); };
  const auto jet = model::process_levy_density_jet(m, x, y);
  const double g = jet.g, g1 = jet.g_y;
  c.A1 = G(y);

  const double u = x + y;
  c.D = (e.b_eps(x) + e.b_eps(u)) * g - (m.v(x) + m.v(u)) * g1 - m.v_x(u) * g;

  auto bracket = [&](double z) {
    if (z == 0.0) return 0.0;
    const double gm = m.gamma(x, z);
    return 2.0 * (e.A1_diff(x, y - gm, x, y) - gm * g);
  };
  c.J1 = e.compensated([&](double z) { return compensated_ratio(bracket, z, cfg.zeta_switch); },
                       "J1 small-jump integral (x-free)");
  c.J2 = e.big_jump([&](double z) { return e.A1_eps(x, y - m.gamma(x, z)); },
                    "J2 big-jump integral (x-free)") -
         2.0 * c.A1 * s.lambda();
  c.A2 = c.D + c.J1 + c.J2;
  c.error_budget = e.budget + 2.0 * c.A1 * s.lambda_error();

  const auto general = tail_A2(s, x, y, cfg);
  const double tol = c.error_budget + general.error_budget + cfg.quad.abs_tol +
                     cfg.quad.rel_tol * std::abs(general.A2);
  if (std::abs(general.A2 - c.A2) > 100.0 * tol) {
    std::ostringstream os;
    os.precision(17);
    os << "state-independent A2 " << c.A2 << " disagrees with the general path " << general.A2;
    throw ConsistencyError(os.str());
  }
  return c;
}

}  // namespace jdx::expansion
