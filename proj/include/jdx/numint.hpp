#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string_view>

namespace jdx::numint {

using Integrand = std::function<double(double)>;

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_evaluations = 1'000'000;
  /// Scale s of the semi-infinite map zeta = a + s*u/(1-u).
  double tail_map = 1.0;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;

  QuadratureResult& operator+=(const QuadratureResult& o);
  QuadratureResult operator-() const;
};

QuadratureResult operator+(QuadratureResult a, const QuadratureResult& b);

/// Adaptive Gauss-Kronrod (7/15) bisection on [a, b]. Either end may be
/// infinite. Panels whose discrepancy is at the rounding level of the panel
/// are not refined further, so the achievable tolerance is floored at
/// ~100 ulp of the integral of |f|.
///
/// A NaN from f throws NumericError naming the abscissa.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureConfig& cfg = {});

/// Computes  int_{-eps}^{eps} psi(z) z^2 w(z) dz  where w may blow up like
/// |z|^{-1-alpha}, alpha < 2. Panels touching 0 (|z| < split*eps) are
/// integrated in u = log|z|. w is never evaluated at |z| < 1e-150.
QuadratureResult integrate_compensated(const Integrand& psi, const Integrand& w,
                                       double eps,
                                       const QuadratureConfig& cfg = {},
                                       double split = 0.5);

/// Throws NumericError when r did not converge; otherwise returns r.
const QuadratureResult& require_converged(const QuadratureResult& r,
                                          std::string_view what);

/// 16-point Gauss-Legendre rule on [0, 1].
struct GaussLegendre16 {
  static const std::array<double, 16>& nodes();
  static const std::array<double, 16>& weights();

  template <class F>
  static double integrate01(F&& f) {
    const auto& x = nodes();
    const auto& w = weights();
    double s = 0.0;
    for (std::size_t i = 0; i < 16; ++i) s += w[i] * f(x[i]);
    return s;
  }
};

}  // namespace jdx::numint
