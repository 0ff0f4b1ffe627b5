#pragma once

#include <algorithm>
#include <cmath>

namespace jdx::diff {

struct Estimate {
  double value;
  /// |difference| between the last two Richardson levels.
  double discrepancy;
};

/// Central difference with one Richardson step; the step is halved (at most
/// `max_halvings` times) until two successive Richardson values agree to
/// `agree_rel`.
template <class F>
Estimate first(F&& f, double x, double rel_step = 1e-4, double agree_rel = 1e-6,
               int max_halvings = 3) {
  double h = rel_step * std::max(1.0, std::abs(x));
  auto rich = [&](double s) {
    const double d1 = (f(x + s) - f(x - s)) / (2.0 * s);
    const double d2 = (f(x + 0.5 * s) - f(x - 0.5 * s)) / s;
    return (4.0 * d2 - d1) / 3.0;
  };
  double prev = rich(h);
  double disc = 0.0;
  for (int i = 0; i < max_halvings; ++i) {
    h *= 0.5;
    const double cur = rich(h);
    disc = std::abs(cur - prev);
    prev = cur;
    if (disc <= agree_rel * std::max(std::abs(cur), 1e-300)) break;
  }
  return {prev, disc};
}

/// Second derivative, 3-point stencil plus one Richardson step.
template <class F>
Estimate second(F&& f, double x, double rel_step = 1e-3) {
  const double h = rel_step * std::max(1.0, std::abs(x));
  const double f0 = f(x);
  auto s3 = [&](double s) { return (f(x + s) - 2.0 * f0 + f(x - s)) / (s * s); };
  const double a = s3(h), b = s3(0.5 * h);
  return {(4.0 * b - a) / 3.0, std::abs(b - a)};
}

/// Plain 2-point central difference (used by the finite-difference model mode).
template <class F>
double central(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Plain 3-point second difference.
template <class F>
double central2(F&& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace jdx::diff
