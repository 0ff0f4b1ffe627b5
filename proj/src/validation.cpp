#include "jdx/validation.hpp"

#include <cmath>
#include <string>

#include "jdx/errors.hpp"

namespace jdx::validation {

double auto_eps(const model::ModelSpec& m, double x, double y) {
  for (double eps = 0.5; eps > 1e-3; eps *= 0.5)
    if (expansion::in_regime(m, x, y, eps)) return eps;
  return 0.5;
}

ValidationResult run_validation(const model::ModelSpec& m, const ValidationOptions& opt) {
  if (opt.t_grid.size() < 4) throw ParameterError("validation needs at least 4 t values");
  if (!(opt.y > 0.0)) throw ParameterError("the level y must be positive");
  ValidationResult res;
  const double eps = opt.eps > 0.0 ? opt.eps : auto_eps(m, opt.x, opt.y);
  const truncation::TruncationScheme scheme(m, eps);
  res.analytic = expansion::tail_A2(scheme, opt.x, opt.y, opt.expansion);

  mc::SimScheme sim = opt.sim;
  if (opt.calibrate_steps) {
    const std::uint64_t nc = std::min<std::uint64_t>(opt.n_samples, 1'000'000);
    sim.n_steps = mc::calibrate_steps(m, sim, opt.x, opt.y, opt.t_grid.back(), nc);
  }
  res.n_steps_used = sim.n_steps;
  res.sim_eps = sim.eps;
  const mc::Simulator simulator(m, sim);

  std::vector<mc::MCEstimate> est;
  for (double t : opt.t_grid) {
    ValidationRow r;
    r.t = t;
    const auto samples = simulator.simulate_terminal(opt.x, t, opt.n_samples);
    if (!opt.dump_prefix.empty())
      mc::write_samples(opt.dump_prefix + "." + std::to_string(res.rows.size()) + ".jdxsamp", samples);
    r.mc = mc::estimate_tail(samples, opt.x, opt.y);
    r.mc.seed = sim.seed;
    r.mc.stream_id = sim.stream_id;
    r.expansion = expansion::tail_expansion_value(res.analytic, t);
    r.residual = r.mc.mean - r.expansion;
    r.residual_over_t3 = r.residual / (t * t * t);
    res.rows.push_back(r);
    est.push_back(r.mc);
  }
  res.fit = mc::fit_expansion_coeffs(opt.t_grid, est);

  double num = 0, den = 0;
  for (const auto& r : res.rows) {
    const double t3 = r.t * r.t * r.t;
    const double w = r.mc.std_error > 0 ? 1.0 / (r.mc.std_error * r.mc.std_error) : 0.0;
    num += w * t3 * r.residual;
    den += w * t3 * t3;
  }
  if (den > 0) {
    res.C = num / den;
    res.C_std_error = 1.0 / std::sqrt(den);
  }
  for (auto& r : res.rows) {
    const double dev = r.residual - res.C * r.t * r.t * r.t;
    r.deviation_over_se = r.mc.std_error > 0 ? dev / r.mc.std_error : (dev == 0 ? 0.0 : INFINITY);
  }
  return res;
}

}  // namespace jdx::validation
