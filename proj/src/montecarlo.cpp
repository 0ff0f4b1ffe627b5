#include "jdx/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <thread>

#include <Eigen/Dense>

#include "jdx/errors.hpp"
#include "jdx/numint.hpp"
#include "jdx/rng.hpp"
#include "jdx/truncation.hpp"

namespace jdx::mc {

using model::ModelSpec;
using truncation::TruncationScheme;

std::string to_string(SmallJumpMode m) {
  switch (m) {
    case SmallJumpMode::DriftCompensateOnly: return "drift-compensate-only";
    case SmallJumpMode::GaussianSubstitute: return "gaussian-substitute";
    case SmallJumpMode::Hybrid: return "hybrid";
  }
  return "?";
}

SmallJumpMode parse_small_jump_mode(const std::string& s) {
  if (s == "drift-compensate-only") return SmallJumpMode::DriftCompensateOnly;
  if (s == "gaussian-substitute") return SmallJumpMode::GaussianSubstitute;
  if (s == "hybrid") return SmallJumpMode::Hybrid;
  throw ParameterError("unknown small-jump mode '" + s + "'");
}

void SimScheme::validate() const {
  if (!(eps > 0.0) || eps > 1.0) throw ParameterError("simulation eps must lie in (0, 1]");
  if (n_steps < 1) throw ParameterError("n_steps must be >= 1");
  if (small_jump_mode == SmallJumpMode::Hybrid && !(fine_cutoff > 0.0))
    throw ParameterError("fine_cutoff must be positive");
  if (threads < 1) throw ParameterError("threads must be >= 1");
}

namespace {

constexpr int kTableNodes = 4096;

/// Monotone piecewise-cubic interpolant (Fritsch-Butland slopes).
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    d_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = x_[k + 1] - x_[k];
      del[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    if (n == 2) {
      d_[0] = d_[1] = del[0];
      return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (del[k - 1] * del[k] <= 0.0) continue;
      const double w1 = 2.0 * h[k] + h[k - 1], w2 = h[k] + 2.0 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
    }
    d_[0] = end_slope(h[0], h[1], del[0], del[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  }

  double operator()(double x) const {
    const std::size_t n = x_.size();
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const std::size_t k =
        std::min<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1, n - 2);
    const double h = x_[k + 1] - x_[k];
    const double s = (x - x_[k]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[k] + (s3 - 2 * s2 + s) * h * d_[k] +
           (-2 * s3 + 3 * s2) * y_[k + 1] + (s3 - s2) * h * d_[k + 1];
  }

  bool empty() const { return x_.empty(); }

 private:
  static double end_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0)
      d = 0.0;
    else if (del0 * del1 <= 0.0 && std::abs(d) > std::abs(3.0 * del0))
      d = 3.0 * del0;
    return d;
  }

  std::vector<double> x_, y_, d_;
};

/// Inverse CDF of a jump density on one sign, tabulated on log-spaced nodes.
struct SideTable {
  double mass = 0.0;
  Pchip inverse;  // cumulative mass -> |zeta|

  static SideTable build(const numint::Integrand& q, double lo, double hi, bool open_top) {
    SideTable t;
    numint::QuadratureConfig cfg;
    cfg.abs_tol = 1e-300;
    cfg.rel_tol = 1e-12;
    const double total =
        numint::require_converged(numint::integrate_adaptive(q, lo, open_top ? INFINITY : hi, cfg),
                                  "jump table mass")
            .value;
    if (!std::isfinite(total)) throw NumericError("jump density has non-finite mass");
    if (total <= 0.0) return t;
    if (open_top) {
      hi = std::max(1.0, 2.0 * lo);
      while (hi < 1e4) {
        const double tail = numint::integrate_adaptive(q, hi, INFINITY, cfg).value;
        if (tail <= 1e-15 * total) break;
        hi *= 2.0;
      }
    }
    cfg.abs_tol = 1e-16 * total;
    std::vector<double> c{0.0}, z{lo};
    double acc = 0.0, prev = lo;
    for (int k = 1; k < kTableNodes; ++k) {
      const double zk = lo * std::pow(hi / lo, static_cast<double>(k) / (kTableNodes - 1));
      const auto r = numint::integrate_adaptive(q, prev, zk, cfg);
      if (!std::isfinite(r.value) || r.value < 0.0)
        throw NumericError("jump table construction failed near |zeta| = " + std::to_string(zk));
      acc += r.value;
      prev = zk;
      if (acc > c.back()) {
        c.push_back(acc);
        z.push_back(zk);
      }
    }
    t.mass = acc;
    t.inverse = Pchip(std::move(c), std::move(z));
    return t;
  }
};

/// Coefficient x -> value, constant or tabulated on a grid with direct
/// evaluation off the grid.
class CoefficientTable {
 public:
  CoefficientTable() = default;
  CoefficientTable(std::function<double(double)> f, bool constant) : f_(std::move(f)) {
    if (constant) {
      constant_ = true;
      c_ = f_(0.0);
      return;
    }
    std::vector<double> xs(kN), ys(kN);
    for (int i = 0; i < kN; ++i) {
      xs[i] = kLo + (kHi - kLo) * i / (kN - 1);
      ys[i] = f_(xs[i]);
    }
    const double scale = std::max(1e-300, std::abs(ys[kN / 2]));
    constant_ = std::all_of(ys.begin(), ys.end(),
                            [&](double v) { return std::abs(v - ys[kN / 2]) <= 1e-12 * scale; });
    c_ = ys[kN / 2];
    h_ = (kHi - kLo) / (kN - 1);
    y_ = std::move(ys);
  }

  bool constant() const { return constant_; }

  double operator()(double x) const {
    if (constant_) return c_;
    if (!(x > kLo + h_) || !(x < kHi - 2 * h_)) return f_(x);
    const double u = (x - kLo) / h_;
    const int k = static_cast<int>(u);
    const double s = u - k;
    // Catmull-Rom on the uniform grid
    const double p0 = y_[k - 1], p1 = y_[k], p2 = y_[k + 1], p3 = y_[k + 2];
    return p1 + 0.5 * s * (p2 - p0 + s * (2 * p0 - 5 * p1 + 4 * p2 - p3 + s * (3 * (p1 - p2) + p3 - p0)));
  }

 private:
  static constexpr int kN = 1601;
  static constexpr double kLo = -8.0, kHi = 8.0;
  std::function<double(double)> f_;
  bool constant_ = true;
  double c_ = 0.0, h_ = 1.0;
  std::vector<double> y_;
};

std::uint64_t poisson(rng::PathRng& r, double mu) {
  if (mu <= 0.0) return 0;
  if (mu < 30.0) {
    double p = std::exp(-mu), F = p;
    const double u = r.uniform();
    std::uint64_t k = 0;
    while (u > F && k < 1000) {
      ++k;
      p *= mu / k;
      F += p;
    }
    return k;
  }
  std::poisson_distribution<std::uint64_t> d(mu);
  return d(r);
}

template <class Body>
void parallel_for(std::uint64_t n, int threads, Body&& body) {
  const std::uint64_t T = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, n));
  if (T == 1) {
    body(std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(T);
  for (std::uint64_t k = 0; k < T; ++k) {
    pool.emplace_back([&, k] {
      try {
        body(n * k / T, n * (k + 1) / T);
      } catch (...) {
        errs[k] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace

struct Simulator::Impl {
  ModelSpec model;
  SimScheme sim;
  SideTable pos, neg;
  double lambda = 0.0;
  CoefficientTable drift, extra_var;
  bool exact = false;
  bool x_free_jumps = false;

  Impl(const ModelSpec& m, const SimScheme& s) : model(m), sim(s) {
    sim.validate();
    const TruncationScheme big(model, sim.eps);
    const bool hybrid = sim.small_jump_mode == SmallJumpMode::Hybrid;
    const double delta = hybrid ? std::min(sim.fine_cutoff, 0.5 * sim.eps) : sim.eps;
    const TruncationScheme fine(model, delta);

    // simulated jump density q and its support
    numint::Integrand q;
    double lo = 0.5 * delta, hi = INFINITY;
    if (sim.big_jumps) {
      q = [&](double z) { return fine.h_eps(z); };
    } else if (hybrid) {
      q = [&](double z) { return fine.h_eps(z) * (1.0 - big.phi(z)); };
      hi = sim.eps;
    }
    if (q) {
      pos = SideTable::build(q, lo, hi, std::isinf(hi));
      neg = SideTable::build([&](double z) { return q(-z); }, lo, hi, std::isinf(hi));
      lambda = pos.mass + neg.mass;
    }

    numint::QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-11;
    auto bigp = std::make_shared<const TruncationScheme>(big);
    auto finep = std::make_shared<const TruncationScheme>(fine);
    // drift: b_eps minus the compensator of the simulated jumps below eps
    auto drift_fn = [bigp, finep, cfg, hybrid, delta, eps = sim.eps](double x) {
      const ModelSpec& mm = bigp->model();
      double d = truncation::compensated_drift(*bigp, x);
      if (hybrid) {
        auto mid = [&](double z) { return mm.gamma(x, z) * finep->h_eps(z) * (1.0 - bigp->phi(z)); };
        d -= numint::require_converged(numint::integrate_adaptive(mid, 0.5 * delta, eps, cfg),
                                       "mid-jump compensator")
                 .value;
        d -= numint::require_converged(numint::integrate_adaptive(mid, -eps, -0.5 * delta, cfg),
                                       "mid-jump compensator")
                 .value;
      }
      return d;
    };
    auto var_fn = [bigp, finep, cfg, hybrid, eps = sim.eps, mode = sim.small_jump_mode](double x) {
      if (mode == SmallJumpMode::DriftCompensateOnly) return 0.0;
      const TruncationScheme& f = hybrid ? *finep : *bigp;
      const ModelSpec& mm = f.model();
      auto psi = [&](double z) {
        const double g = mm.gamma(x, z) / z;
        return g * g * (1.0 - f.phi(z));
      };
      auto w = [&](double z) { return mm.h(z); };
      return numint::require_converged(
                 numint::integrate_compensated(psi, w, hybrid ? f.eps() : eps, cfg),
                 "small-jump variance")
          .value;
    };
    const bool const_coef = model.constant_coefficients() && model.gamma_x_free();
    drift = CoefficientTable(drift_fn, const_coef);
    extra_var = CoefficientTable(var_fn, const_coef);
    x_free_jumps = model.gamma_x_free();
    const bool const_sigma = model.constant_coefficients();
    exact = drift.constant() && extra_var.constant() && const_sigma;
  }

  double quantile(double u) const {
    const double v = u * lambda;
    if (v < neg.mass) return -neg.inverse(neg.mass - v);
    return pos.inverse(std::min(v - neg.mass, pos.mass));
  }

  double diffusion(double x) const {
    const double s = model.sigma(x);
    return std::sqrt(s * s + extra_var(x));
  }

  // One path; with `coarse` set, also advances an n_steps Euler run driven by
  // the pairwise sums of the 2 n_steps fine increments.
  double path(double x, double t, std::uint64_t idx, int n_steps, double* coarse) const {
    if (t <= 0.0) {
      if (coarse) *coarse = x;
      return x;
    }
    rng::PathRng jr(sim.seed, sim.stream_id, idx, 0);
    rng::PathRng wr(sim.seed, sim.stream_id, idx, 1);
    const std::uint64_t n_jumps = poisson(jr, lambda * t);
    thread_local std::vector<double> times, marks;
    times.resize(n_jumps);
    marks.resize(n_jumps);
    for (auto& s : times) s = t * jr.uniform();
    std::sort(times.begin(), times.end());
    for (auto& z : marks) z = quantile(jr.uniform());

    if (exact && x_free_jumps && !coarse) {
      const double s = diffusion(x);
      double X = x + drift(x) * t + s * std::sqrt(t) * wr.normal();
      for (double z : marks) X += model.gamma(0.0, z);
      return X;
    }

    double X = x, Xc = x, prev = 0.0;
    const double dt_max = t / n_steps;
    for (std::uint64_t i = 0; i <= n_jumps; ++i) {
      const double end = i < n_jumps ? times[i] : t;
      const double L = end - prev;
      prev = end;
      if (L > 0.0) {
        if (exact) {
          const double dW = std::sqrt(L) * wr.normal();
          X += drift(X) * L + diffusion(X) * dW;
          Xc += drift(Xc) * L + diffusion(Xc) * dW;
        } else {
          const int k = std::max(1, static_cast<int>(std::ceil(L / dt_max - 1e-9)));
          if (!coarse) {
            const double h = L / k, sh = std::sqrt(h);
            for (int j = 0; j < k; ++j) X += drift(X) * h + diffusion(X) * sh * wr.normal();
          } else {
            const double h = L / (2 * k), sh = std::sqrt(h);
            for (int j = 0; j < k; ++j) {
              const double z1 = wr.normal(), z2 = wr.normal();
              X += drift(X) * h + diffusion(X) * sh * z1;
              X += drift(X) * h + diffusion(X) * sh * z2;
              Xc += drift(Xc) * 2 * h + diffusion(Xc) * sh * (z1 + z2);
            }
          }
        }
      }
      if (i < n_jumps) {
        X += model.gamma(X, marks[i]);
        Xc += model.gamma(Xc, marks[i]);
      }
    }
    if (coarse) *coarse = Xc;
    return X;
  }
};

Simulator::Simulator(const ModelSpec& m, const SimScheme& sim)
    : impl_(std::make_unique<Impl>(m, sim)) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

const SimScheme& Simulator::scheme() const { return impl_->sim; }
double Simulator::jump_intensity() const { return impl_->lambda; }
bool Simulator::exact_between_jumps() const { return impl_->exact; }
double Simulator::drift(double x) const { return impl_->drift(x); }
double Simulator::extra_variance(double x) const { return impl_->extra_var(x); }
double Simulator::jump_quantile(double u) const { return impl_->quantile(u); }

double Simulator::sample(double x, double t, std::uint64_t path) const {
  return impl_->path(x, t, path, impl_->sim.n_steps, nullptr);
}

std::vector<double> Simulator::simulate_terminal(double x, double t, std::uint64_t n) const {
  if (n < 1) throw ParameterError("need at least one sample");
  if (!(t >= 0.0) || !std::isfinite(x)) throw ParameterError("invalid x or t");
  std::vector<double> out(n);
  parallel_for(n, impl_->sim.threads, [&](std::uint64_t a, std::uint64_t b) {
    for (std::uint64_t i = a; i < b; ++i) out[i] = impl_->path(x, t, i, impl_->sim.n_steps, nullptr);
  });
  return out;
}

std::pair<std::vector<double>, std::vector<double>> Simulator::simulate_coupled(
    double x, double t, std::uint64_t n) const {
  if (n < 1) throw ParameterError("need at least one sample");
  std::vector<double> coarse(n), fine(n);
  parallel_for(n, impl_->sim.threads, [&](std::uint64_t a, std::uint64_t b) {
    for (std::uint64_t i = a; i < b; ++i)
      fine[i] = impl_->path(x, t, i, impl_->sim.n_steps, &coarse[i]);
  });
  return {std::move(coarse), std::move(fine)};
}

std::vector<double> simulate_terminal(const ModelSpec& m, const SimScheme& sim, double x, double t,
                                      std::uint64_t n) {
  return Simulator(m, sim).simulate_terminal(x, t, n);
}

int calibrate_steps(const ModelSpec& m, SimScheme sim, double x, double y, double t,
                    std::uint64_t n, int max_steps) {
  Simulator probe(m, sim);
  if (probe.exact_between_jumps()) return sim.n_steps;
  for (int steps = sim.n_steps; steps <= max_steps / 2; steps *= 2) {
    sim.n_steps = steps;
    const auto [coarse, fine] = Simulator(m, sim).simulate_coupled(x, t, n);
    const auto ec = estimate_tail(coarse, x, y), ef = estimate_tail(fine, x, y);
    if (std::abs(ec.mean - ef.mean) <= 0.5 * std::max(ec.std_error, ef.std_error)) return 2 * steps;
  }
  throw NumericError("Euler step calibration did not settle below " + std::to_string(max_steps) +
                     " steps");
}

MCEstimate estimate_tail(const std::vector<double>& samples, double x, double y) {
  if (samples.empty()) throw ParameterError("estimate_tail needs samples");
  const double level = x + y;
  const auto hits = std::count_if(samples.begin(), samples.end(), [&](double v) { return v >= level; });
  MCEstimate e;
  e.n_samples = samples.size();
  const double n = static_cast<double>(samples.size());
  e.mean = hits / n;
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / n);
  return e;
}

double density_bandwidth(const std::vector<double>& samples, double y, const BandwidthPolicy& policy) {
  if (policy.fixed > 0.0) return policy.fixed;
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  return std::max(0.02 * y, 2.0 * std::pow(n, -0.2) * sd);
}

MCEstimate estimate_density(const std::vector<double>& samples, double x, double y,
                            const BandwidthPolicy& policy) {
  if (samples.empty()) throw ParameterError("estimate_density needs samples");
  const double d = density_bandwidth(samples, y, policy);
  if (d > 0.5 * y) throw ParameterError("density bandwidth exceeds y/2");
  const double lo = x + y - d, hi = x + y + d;
  // F(y - d) - F(y + d) counts samples in [lo, hi)
  const auto in = std::count_if(samples.begin(), samples.end(),
                                [&](double v) { return v >= lo && v < hi; });
  const double n = static_cast<double>(samples.size());
  const double q = in / n;
  MCEstimate e;
  e.n_samples = samples.size();
  e.mean = q / (2.0 * d);
  e.std_error = std::sqrt(q * (1.0 - q) / n) / (2.0 * d);
  return e;
}

MCEstimate call_price_from_samples(const std::vector<double>& log_prices, double K) {
  if (log_prices.empty()) throw ParameterError("call price needs samples");
  if (!(K > 0.0)) throw ParameterError("strike must be positive");
  double s = 0.0, ss = 0.0;
  for (double v : log_prices) {
    const double p = std::max(std::exp(v) - K, 0.0);
    s += p;
    ss += p * p;
  }
  const double n = static_cast<double>(log_prices.size());
  MCEstimate e;
  e.n_samples = log_prices.size();
  e.mean = s / n;
  const double var = n > 1 ? std::max(0.0, (ss - n * e.mean * e.mean) / (n - 1)) : 0.0;
  e.std_error = std::sqrt(var / n);
  return e;
}

MCEstimate estimate_call_price(const pricing::PricingModel& pm, double K, double t, std::uint64_t n,
                               const SimScheme& sim) {
  if (!(K > pm.S0)) throw ParameterError("call estimate is out-of-the-money only: need K > S0");
  MCEstimate e;
  if (t == 0.0) {
    e.n_samples = n;
  } else {
    e = call_price_from_samples(Simulator(pm.model, sim).simulate_terminal(pm.x0, t, n), K);
  }
  e.seed = sim.seed;
  e.stream_id = sim.stream_id;
  return e;
}

double ExpansionFit::std_error(int i) const { return std::sqrt(std::max(0.0, cov[i][i])); }

ExpansionFit fit_expansion_coeffs(const std::vector<double>& t_grid,
                                  const std::vector<MCEstimate>& estimates) {
  const std::size_t n = t_grid.size();
  if (n < 4) throw ParameterError("the expansion fit needs at least 4 grid points");
  if (estimates.size() != n) throw ParameterError("one estimate per grid point required");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
      throw ParameterError("t grid must be positive and strictly increasing");
    if (!(estimates[i].std_error > 0.0) || !std::isfinite(estimates[i].std_error))
      throw ParameterError("every estimate needs a finite positive std error");
  }
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_grid[i];
    X(i, 0) = t;
    X(i, 1) = 0.5 * t * t;
    X(i, 2) = t * t * t;
    y(i) = estimates[i].mean;
    w(i) = 1.0 / (estimates[i].std_error * estimates[i].std_error);
  }
  const Eigen::Matrix3d XtWX = X.transpose() * w.asDiagonal() * X;
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(XtWX);
  if (lu.rank() < 3 || lu.rcond() < 1e-14) throw ParameterError("singular expansion-fit design");
  const Eigen::Vector3d beta = lu.solve(X.transpose() * w.asDiagonal() * y);
  const Eigen::Matrix3d cov = lu.inverse();
  ExpansionFit f;
  for (int i = 0; i < 3; ++i) {
    f.coef[i] = beta(i);
    for (int j = 0; j < 3; ++j) f.cov[i][j] = cov(i, j);
  }
  const Eigen::VectorXd r = y - X * beta;
  f.chi2 = r.cwiseProduct(r).dot(w);
  return f;
}

namespace {
constexpr char kMagic[8] = {'J', 'D', 'X', 'S', 'A', 'M', 'P', '1'};

template <class T>
T to_le(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto* p = reinterpret_cast<unsigned char*>(&v);
    std::reverse(p, p + sizeof(T));
  }
  return v;
}
}  // namespace

void write_samples(const std::string& path, const std::vector<double>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(kMagic, 8);
  const std::uint64_t n = to_le<std::uint64_t>(samples.size());
  out.write(reinterpret_cast<const char*>(&n), 8);
  for (double v : samples) {
    const double le = to_le(v);
    out.write(reinterpret_cast<const char*>(&le), 8);
  }
  if (!out) throw Error("failed writing samples to '" + path + "'");
}

std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  char magic[8];
  std::uint64_t n = 0;
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw ParseError("'" + path + "' is not a JDXSAMP1 file");
  if (!in.read(reinterpret_cast<char*>(&n), 8)) throw ParseError("truncated JDXSAMP1 header");
  n = to_le(n);
  std::vector<double> out(n);
  for (auto& v : out) {
    if (!in.read(reinterpret_cast<char*>(&v), 8)) throw ParseError("truncated JDXSAMP1 payload");
    v = to_le(v);
  }
  return out;
}

}  // namespace jdx::mc
