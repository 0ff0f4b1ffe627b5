#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "jdx/model.hpp"
#include "jdx/pricing.hpp"

namespace jdx::mc {

enum class SmallJumpMode {
  /// jumps below eps dropped, their compensator kept in the drift
  DriftCompensateOnly,
  /// jumps below eps replaced by a diffusion with matched second moment
  GaussianSubstitute,
  /// jumps in [fine_cutoff/2, eps) simulated exactly, smaller ones Gaussian
  Hybrid,
};

std::string to_string(SmallJumpMode m);
/// "drift-compensate-only", "gaussian-substitute" or "hybrid".
SmallJumpMode parse_small_jump_mode(const std::string& s);

struct SimScheme {
  double eps = 0.25;
  /// Euler steps per path; unused when the coefficients between jumps are constant.
  int n_steps = 64;
  SmallJumpMode small_jump_mode = SmallJumpMode::Hybrid;
  double fine_cutoff = 0.01;
  /// false simulates the no-big-jump process X(eps, {}, x)
  bool big_jumps = true;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  int threads = 1;
  void validate() const;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Terminal-value sampler of a model under a simulation scheme. Immutable
/// after construction; sampling is reproducible per (seed, stream, path).
class Simulator {
 public:
  Simulator(const model::ModelSpec& m, const SimScheme& sim);
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  const SimScheme& scheme() const;
  /// Total intensity of the simulated jumps.
  double jump_intensity() const;
  /// Drift and diffusion are constant between jumps, so no Euler error.
  bool exact_between_jumps() const;
  /// Drift used between jumps and the extra Gaussian variance rate.
  double drift(double x) const;
  double extra_variance(double x) const;

  double sample(double x, double t, std::uint64_t path) const;
  std::vector<double> simulate_terminal(double x, double t, std::uint64_t n) const;
  /// Common-random-number pair: (n_steps, 2 n_steps) Euler runs of the same paths.
  std::pair<std::vector<double>, std::vector<double>> simulate_coupled(double x, double t,
                                                                      std::uint64_t n) const;

  /// Inverse-CDF draw from the simulated jump distribution, u in (0, 1).
  double jump_quantile(double u) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<double> simulate_terminal(const model::ModelSpec& m, const SimScheme& sim, double x,
                                      double t, std::uint64_t n);

/// Doubles n_steps until two coupled runs agree on the tail estimate at
/// level x + y within half a standard error. Returns the accepted step count.
int calibrate_steps(const model::ModelSpec& m, SimScheme sim, double x, double y, double t,
                    std::uint64_t n, int max_steps = 4096);

MCEstimate estimate_tail(const std::vector<double>& samples, double x, double y);

struct BandwidthPolicy {
  /// <= 0 selects max(0.02 y, 2 n^{-1/5} sd)
  double fixed = 0.0;
};
double density_bandwidth(const std::vector<double>& samples, double y,
                         const BandwidthPolicy& policy = {});
MCEstimate estimate_density(const std::vector<double>& samples, double x, double y,
                            const BandwidthPolicy& policy = {});

/// Mean of (e^X - K)_+ over log-price samples.
MCEstimate call_price_from_samples(const std::vector<double>& log_prices, double K);
MCEstimate estimate_call_price(const pricing::PricingModel& pm, double K, double t,
                               std::uint64_t n, const SimScheme& sim);

struct ExpansionFit {
  /// (A1, A2, C3) in P(t) = t A1 + t^2/2 A2 + t^3 C3
  std::array<double, 3> coef{};
  std::array<std::array<double, 3>, 3> cov{};
  double chi2 = 0.0;
  double std_error(int i) const;
};
ExpansionFit fit_expansion_coeffs(const std::vector<double>& t_grid,
                                  const std::vector<MCEstimate>& estimates);

/// Little-endian dump: "JDXSAMP1", u64 count, count doubles.
void write_samples(const std::string& path, const std::vector<double>& samples);
std::vector<double> read_samples(const std::string& path);

}  // namespace jdx::mc
