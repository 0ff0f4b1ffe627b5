#include "jdx/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "jdx/errors.hpp"
#include "jdx/model_io.hpp"
#include "jdx/montecarlo.hpp"
#include "jdx/pricing.hpp"
#include "jdx/validation.hpp"

namespace jdx::cli {

using nlohmann::json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Common {
  std::string model_path;
  std::optional<double> eps, abs_tol, rel_tol;
  std::string out_path;
  std::string format = "json";
  int threads = 0;
};

struct McFlags {
  std::uint64_t n_samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;
  std::optional<int> n_steps;
  std::string small_jump_mode = "hybrid";
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--model", c.model_path, "model JSON file")->required();
  sub->add_option("--eps", c.eps, "truncation level");
  sub->add_option("--abs-tol", c.abs_tol, "absolute quadrature tolerance");
  sub->add_option("--rel-tol", c.rel_tol, "relative quadrature tolerance");
  sub->add_option("--out", c.out_path, "output file (default stdout)");
  sub->add_option("--format", c.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

void add_mc(CLI::App* sub, McFlags& m) {
  sub->add_option("--n-samples", m.n_samples, "paths per t")->capture_default_str();
  sub->add_option("--seed", m.seed, "64-bit seed (chosen and reported when omitted)");
  sub->add_option("--stream", m.stream, "stream id")->capture_default_str();
  sub->add_option("--n-steps", m.n_steps, "Euler steps per path (disables calibration)");
  sub->add_option("--small-jump-mode", m.small_jump_mode,
                  "drift-compensate-only, gaussian-substitute or hybrid")
      ->check(CLI::IsMember({"drift-compensate-only", "gaussian-substitute", "hybrid"}))
      ->capture_default_str();
}

int thread_count(const Common& c) {
  if (c.threads > 0) return c.threads;
  if (const char* env = std::getenv("JDX_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Loaded {
  model::ModelSpec model;
  std::optional<double> eps;
  expansion::ExpansionConfig cfg;
};

Loaded load(const Common& c) {
  auto lm = model::load_model_file(c.model_path);
  Loaded l{lm.model, c.eps ? c.eps : lm.eps, {}};
  if (const auto a = c.abs_tol ? c.abs_tol : lm.abs_tol) l.cfg.quad.abs_tol = *a;
  if (const auto r = c.rel_tol ? c.rel_tol : lm.rel_tol) l.cfg.quad.rel_tol = *r;
  l.cfg.quad.validate();
  if (l.eps && !(*l.eps > 0.0)) throw UsageError("eps must be positive");
  return l;
}

mc::SimScheme sim_scheme(const McFlags& f, double eps, int threads) {
  mc::SimScheme s;
  s.eps = std::min(eps, 1.0);
  s.small_jump_mode = mc::parse_small_jump_mode(f.small_jump_mode);
  s.seed = f.seed ? *f.seed : std::random_device{}() * 0x100000001ull ^ std::random_device{}();
  s.stream_id = f.stream;
  if (f.n_steps) s.n_steps = *f.n_steps;
  s.threads = threads;
  return s;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path);
  if (!f) throw Error("cannot open '" + c.out_path + "' for writing");
  f << text;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string s;
  for (const auto& f : flags) s += (s.empty() ? "" : ";") + f;
  return s;
}

template <class T, class F>
std::vector<T> sweep(std::size_t n, int threads, F&& f) {
  std::vector<std::optional<T>> out(n);
  std::vector<std::exception_ptr> errs(n);
  auto work = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = a; i < b; ++i) {
      try {
        out[i] = f(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < parts; ++k) pool.emplace_back(work, n * k / parts, n * (k + 1) / parts);
  work(0, n / parts);
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<T> r;
  for (auto& o : out) r.push_back(std::move(*o));
  return r;
}

void require_positive_levels(const std::vector<double>& ys) {
  if (ys.empty()) throw UsageError("at least one level y is required");
  for (double y : ys)
    if (!(y > 0.0)) throw UsageError("levels y must be positive");
}

json scheme_json(const truncation::TruncationScheme& s) {
  return {{"eps", s.eps()}, {"lambda_eps", s.lambda()}};
}

// ---------------------------------------------------------------------------

int cmd_check(const Common& c, std::ostream& out) {
  const auto lm = model::load_model_file(c.model_path);
  const auto report = model::check_conditions(lm.model);
  if (c.format == "csv") {
    std::ostringstream s;
    s << "condition,pass,required,worst_value,witness_x,witness_zeta\n";
    for (const auto& r : report.conditions)
      s << r.id << ',' << (r.pass ? "PASS" : "FAIL") << ',' << (r.required ? 1 : 0) << ','
        << format_double(r.worst_value) << ',' << format_double(r.witness_x) << ','
        << format_double(r.witness_zeta) << '\n';
    emit(c, s.str(), out);
  } else {
    json j = model::to_json(report);
    j["model"] = lm.model.name();
    j["status"] = report.all_required_pass() ? "PASS" : "FAIL";
    emit(c, j.dump(2) + "\n", out);
  }
  return report.all_required_pass() ? 0 : 1;
}

struct TailArgs {
  std::vector<double> xs{0.0}, ys;
  std::optional<double> t;
  std::vector<double> eps_sweep;
};

int cmd_tail(const Common& c, const TailArgs& a, std::ostream& out) {
  require_positive_levels(a.ys);
  if (a.t && !(*a.t >= 0.0)) throw UsageError("t must be nonnegative");
  if (!a.eps_sweep.empty() && a.eps_sweep.size() < 2)
    throw UsageError("--eps-sweep needs at least two values");
  const auto L = load(c);
  std::vector<std::pair<double, double>> pts;
  for (double x : a.xs)
    for (double y : a.ys) pts.emplace_back(x, y);
  const auto recs = sweep<json>(pts.size(), thread_count(c), [&](std::size_t i) {
    const auto [x, y] = pts[i];
    const truncation::TruncationScheme s(L.model, L.eps ? *L.eps : validation::auto_eps(L.model, x, y));
    const auto tc = expansion::tail_A2(s, x, y, L.cfg);
    json j = to_json(tc);
    j["scheme"] = scheme_json(s);
    if (a.t) {
      j["t"] = *a.t;
      j["value"] = expansion::tail_expansion_value(tc, *a.t);
    }
    if (!a.eps_sweep.empty())
      j["eps_sweep"] = to_json(expansion::epsilon_invariance(L.model, x, y, a.eps_sweep, L.cfg));
    return j;
  });
  if (c.format == "csv") {
    std::ostringstream s;
    s << "x,y,eps,lambda_eps,A1,D,J1,J2,A2,error_budget,flags";
    if (a.t) s << ",t,value";
    s << '\n';
    for (const auto& j : recs) {
      s << format_double(j["x"]) << ',' << format_double(j["y"]) << ',' << format_double(j["eps"])
        << ',' << format_double(j["scheme"]["lambda_eps"]) << ',' << format_double(j["A1"]) << ','
        << format_double(j["parts"]["D"]) << ',' << format_double(j["parts"]["J1"]) << ','
        << format_double(j["parts"]["J2"]) << ',' << format_double(j["A2"]) << ','
        << format_double(j["error_budget"]) << ','
        << join_flags(j["flags"].get<std::vector<std::string>>());
      if (a.t) s << ',' << format_double(j["t"]) << ',' << format_double(j["value"]);
      s << '\n';
    }
    emit(c, s.str(), out);
  } else {
    emit(c, (recs.size() == 1 ? recs[0] : json(recs)).dump(2) + "\n", out);
  }
  return 0;
}

struct DensityArgs {
  std::vector<double> xs{0.0}, ys;
  bool check_dy = false;
};

int cmd_density(const Common& c, const DensityArgs& a, std::ostream& out) {
  require_positive_levels(a.ys);
  const auto L = load(c);
  std::vector<std::pair<double, double>> pts;
  for (double x : a.xs)
    for (double y : a.ys) pts.emplace_back(x, y);
  bool all_ok = true;
  const auto recs = sweep<json>(pts.size(), thread_count(c), [&](std::size_t i) {
    const auto [x, y] = pts[i];
    const truncation::TruncationScheme s(L.model, L.eps ? *L.eps : validation::auto_eps(L.model, x, y));
    const auto dc = expansion::density_a2(s, x, y, L.cfg);
    json j = to_json(dc);
    j["scheme"] = scheme_json(s);
    if (a.check_dy) {
      const double h = 1e-4 * y;
      const auto up = expansion::tail_A2(s, x, y + h, L.cfg), dn = expansion::tail_A2(s, x, y - h, L.cfg);
      const double a1_fd = -(up.A1 - dn.A1) / (2 * h), a2_fd = -(up.A2 - dn.A2) / (2 * h);
      auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
      const bool ok = rel(a1_fd, dc.a1) <= 1e-3 && rel(a2_fd, dc.a2) <= 1e-3;
      j["check_dy"] = {{"step", h},
                       {"a1_fd", a1_fd},
                       {"a2_fd", a2_fd},
                       {"a1_rel_diff", rel(a1_fd, dc.a1)},
                       {"a2_rel_diff", rel(a2_fd, dc.a2)},
                       {"pass", ok}};
    }
    return j;
  });
  if (a.check_dy)
    for (const auto& j : recs) all_ok = all_ok && j["check_dy"]["pass"].get<bool>();
  if (c.format == "csv") {
    std::ostringstream s;
    s << "x,y,eps,lambda_eps,a1,eth,Im1,Im2,a2,error_budget,flags";
    if (a.check_dy) s << ",a1_fd,a2_fd,check_dy_pass";
    s << '\n';
    for (const auto& j : recs) {
      s << format_double(j["x"]) << ',' << format_double(j["y"]) << ',' << format_double(j["eps"])
        << ',' << format_double(j["scheme"]["lambda_eps"]) << ',' << format_double(j["a1"]) << ','
        << format_double(j["parts"]["eth"]) << ',' << format_double(j["parts"]["Im1"]) << ','
        << format_double(j["parts"]["Im2"]) << ',' << format_double(j["a2"]) << ','
        << format_double(j["error_budget"]) << ','
        << join_flags(j["flags"].get<std::vector<std::string>>());
      if (a.check_dy)
        s << ',' << format_double(j["check_dy"]["a1_fd"]) << ','
          << format_double(j["check_dy"]["a2_fd"]) << ','
          << (j["check_dy"]["pass"].get<bool>() ? "PASS" : "FAIL");
      s << '\n';
    }
    emit(c, s.str(), out);
  } else {
    emit(c, (recs.size() == 1 ? recs[0] : json(recs)).dump(2) + "\n", out);
  }
  return all_ok ? 0 : 1;
}

struct ValidateArgs {
  double x = 0.0, y = 1.0;
  std::vector<double> t_grid{0.0125, 0.025, 0.05, 0.1};
  McFlags mc;
  std::string dump_prefix;
};

int cmd_validate(const Common& c, const ValidateArgs& a, std::ostream& out) {
  if (!(a.y > 0.0)) throw UsageError("the level y must be positive");
  if (a.t_grid.size() < 4) throw UsageError("--t-grid needs at least 4 points for the fit");
  for (std::size_t i = 0; i < a.t_grid.size(); ++i)
    if (!(a.t_grid[i] > 0.0) || (i && !(a.t_grid[i] > a.t_grid[i - 1])))
      throw UsageError("--t-grid must be positive and strictly increasing");
  if (a.mc.n_samples < 1) throw UsageError("--n-samples must be positive");
  const auto L = load(c);
  validation::ValidationOptions o;
  o.x = a.x;
  o.y = a.y;
  o.t_grid = a.t_grid;
  o.n_samples = a.mc.n_samples;
  o.eps = L.eps ? *L.eps : validation::auto_eps(L.model, a.x, a.y);
  o.sim = sim_scheme(a.mc, o.eps, thread_count(c));
  o.calibrate_steps = !a.mc.n_steps;
  o.expansion = L.cfg;
  o.dump_prefix = a.dump_prefix;
  const auto r = validation::run_validation(L.model, o);

  const auto& A = r.analytic;
  if (c.format == "json") {
    json j;
    j["model"] = L.model.name();
    j["x"] = a.x;
    j["y"] = a.y;
    j["eps"] = o.eps;
    j["seed"] = o.sim.seed;
    j["stream"] = o.sim.stream_id;
    j["n_samples"] = o.n_samples;
    j["small_jump_mode"] = mc::to_string(o.sim.small_jump_mode);
    j["n_steps"] = r.n_steps_used;
    j["analytic"] = to_json(A);
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"t", row.t},
                      {"mc_tail", row.mc.mean},
                      {"mc_std_error", row.mc.std_error},
                      {"expansion", row.expansion},
                      {"residual", row.residual},
                      {"residual_over_t3", row.residual_over_t3},
                      {"deviation_over_se", row.deviation_over_se}});
    j["rows"] = rows;
    j["C"] = r.C;
    j["C_std_error"] = r.C_std_error;
    j["fit"] = {{"A1", r.fit.coef[0]}, {"A1_std_error", r.fit.std_error(0)},
                {"A2", r.fit.coef[1]}, {"A2_std_error", r.fit.std_error(1)},
                {"C3", r.fit.coef[2]}, {"C3_std_error", r.fit.std_error(2)},
                {"chi2", r.fit.chi2}};
    emit(c, j.dump(2) + "\n", out);
    return 0;
  }
  std::ostringstream s;
  s << "# model=" << L.model.name() << " x=" << format_double(a.x) << " y=" << format_double(a.y)
    << " eps=" << format_double(o.eps) << " n_samples=" << o.n_samples << " seed=" << o.sim.seed
    << " stream=" << o.sim.stream_id << " small_jump_mode=" << mc::to_string(o.sim.small_jump_mode)
    << " n_steps=" << r.n_steps_used << '\n';
  s << "t,mc_tail,mc_std_error,expansion,residual,residual_over_t3,deviation_over_se\n";
  for (const auto& row : r.rows)
    s << format_double(row.t) << ',' << format_double(row.mc.mean) << ','
      << format_double(row.mc.std_error) << ',' << format_double(row.expansion) << ','
      << format_double(row.residual) << ',' << format_double(row.residual_over_t3) << ','
      << format_double(row.deviation_over_se) << '\n';
  s << "\ncoefficient,fitted,fitted_std_error,analytic,z_score\n";
  const double an[2] = {A.A1, A.A2};
  for (int i = 0; i < 2; ++i)
    s << (i == 0 ? "A1" : "A2") << ',' << format_double(r.fit.coef[i]) << ','
      << format_double(r.fit.std_error(i)) << ',' << format_double(an[i]) << ','
      << format_double((r.fit.coef[i] - an[i]) / r.fit.std_error(i)) << '\n';
  s << "C3," << format_double(r.fit.coef[2]) << ',' << format_double(r.fit.std_error(2))
    << ",nan,nan\n";
  emit(c, s.str(), out);
  return 0;
}

struct PriceArgs {
  double spot = 1.0, strike = 0.0;
  double t = 0.02;
  bool mc = false;
  McFlags mcf;
};

int cmd_price(const Common& c, const PriceArgs& a, std::ostream& out) {
  if (!(a.spot > 0.0) || !(a.strike > 0.0)) throw UsageError("spot and strike must be positive");
  if (!(a.strike > a.spot))
    throw UsageError("the leading-order price is out-of-the-money only: need strike > spot");
  if (!(a.t >= 0.0)) throw UsageError("t must be nonnegative");
  const auto L = load(c);
  const auto pm = pricing::make_pricing_model(L.model, a.spot);
  json j;
  j["model"] = L.model.name();
  j["spot"] = a.spot;
  j["strike"] = a.strike;
  j["leading_term"] = pricing::otm_leading_term(pm, a.strike, L.cfg.quad);
  if (a.mc) {
    const double eps = L.eps ? *L.eps : 0.25;
    const auto sim = sim_scheme(a.mcf, eps, thread_count(c));
    const auto e = mc::estimate_call_price(pm, a.strike, a.t, a.mcf.n_samples, sim);
    j["t"] = a.t;
    j["mc_estimate"] = e.mean;
    j["mc_std_error"] = e.std_error;
    if (a.t > 0) {
      j["ratio_to_t"] = e.mean / a.t;
      j["ratio_to_t_std_error"] = e.std_error / a.t;
    }
    j["n_samples"] = e.n_samples;
    j["seed"] = e.seed;
    j["stream"] = e.stream_id;
    j["small_jump_mode"] = mc::to_string(sim.small_jump_mode);
  }
  if (c.format == "csv") {
    std::ostringstream s;
    s << "spot,strike,leading_term";
    if (a.mc) s << ",t,mc_estimate,mc_std_error,ratio_to_t,seed";
    s << '\n' << format_double(a.spot) << ',' << format_double(a.strike) << ','
      << format_double(j["leading_term"]);
    if (a.mc)
      s << ',' << format_double(a.t) << ',' << format_double(j["mc_estimate"]) << ','
        << format_double(j["mc_std_error"]) << ','
        << (a.t > 0 ? format_double(j["ratio_to_t"]) : std::string("nan")) << ','
        << j["seed"].get<std::uint64_t>();
    s << '\n';
    emit(c, s.str(), out);
  } else {
    emit(c, j.dump(2) + "\n", out);
  }
  return 0;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const expansion::TailCoefficients& c) {
  return {{"x", c.x},
          {"y", c.y},
          {"eps", c.eps},
          {"A1", c.A1},
          {"A2", c.A2},
          {"parts", {{"D", c.D}, {"J1", c.J1}, {"J2", c.J2}}},
          {"error_budget", c.error_budget},
          {"flags", c.flags}};
}

json to_json(const expansion::DensityCoefficients& c) {
  return {{"x", c.x},
          {"y", c.y},
          {"eps", c.eps},
          {"a1", c.a1},
          {"a2", c.a2},
          {"parts", {{"eth", c.eth}, {"Im1", c.Im1}, {"Im2", c.Im2}}},
          {"error_budget", c.error_budget},
          {"flags", c.flags}};
}

json to_json(const expansion::EpsilonInvarianceReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json j = {{"eps", e.eps}, {"in_regime", e.in_regime}, {"ok", e.ok}};
    if (e.ok) {
      j["A2"] = e.tail.A2;
      j["a2"] = e.density.a2;
    } else {
      j["error"] = e.error;
    }
    entries.push_back(j);
  }
  return {{"x", r.x},
          {"y", r.y},
          {"entries", entries},
          {"A2_spread", r.A2_spread},
          {"a2_spread", r.a2_spread},
          {"out_of_regime", r.out_of_regime}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Small-time tail, density and option-price expansions for jump diffusions", "jdx"};
  app.require_subcommand(1);

  Common c_check, c_tail, c_density, c_validate, c_price;
  auto* check = app.add_subcommand("check", "check model conditions");
  add_common(check, c_check, "json");

  TailArgs ta;
  auto* tail = app.add_subcommand("tail", "tail coefficients A1, A2");
  add_common(tail, c_tail, "json");
  tail->add_option("--x", ta.xs, "start point(s)")->delimiter(',');
  tail->add_option("--y", ta.ys, "level(s) y > 0")->delimiter(',')->required();
  tail->add_option("--t", ta.t, "also report t A1 + t^2/2 A2");
  tail->add_option("--eps-sweep", ta.eps_sweep, "eps list for the invariance report")->delimiter(',');

  DensityArgs da;
  auto* density = app.add_subcommand("density", "density coefficients a1, a2");
  add_common(density, c_density, "json");
  density->add_option("--x", da.xs, "start point(s)")->delimiter(',');
  density->add_option("--y", da.ys, "level(s) y > 0")->delimiter(',')->required();
  density->add_flag("--check-dy", da.check_dy, "compare with -d/dy of the tail coefficients");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Monte Carlo check of the tail expansion");
  add_common(validate, c_validate, "csv");
  validate->add_option("--x", va.x)->capture_default_str();
  validate->add_option("--y", va.y)->capture_default_str();
  validate->add_option("--t-grid", va.t_grid, "increasing t values (>= 4)")->delimiter(',');
  validate->add_option("--dump-samples", va.dump_prefix, "write JDXSAMP1 files with this prefix");
  add_mc(validate, va.mc);

  PriceArgs pa;
  auto* price = app.add_subcommand("price", "leading-order OTM call price");
  add_common(price, c_price, "json");
  price->add_option("--spot", pa.spot)->required();
  price->add_option("--strike", pa.strike)->required();
  price->add_option("--t", pa.t)->capture_default_str();
  price->add_flag("--mc", pa.mc, "add a Monte Carlo estimate at maturity t");
  add_mc(price, pa.mcf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(c_check, out);
    if (tail->parsed()) return cmd_tail(c_tail, ta, out);
    if (density->parsed()) return cmd_density(c_density, da, out);
    if (validate->parsed()) return cmd_validate(c_validate, va, out);
    if (price->parsed()) return cmd_price(c_price, pa, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace jdx::cli
