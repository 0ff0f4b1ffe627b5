#include "jdx/numint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "jdx/errors.hpp"

namespace jdx::numint {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b;
  double value, error, resabs;
  bool operator<(const Panel& o) const { return error < o.error; }
};

double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (std::isnan(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned NaN at abscissa " << x;
    throw NumericError(os.str());
  }
  return v;
}

Panel gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = checked(f, c);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  double ra = std::abs(rk);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = checked(f, c - dx);
    const double f2 = checked(f, c + dx);
    rk += kWgk[j] * (f1 + f2);
    ra += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
  }
  Panel p{a, b, rk * h, std::abs((rk - rg) * h), ra * std::abs(h)};
  // Panels whose discrepancy is pure rounding cannot be improved.
  p.error = std::max(p.error, 50.0 * kEps * p.resabs);
  return p;
}

QuadratureResult adapt_finite(const Integrand& f, double a, double b,
                              const QuadratureConfig& cfg) {
  std::priority_queue<Panel> heap;
  std::vector<Panel> done;
  QuadratureResult r;
  Panel first = gk15(f, a, b);
  r.evaluations = 15;
  heap.push(first);
  double total = first.value, err = first.error, resabs = first.resabs;

  auto tolerance = [&] {
    return std::max({cfg.abs_tol, cfg.rel_tol * std::abs(total),
                     100.0 * kEps * resabs});
  };

  while (!heap.empty() && err > tolerance()) {
    if (r.evaluations + 30 > cfg.max_evaluations) break;
    Panel p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    const bool unsplittable =
        p.error <= 50.0 * kEps * p.resabs || !(m > p.a && m < p.b) ||
        std::abs(p.b - p.a) < 4.0 * kEps * std::max(std::abs(p.a), std::abs(p.b));
    if (unsplittable) {
      done.push_back(p);
      continue;
    }
    Panel l = gk15(f, p.a, m);
    Panel rr = gk15(f, m, p.b);
    r.evaluations += 30;
    total += l.value + rr.value - p.value;
    err += l.error + rr.error - p.error;
    resabs += l.resabs + rr.resabs - p.resabs;
    heap.push(l);
    heap.push(rr);
  }
  // the running sums can drift from the final re-summation by a few ulp
  const bool met = err <= tolerance();
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  // Fixed reduction order by interval position.
  std::sort(done.begin(), done.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double v = 0.0, e = 0.0, ra = 0.0;
  for (const auto& p : done) {
    v += p.value;
    e += p.error;
    ra += p.resabs;
  }
  r.value = v;
  r.abs_error = e;
  r.converged = met || e <= std::max({cfg.abs_tol, cfg.rel_tol * std::abs(v),
                                     100.0 * kEps * ra});
  return r;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw ParameterError("quadrature tolerances must be positive");
  if (max_evaluations < 100)
    throw ParameterError("max_evaluations must be at least 100");
  if (!(tail_map > 0.0)) throw ParameterError("tail_map must be positive");
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& o) {
  value += o.value;
  abs_error += o.abs_error;
  evaluations += o.evaluations;
  converged = converged && o.converged;
  return *this;
}

QuadratureResult QuadratureResult::operator-() const {
  QuadratureResult r = *this;
  r.value = -value;
  return r;
}

QuadratureResult operator+(QuadratureResult a, const QuadratureResult& b) {
  a += b;
  return a;
}

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  if (std::isnan(a) || std::isnan(b))
    throw ParameterError("integration limits must not be NaN");
  if (a == b) return {};
  if (a > b) return -integrate_adaptive(f, b, a, cfg);

  const double s = cfg.tail_map;
  const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    QuadratureConfig half = cfg;
    half.abs_tol = 0.5 * cfg.abs_tol;
    return integrate_adaptive(f, a, 0.0, half) +
           integrate_adaptive(f, 0.0, b, half);
  }
  if (hi_inf) {
    Integrand g = [&f, a, s](double u) {
      const double q = 1.0 - u;
      const double z = a + s * u / q;
      if (std::isinf(z)) return 0.0;
      const double v = f(z);
      return v == 0.0 ? 0.0 : v * s / (q * q);
    };
    return adapt_finite(g, 0.0, 1.0, cfg);
  }
  if (lo_inf) {
    Integrand g = [&f, b, s](double u) {
      const double q = 1.0 - u;
      const double z = b - s * u / q;
      if (std::isinf(z)) return 0.0;
      const double v = f(z);
      return v == 0.0 ? 0.0 : v * s / (q * q);
    };
    return adapt_finite(g, 0.0, 1.0, cfg);
  }
  return adapt_finite(f, a, b, cfg);
}

QuadratureResult integrate_compensated(const Integrand& psi, const Integrand& w,
                                       double eps, const QuadratureConfig& cfg,
                                       double split) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (!(split > 0.0 && split <= 1.0))
    throw ParameterError("split fraction must lie in (0, 1]");
  constexpr double kTiny = 1e-150;
  QuadratureConfig quarter = cfg;
  quarter.abs_tol = 0.25 * cfg.abs_tol;
  const double cut = split * eps;
  QuadratureResult total;
  for (const double sign : {1.0, -1.0}) {
    // |z| in (0, cut]: z = sign * e^u.
    Integrand inner = [&, sign](double u) {
      const double m = std::exp(u);
      if (m < kTiny) return 0.0;
      const double z = sign * m;
      const double wz = w(z);
      if (wz == 0.0) return 0.0;
      return psi(z) * m * m * m * wz;
    };
    total += integrate_adaptive(inner, -std::numeric_limits<double>::infinity(),
                                std::log(cut), quarter);
    if (cut < eps) {
      Integrand outer = [&, sign](double m) {
        const double z = sign * m;
        const double wz = w(z);
        if (wz == 0.0) return 0.0;
        return psi(z) * m * m * wz;
      };
      total += integrate_adaptive(outer, cut, eps, quarter);
    }
  }
  return total;
}

const QuadratureResult& require_converged(const QuadratureResult& r,
                                          std::string_view what) {
  if (!r.converged) {
    std::ostringstream os;
    os << "quadrature did not converge: " << what << " (estimate " << r.value
       << ", error " << r.abs_error << ", " << r.evaluations << " evaluations)";
    throw NumericError(os.str());
  }
  return r;
}

namespace {

struct GL16Table {
  std::array<double, 16> x{}, w{};
  GL16Table() {
    constexpr int n = 16;
    constexpr double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      // map [-1, 1] -> [0, 1]
      x[i] = 0.5 * (1.0 - z);
      w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GL16Table& gl16() {
  static const GL16Table t;
  return t;
}

}  // namespace

const std::array<double, 16>& GaussLegendre16::nodes() { return gl16().x; }
const std::array<double, 16>& GaussLegendre16::weights() { return gl16().w; }

}  // namespace jdx::numint
