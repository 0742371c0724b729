#include "thorin/densities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "thorin/bernstein.hpp"
#include "thorin/error.hpp"
#include "thorin/quadrature.hpp"
#include "thorin/samplers.hpp"
#include "thorin/special.hpp"

namespace thorin {

namespace {

constexpr double pi = std::numbers::pi;

// alpha for galpha:a and arcsine (= galpha:1/2); NaN otherwise.
double alpha_index(const MixingLaw& g) {
  if (const auto* a = g.as<GAlpha>()) return a->alpha;
  if (g.as<ArcSine>()) return 0.5;
  return std::nan("");
}

bool near(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)); }

const MixingLaw* inner_of(const MixingLaw& g) { return g.inner(); }

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

Moments mean_se(const std::vector<double>& v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  if (v.empty()) return m;
  for (double x : v) m.mean += x;
  m.mean /= n;
  double sq = 0.0;
  for (double x : v) sq += (x - m.mean) * (x - m.mean);
  m.se = v.size() > 1 ? std::sqrt(sq / (n - 1.0) / n) : 0.0;
  return m;
}

void check_x_t(double x, double t, const char* who) {
  require(x > 0.0 && std::isfinite(x), std::string(who) + ": x must be positive");
  require(t > 0.0 && std::isfinite(t), std::string(who) + ": t must be positive");
}

// The law of 1/G, unwrapping a reciprocal instead of nesting one.
MixingLaw reciprocal_law(const MixingLaw& g) {
  if (const auto* in = g.inner()) return *in;
  return MixingLaw::reciprocal(g);
}

double dual_kernel(double x, double d) { return std::exp(-x * d); }

double bessel_kernel(double x, double t, double gam) {
  const double z = 2.0 * std::sqrt(x * gam);
  if (z < 1e-150) return std::pow(x, t - 1.0) / std::tgamma(t);
  return std::pow(gam / x, 0.5 * (1.0 - t)) * special::bessel_j(t - 1.0, z);
}

}  // namespace

double DensityGrid::trapezoid() const {
  const auto& x = abscissae;
  const auto& f = values;
  if (x.size() < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
  // Extend to 0 with f ~ c x^k fitted on the first two points (k > -1).
  if (x[0] > 0.0 && f[0] > 0.0 && f[1] > 0.0) {
    const double k = std::log(f[1] / f[0]) / std::log(x[1] / x[0]);
    if (k > -1.0) s += f[0] * x[0] / (k + 1.0);
  }
  return s;
}

std::vector<double> dirichlet_mean_draws(const MixingLaw& g, double t, std::size_t n, std::uint64_t seed,
                                         int n_steps) {
  require(t > 0.0 && std::isfinite(t), "dirichlet_mean_draws: t must be positive");
  if (has_closed_form(g, t))
    return generate_values(n, seed, [&](RandomStream& r) { return closed_form_dirichlet(r, g, t); });
  const WienerGamma wg(g, t, n_steps);
  return generate_values(n, seed, [&](RandomStream& r) { return wg.dirichlet_mean(r); });
}

std::vector<double> ggc_draws(const MixingLaw& g, double t, std::size_t n, std::uint64_t seed, int n_steps) {
  require(t > 0.0 && std::isfinite(t), "ggc_draws: t must be positive");
  if (has_closed_form(g, t))
    return generate_values(n, seed, [&](RandomStream& r) { return closed_form_sample(r, g, t); });
  const WienerGamma wg(g, t, n_steps);
  return generate_values(n, seed, [&](RandomStream& r) { return wg.sample(r); });
}

DensityGrid ggc_density_dual_mc(const std::vector<double>& xs, double t, const MixingLaw& g,
                                const std::vector<double>& d_draws) {
  require(!d_draws.empty(), "ggc_density_dual_mc: no draws");
  const double elog = g.log_moment();
  DensityGrid out;
  out.method = "dual-mc";
  std::vector<double> k(d_draws.size());
  for (double x : xs) {
    check_x_t(x, t, "ggc_density_dual_mc");
    for (std::size_t i = 0; i < d_draws.size(); ++i) k[i] = dual_kernel(x, d_draws[i]);
    const auto m = mean_se(k);
    const double pre = std::exp((t - 1.0) * std::log(x) - std::lgamma(t) - t * elog);
    out.abscissae.push_back(x);
    out.values.push_back(pre * m.mean);
    out.errors.push_back(pre * m.se);
  }
  return out;
}

DensityValue ggc_density_dual_mc(double x, double t, const MixingLaw& g, std::size_t n_mc, RandomStream& rng) {
  check_x_t(x, t, "ggc_density_dual_mc");
  const auto draws = dirichlet_mean_draws(g, t, n_mc, rng.next_u64());
  const auto grid = ggc_density_dual_mc(std::vector<double>{x}, t, g, draws);
  return {grid.values[0], grid.errors[0], false};
}

DensityGrid ggc_density_bessel_mc(const std::vector<double>& xs, double t, const MixingLaw& g,
                                  const std::vector<double>& gamma_draws) {
  require(!gamma_draws.empty(), "ggc_density_bessel_mc: no draws");
  const double elog = g.log_moment();
  DensityGrid out;
  out.method = "bessel-mc";
  std::vector<double> k(gamma_draws.size());
  for (double x : xs) {
    check_x_t(x, t, "ggc_density_bessel_mc");
    for (std::size_t i = 0; i < gamma_draws.size(); ++i) k[i] = bessel_kernel(x, t, gamma_draws[i]);
    const auto m = mean_se(k);
    const double pre = std::exp(-t * elog);
    out.abscissae.push_back(x);
    out.values.push_back(pre * m.mean);
    out.errors.push_back(pre * m.se);
  }
  return out;
}

DensityValue ggc_density_bessel_mc(double x, double t, const MixingLaw& g, std::size_t n_mc, RandomStream& rng) {
  check_x_t(x, t, "ggc_density_bessel_mc");
  const auto draws = ggc_draws(g, t, n_mc, rng.next_u64());
  std::size_t wide = 0;
  for (double v : draws)
    if (2.0 * std::sqrt(x * v) > 25.0) ++wide;
  const auto grid = ggc_density_bessel_mc(std::vector<double>{x}, t, g, draws);
  return {grid.values[0], grid.errors[0], wide * 10 > draws.size()};
}

bool has_closed_density(const MixingLaw& g, double t) {
  if (!(t > 0.0)) return false;
  if (g.as<PointMass>() || g.as<ArcSine>()) return true;
  const double a = alpha_index(g);
  if (std::isfinite(a)) return near(t, 1.0 - a);
  if (const auto* s = g.as<ShiftedG0>()) return s->mu > 0.0 && near(t, 1.0);
  if (g.as<Uniform01>()) return near(t, 1.0);
  if (const auto* in = inner_of(g)) {
    if (in->as<ArcSine>()) return true;
    const double ai = alpha_index(*in);
    if (std::isfinite(ai)) return near(t, 1.0 - ai);
    if (in->as<ShiftedG0>() || in->as<Uniform01>()) return near(t, 1.0);
  }
  return false;
}

DensityValue density_closed(const MixingLaw& g, double t, double x) {
  check_x_t(x, t, "density_closed");
  if (!has_closed_density(g, t))
    fail(ErrorCode::UnsupportedFamily, "no closed density for Gamma_t(" + g.name() + ") at t = " + std::to_string(t));
  if (const auto* p = g.as<PointMass>()) {
    // gamma_t / a
    return {std::exp(t * std::log(p->a) + (t - 1.0) * std::log(x) - p->a * x - std::lgamma(t)), 0.0};
  }
  if (g.as<ArcSine>()) {
    // The beta integral equals sqrt(pi) Gamma(t+1/2) x^{-t} e^{-x/2} I_t(x/2).
    return {t / x * special::bessel_i_scaled(t, 0.5 * x), 0.0};
  }
  if (const auto* ga = g.as<GAlpha>()) {
    const double a = ga->alpha;
    return {a / std::tgamma(1.0 - a) * std::exp(-(1.0 + a) * std::log(x)) * -std::expm1(-x), 0.0};
  }
  if (const auto* s = g.as<ShiftedG0>()) {
    const double mu = s->mu;
    return {std::exp(-mu * x) * -std::expm1(-x) / (x * std::log1p(1.0 / mu)), 0.0};
  }
  if (g.as<Uniform01>()) {
    auto r = quad::finite([&](double y) {
      if (y <= 0.0 || y >= 1.0) return 0.0;
      return std::exp(-x * y - y * std::log(y) - (1.0 - y) * std::log1p(-y)) * std::sin(pi * y);
    }, 0.0, std::min(1.0, 800.0 / x), 1e-12);
    return {r.value / pi, r.error / pi};
  }
  const MixingLaw& in = *inner_of(g);
  if (in.as<ArcSine>()) {
    // e^{-x} int_0^1 e^{-x(1/y - 1)} y^{-1/2} (1-y)^{t-1/2} dy
    auto r = quad::algebraic([&](double y) { return y > 0.0 ? std::exp(-x * (1.0 / y - 1.0)) : 0.0; }, 0.0, 1.0,
                             -0.5, t - 0.5, 1e-12);
    const double c = std::exp(std::log(t) + 2.0 * t * std::log(2.0) - std::lgamma(t + 0.5) - 0.5 * std::log(pi) +
                              (t - 1.0) * std::log(x) - x);
    return {c * r.value, c * r.error};
  }
  const double ai = alpha_index(in);
  if (std::isfinite(ai)) {
    auto r = quad::algebraic([&](double w) { return w > 0.0 ? std::exp(-x * (1.0 / w - 1.0)) : 0.0; }, 0.0, 1.0,
                             ai - 1.0, 0.0, 1e-12);
    const double c = std::exp(-ai * std::log(x) - std::lgamma(1.0 - ai) - x);
    return {c * r.value, c * r.error};
  }
  if (const auto* s = in.as<ShiftedG0>()) {
    const double mu = s->mu;
    if (mu == 0.0) return {boost::math::expint(1, x), 0.0};
    auto r = quad::finite([&](double y) { return std::exp(-x / (mu + y)) / (mu + y); }, 0.0, 1.0, 1e-12);
    return {r.value, r.error};
  }
  // reciprocal(uniform)
  auto r = quad::finite([&](double y) {
    if (y <= 0.0 || y >= 1.0) return 0.0;
    return std::exp(-x / y - (y + 1.0) * std::log(y) - (1.0 - y) * std::log1p(-y)) * std::sin(pi * y);
  }, 0.0, 1.0, 1e-12);
  return {std::numbers::e / pi * r.value, std::numbers::e / pi * r.error};
}

bool has_closed_mean_density(const MixingLaw& g, double t) {
  if (!(t > 0.0)) return false;
  if (g.as<ArcSine>()) return true;
  const double a = alpha_index(g);
  if (std::isfinite(a)) return near(t, 1.0 - a);
  if (const auto* s = g.as<ShiftedG0>()) return s->mu > 0.0 && near(t, 1.0);
  if (g.as<Uniform01>()) return near(t, 1.0);
  if (const auto* in = inner_of(g)) {
    if (in->as<ArcSine>()) return true;
    const double ai = alpha_index(*in);
    if (std::isfinite(ai)) return near(t, 1.0 - ai);
    if (in->as<ShiftedG0>() || in->as<Uniform01>()) return near(t, 1.0);
  }
  return false;
}

double dirichlet_mean_density(const MixingLaw& g, double t, double x) {
  require(t > 0.0 && std::isfinite(t), "dirichlet_mean_density: t must be positive");
  if (!has_closed_mean_density(g, t))
    fail(ErrorCode::UnsupportedFamily, "no closed density for D_t(" + g.name() + ") at t = " + std::to_string(t));
  if (!(x > 0.0)) return 0.0;
  if (g.as<ArcSine>()) {
    if (x <= 1.0) return 0.0;
    return boost::math::ibeta_derivative(0.5, t + 0.5, 1.0 / x) / (x * x);
  }
  if (const auto* ga = g.as<GAlpha>()) {
    const double a = ga->alpha;
    return x < 1.0 ? 0.0 : a * std::exp(-(1.0 + a) * std::log(x));
  }
  if (const auto* s = g.as<ShiftedG0>()) {
    const double mu = s->mu;
    if (x < 1.0 / (mu + 1.0) || x > 1.0 / mu) return 0.0;
    return 1.0 / (x * std::log1p(1.0 / mu));
  }
  if (g.as<Uniform01>()) {
    if (x <= 1.0) return 0.0;
    return std::sin(pi / x) / pi * std::exp(-(1.0 - 1.0 / x) * std::log(x - 1.0));
  }
  const MixingLaw& in = *inner_of(g);
  if (in.as<ArcSine>()) return x >= 1.0 ? 0.0 : boost::math::ibeta_derivative(t + 0.5, t + 0.5, x);
  if (std::isfinite(alpha_index(in))) return x < 1.0 ? 1.0 : 0.0;
  if (const auto* s = in.as<ShiftedG0>()) return x >= s->mu && x <= s->mu + 1.0 ? 1.0 : 0.0;
  // reciprocal(uniform)
  if (x >= 1.0) return 0.0;
  return std::numbers::e * std::sin(pi * x) / pi * std::exp(-x * std::log(x) - (1.0 - x) * std::log1p(-x));
}

double expected_log_distance(const MixingLaw& g, double x) {
  require(x > 0.0 && std::isfinite(x), "expected_log_distance: x must be positive");
  if (const auto* p = g.as<PointMass>()) return std::log(std::fabs(x - 1.0 / p->a));
  const MixingLaw h = reciprocal_law(g);
  if (const auto* p = h.as<PointMass>()) return std::log(std::fabs(x - p->a));
  auto logd = [&](double q) { return std::log(std::fabs(x - q)); };
  const Support sup = h.support();
  auto qlo = [&](double p) { return p <= 0.0 ? sup.lo : (p >= 1.0 ? sup.hi : h.quantile(p)); };
  auto qhi = [&](double s) { return s <= 0.0 ? sup.hi : (s >= 1.0 ? sup.lo : h.quantile_upper(s)); };
  const double ps = std::clamp(h.cdf(x), 0.0, 1.0);
  quad::Result lo, hi;
  if (ps > 0.0) {
    lo = quad::finite_c([&](double p, double d) {
      return logd(d < 0.0 ? qlo(-d) : (d > 0.0 ? qlo(ps - d) : qlo(p)));
    }, 0.0, ps, 1e-10);
  }
  if (ps < 1.0) {
    hi = quad::finite_c([&](double p, double d) {
      return logd(d < 0.0 ? qlo(ps - d) : (d > 0.0 ? qhi(d) : qlo(p)));
    }, ps, 1.0, 1e-10);
  }
  const double v = lo.value + hi.value;
  if (!std::isfinite(v)) fail(ErrorCode::Divergent, "E log|x - 1/G| is not finite for " + g.name());
  return v;
}

double dirichlet_mean_density_bernoulli(double x, double t, const MixingLaw& g) {
  require(t > 0.0 && t < 1.0, "dirichlet_mean_density_bernoulli: t must lie in (0, 1)");
  require(x > 0.0 && std::isfinite(x), "dirichlet_mean_density_bernoulli: x must be positive");
  const double f = std::clamp(g.cdf(1.0 / x), 0.0, 1.0);
  const double s = std::sin(pi * t * f);
  if (s <= 0.0) return 0.0;
  return s / pi * std::exp((t - 1.0) * std::log(x) - t * expected_log_distance(g, x));
}

namespace {

double theta_t(double u, double t, const MixingLaw& g, const MixingLaw& h) {
  const double f = std::clamp(h.cdf(u), 0.0, 1.0);
  const double s = std::sin(t * pi * f);
  if (s <= 0.0) return 0.0;
  return s / pi * std::exp(-t * expected_log_distance(g, u));
}

}  // namespace

double dirichlet_mean_density_t_le_1(double x, double t, const MixingLaw& g) {
  require(t > 0.0 && t <= 1.0, "dirichlet_mean_density_t_le_1: t must lie in (0, 1]");
  require(x > 0.0 && std::isfinite(x), "dirichlet_mean_density_t_le_1: x must be positive");
  const MixingLaw h = reciprocal_law(g);
  if (t == 1.0) return theta_t(x, 1.0, g, h);
  const double a = std::max(0.0, h.support().lo);
  if (x <= a) return 0.0;
  auto frac = [&](double y) {
    return quad::algebraic([&](double u) { return theta_t(u, t, g, h); }, a, y, 0.0, t - 1.0, 1e-11).value;
  };
  const double step = 0.02 * (x - a);
  auto diff = [&](double hh) { return (frac(x + hh) - frac(x - hh)) / (2.0 * hh); };
  const double d1 = diff(step), d2 = diff(0.5 * step);
  return std::max(0.0, (4.0 * d2 - d1) / 3.0);
}

double mean_density_dual(double x, double t, const std::function<double(double)>& f_dt_g, double elog_g) {
  require(x > 0.0 && std::isfinite(x), "mean_density_dual: x must be positive");
  const double f = f_dt_g(1.0 / x);
  if (f == 0.0) return 0.0;
  return std::exp((t - 2.0) * std::log(x) - t * elog_g) * f;
}

DensityGrid sigma_u_density_mc(const std::vector<double>& xs, double t, const MixingLaw& g, double u,
                               const std::vector<double>& d_draws) {
  require(u >= 0.0 && u <= 50.0, "sigma_u_density_mc: u must lie in [0, 50]");
  require(!d_draws.empty(), "sigma_u_density_mc: no draws");
  const double ch = std::cosh(u), th = std::tanh(u);
  const double k = moebius_k(g, std::sinh(u), ch);
  DensityGrid out;
  out.method = "sigma-u-mc";
  std::vector<double> v(d_draws.size());
  for (double x : xs) {
    check_x_t(x, t, "sigma_u_density_mc");
    for (std::size_t i = 0; i < d_draws.size(); ++i) {
      const double w = 1.0 + d_draws[i] * th;  // (cosh u + D sinh u) / cosh u
      v[i] = std::exp(-t * std::log(w) - x * d_draws[i] / (ch * ch * w));
    }
    const auto m = mean_se(v);
    const double pre =
        std::exp((t - 1.0) * std::log(x) - x * th - t * k - t * std::log(ch) - std::lgamma(t));
    out.abscissae.push_back(x);
    out.values.push_back(pre * m.mean);
    out.errors.push_back(pre * m.se);
  }
  return out;
}

DensityValue sigma_u_density_mc(double x, double t, const MixingLaw& g, double u, std::size_t n_mc,
                                RandomStream& rng) {
  check_x_t(x, t, "sigma_u_density_mc");
  const auto draws = dirichlet_mean_draws(g, t, n_mc, rng.next_u64());
  const auto grid = sigma_u_density_mc(std::vector<double>{x}, t, g, u, draws);
  return {grid.values[0], grid.errors[0], false};
}

}  // namespace thorin
