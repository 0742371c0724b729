#include "thorin/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "thorin/error.hpp"
#include "thorin/quadrature.hpp"
#include "thorin/special.hpp"

namespace thorin {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_t(double t, const char* who) {
  require(t > 0.0 && t < 1.0, std::string(who) + ": t must lie in (0, 1)");
}

// Lambda_t of the ratio above/below, with the one-sided limits.
double lambda_of(double t, double above, double below) {
  if (above <= 0.0 && below <= 0.0)
    fail(ErrorCode::InsufficientMass, "no mass of D_t(G) on either side of x");
  if (below <= 0.0) return 1.0;
  if (above <= 0.0) return 0.0;
  return special::lambda_t(t, above / below);
}

// Spread in Lambda_t when log(above/below) moves by +-eps.
double lambda_spread(double t, double above, double below, double eps) {
  if (!(above > 0.0 && below > 0.0) || !(eps > 0.0)) return 0.0;
  const double r = above / below;
  return 0.5 * std::fabs(special::lambda_t(t, r * std::exp(eps)) - special::lambda_t(t, r * std::exp(-eps)));
}

// int_0^inf v^{-t} g(v) dv split at w: algebraic near 0, one panel per decade beyond.
quad::Result weighted_half_line(const std::function<double(double)>& g, double t, double w) {
  const quad::Result a = quad::algebraic(g, 0.0, w, -t, 0.0, 1e-11);
  const quad::Result b = quad::decades([&](double s) { return std::pow(w * s, -t) * g(w * s) * w; }, 0, 30, 1e-11);
  return {a.value + b.value, a.error + b.error};
}

}  // namespace

bool RecoveredCdf::monotone(double slack) const {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double tol = slack + (errors.empty() ? 0.0 : 3.0 * (errors[i] + errors[i + 1]));
    if (values[i + 1] > values[i] + tol) return false;
  }
  return true;
}

OneSided one_sided_moments(const std::vector<double>& d, double x, double t) {
  check_t(t, "one_sided_moments");
  require(d.size() >= 2, "one_sided_moments: need at least two draws");
  const std::size_t n = d.size();
  const std::size_t i = static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), x) - d.begin());
  const std::size_t k = std::max<std::size_t>(32, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
  double delta = kInf;
  if (i < n) delta = std::min(delta, d[std::min(i + k - 1, n - 1)] - x);
  if (i > 0) delta = std::min(delta, x - d[i - std::min(i, k)]);
  if (!(delta > 0.0)) delta = std::numeric_limits<double>::min();

  // Each draw inside the window contributes the window average delta^{-t}/(1-t).
  const double inner = std::pow(delta, -t) / (1.0 - t);
  double sa = 0.0, sa2 = 0.0, sb = 0.0, sb2 = 0.0;
  std::size_t ca = 0, cb = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = d[j] - x;
    double v;
    if (std::fabs(u) <= delta) {
      v = inner;
      (u >= 0.0 ? ca : cb) += 1;
    } else {
      v = std::pow(std::fabs(u), -t);
    }
    if (u >= 0.0) {
      sa += v;
      sa2 += v * v;
    } else {
      sb += v;
      sb2 += v * v;
    }
  }
  const double nn = static_cast<double>(n);
  OneSided r;
  r.above = sa / nn;
  r.below = sb / nn;
  r.above_se = std::sqrt(std::max(0.0, sa2 / nn - r.above * r.above) / nn);
  r.below_se = std::sqrt(std::max(0.0, sb2 / nn - r.below * r.below) / nn);
  r.window = delta;
  // A density slope f' across the window shifts each side by about
  // f' delta^{2-t} t / (2 (2-t) (1-t)); f' is estimated from the two half-window counts.
  const double slope = std::fabs(static_cast<double>(ca) - static_cast<double>(cb)) / (nn * delta * delta);
  r.bias_bound = slope * std::pow(delta, 2.0 - t) * t / (2.0 * (2.0 - t) * (1.0 - t));
  return r;
}

OneSided one_sided_moments(const std::function<double(double)>& f, double lo, double hi, double x, double t) {
  check_t(t, "one_sided_moments");
  require(lo < hi, "one_sided_moments: empty support");
  OneSided r;
  quad::Result a, b;
  if (x < hi) {
    const double from = std::max(x, lo);
    if (std::isfinite(hi)) {
      if (x >= lo) {
        a = quad::algebraic(f, x, hi, -t, 0.0, 1e-11);
      } else {
        a = quad::finite([&](double y) { return std::pow(y - x, -t) * f(y); }, lo, hi, 1e-11);
      }
    } else if (x >= lo) {
      a = weighted_half_line([&](double v) { return f(x + v); }, t, std::max(1.0, std::fabs(x)));
    } else {
      const double w = std::max(1.0, std::fabs(from));
      const quad::Result n1 = quad::finite([&](double y) { return std::pow(y - x, -t) * f(y); }, from, from + w, 1e-11);
      const quad::Result n2 =
          quad::decades([&](double s) { return std::pow(from + w * s - x, -t) * f(from + w * s) * w; }, 0, 30, 1e-11);
      a = {n1.value + n2.value, n1.error + n2.error};
    }
  }
  if (x > lo) {
    if (x <= hi) {
      b = quad::algebraic(f, lo, x, 0.0, -t, 1e-11);
    } else {
      b = quad::finite([&](double y) { return std::pow(x - y, -t) * f(y); }, lo, hi, 1e-11);
    }
  }
  r.above = a.value;
  r.below = b.value;
  r.above_se = a.error;
  r.below_se = b.error;
  return r;
}

RecoveredCdf recover_cdf_ratio(const std::vector<double>& xs, double t, std::vector<double> d) {
  check_t(t, "recover_cdf_ratio");
  std::sort(d.begin(), d.end());
  RecoveredCdf out;
  out.t = t;
  out.method = "ratio-mc";
  for (double x : xs) {
    require(x > 0.0 && std::isfinite(x), "recover_cdf_ratio: x must be positive");
    const OneSided m = one_sided_moments(d, x, t);
    const double v = lambda_of(t, m.above, m.below);
    double rel = 0.0, bias = 0.0;
    if (m.above > 0.0 && m.below > 0.0) {
      rel = std::hypot(m.above_se / m.above, m.below_se / m.below);
      bias = lambda_spread(t, m.above, m.below, m.bias_bound / m.above + m.bias_bound / m.below);
    }
    out.abscissae.push_back(x);
    out.values.push_back(v);
    out.errors.push_back(lambda_spread(t, m.above, m.below, rel));
    out.max_window = std::max(out.max_window, m.window);
    out.max_bias_bound = std::max(out.max_bias_bound, bias);
  }
  return out;
}

RecoveredCdf recover_cdf_ratio(const std::vector<double>& xs, double t, const std::function<double(double)>& f,
                               double lo, double hi) {
  check_t(t, "recover_cdf_ratio");
  RecoveredCdf out;
  out.t = t;
  out.method = "ratio-quadrature";
  for (double x : xs) {
    require(x > 0.0 && std::isfinite(x), "recover_cdf_ratio: x must be positive");
    const OneSided m = one_sided_moments(f, lo, hi, x, t);
    out.abscissae.push_back(x);
    out.values.push_back(lambda_of(t, m.above, m.below));
    double rel = 0.0;
    if (m.above > 0.0 && m.below > 0.0) rel = m.above_se / m.above + m.below_se / m.below;
    out.errors.push_back(lambda_spread(t, m.above, m.below, rel));
  }
  return out;
}

double recover_cdf_density_form(double x, double t, const std::function<double(double)>& f_g_over_y,
                                const std::function<double(double)>& f_inv_g_over_y, double elog_g) {
  check_t(t, "recover_cdf_density_form");
  require(x > 0.0 && std::isfinite(x), "recover_cdf_density_form: x must be positive");
  const double num = f_g_over_y(x);
  const double den = std::exp((t - 2.0) * std::log(x) + t * elog_g) * f_inv_g_over_y(1.0 / x);
  if (!(den > std::numeric_limits<double>::min()))
    fail(ErrorCode::Degenerate, "recover_cdf_density_form: denominator density underflows");
  return special::lambda_t(t, num / den);
}

double pareto_limit_gap(double m, double s) {
  require(m > 0.0 && s > 0.0, "pareto_limit_gap: m and s must be positive");
  auto c_int = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double su = s + u;
    return std::exp(-u + m * std::log1p(u / s)) * ((1.0 - m / su) * std::log(u / su) + 1.0 / su);
  };
  const quad::Result c1 = quad::finite(c_int, 0.0, 1.0, 1e-11);
  const quad::Result c2 = quad::upper(c_int, 1.0, 1e-11);
  const quad::Result ct = quad::finite_c([&](double u, double dist) {
    // 1 - u kept accurate near the right end.
    const double v = dist > 0.0 ? dist : 1.0 - u;
    if (u <= 0.0 || v <= 0.0) return 0.0;
    const double l = std::log(u / v);
    return std::exp(s * u + (m - 1.0) * std::log(v)) * (-1.0 + (m - s * v) * l);
  }, 0.0, 1.0, 1e-11);
  return c1.value + c2.value - ct.value;
}

double pareto_thorin_cdf(double m, double z, double theta) {
  require(m > 0.0 && std::isfinite(m), "pareto_thorin_cdf: m must be positive");
  require(z > 0.0 && std::isfinite(z), "pareto_thorin_cdf: z must be positive");
  require(theta > 0.0 && theta <= 1.0, "pareto_thorin_cdf: theta must lie in (0, 1]");
  if (theta == 1.0) return std::atan2(pi, pareto_limit_gap(m, 1.0 / z)) / pi;
  // With D = 1/gamma_m the one-sided moments at x = z share the factor
  // z^{-theta-m}/Gamma(m); what remains is
  //   above: B = int_0^1 e^{-u/z} u^{m+theta-1} (1-u)^{-theta} du,
  //   below: A = int_1^inf e^{-w/z} w^{m+theta-1} (w-1)^{-theta} dw,
  // evaluated after u = z s and w = 1 + z v so that neither underflows.
  const double mt = m + theta - 1.0;
  const double len = 1.0 / z;
  double log_b;
  if (len <= 80.0) {
    const quad::Result ib = quad::algebraic([](double s) { return std::exp(-s); }, 0.0, len, mt, -theta, 1e-11);
    log_b = (m + theta) * std::log(z) - theta * std::log(z) + std::log(ib.value);
  } else {
    const quad::Result ib = quad::algebraic([&](double s) { return std::exp(-s - theta * std::log1p(-z * s)); }, 0.0,
                                            60.0, mt, 0.0, 1e-11);
    log_b = (m + theta) * std::log(z) + std::log(ib.value);
  }
  const quad::Result ia = quad::algebraic_upper([&](double v) { return std::exp(-v + mt * std::log1p(z * v)); }, 0.0,
                                                -theta, 1e-11);
  const double log_a = -1.0 / z + (1.0 - theta) * std::log(z) + std::log(ia.value);
  return special::lambda_t(theta, std::exp(log_b - log_a));
}

double stable_power_thorin_cdf(double alpha, double y) {
  check_t(alpha, "stable_power_thorin_cdf");
  require(y > 0.0 && std::isfinite(y), "stable_power_thorin_cdf: y must be positive");
  const OneSided m =
      one_sided_moments([&](double s) { return s > 0.0 ? special::stable_pdf(alpha, s) : 0.0; }, 0.0, kInf, y, alpha);
  return lambda_of(alpha, m.above, m.below);
}

double lemma24_residual(double alpha, const std::function<double(double)>& f, const std::vector<double>& ys,
                        double c) {
  check_t(alpha, "lemma24_residual");
  double worst = 0.0;
  for (double y : ys) {
    require(y > 0.0 && std::isfinite(y), "lemma24_residual: y must be positive");
    const double e = quad::algebraic(f, 0.0, y, 0.0, -alpha, 1e-11).value;
    worst = std::max(worst, std::fabs(y * f(y) - c * e));
  }
  return worst;
}

}  // namespace thorin
