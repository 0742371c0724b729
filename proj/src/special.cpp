#include "thorin/special.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "thorin/error.hpp"
#include "thorin/quadrature.hpp"

namespace thorin::special {

using std::numbers::pi;

namespace {

template <class F>
double guarded(F&& f, const char* what) {
  try {
    return f();
  } catch (const std::overflow_error&) {
    fail(ErrorCode::Overflow, what);
  } catch (const std::domain_error&) {
    fail(ErrorCode::Domain, what);
  } catch (const boost::math::evaluation_error&) {
    fail(ErrorCode::NoConvergence, what);
  }
}

constexpr double kScaledSwitch = 650.0;

}  // namespace

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 170.0) return std::exp(-std::lgamma(x));
  return 1.0 / std::tgamma(x);
}

double bessel_i(double nu, double x) {
  require(x >= 0.0, "bessel_i: x must be nonnegative");
  if (x > kScaledSwitch + 58.0) fail(ErrorCode::Overflow, "bessel_i: use bessel_i_scaled");
  return guarded([&] { return boost::math::cyl_bessel_i(nu, x); }, "bessel_i");
}

double bessel_k(double nu, double x) {
  require(x > 0.0, "bessel_k: x must be positive");
  return guarded([&] { return boost::math::cyl_bessel_k(nu, x); }, "bessel_k");
}

double bessel_j(double nu, double x) {
  require(x >= 0.0, "bessel_j: x must be nonnegative");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0 || nu == std::floor(nu)) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return guarded([&] { return boost::math::cyl_bessel_j(nu, x); }, "bessel_j");
}

namespace {

// Hankel asymptotic series sum_k (+-1)^k a_k(nu) / x^k with
// a_k = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (8 j), summed while terms shrink.
double hankel_series(double nu, double x, double sign) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * sign * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
    if (std::fabs(next) >= std::fabs(term)) break;
    term = next;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_i_scaled(double nu, double x) {
  require(x >= 0.0, "bessel_i_scaled: x must be nonnegative");
  if (x <= kScaledSwitch) return std::exp(-x) * bessel_i(nu, x);
  // The exponentially small e^{-2x} companion term is below double precision here.
  return hankel_series(nu, x, -1.0) / std::sqrt(2.0 * pi * x);
}

double bessel_k_scaled(double nu, double x) {
  require(x > 0.0, "bessel_k_scaled: x must be positive");
  if (x <= kScaledSwitch) return std::exp(x) * bessel_k(nu, x);
  return hankel_series(nu, x, 1.0) * std::sqrt(pi / (2.0 * x));
}

double bessel_j_series(double nu, double x) {
  require(x >= 0.0, "bessel_j_series: x must be nonnegative");
  if (x == 0.0) return bessel_j(nu, 0.0);
  const long double h = 0.5L * x;
  const long double h2 = h * h;
  long double lead = std::pow(h, static_cast<long double>(nu));
  long double sum = 0.0L;
  long double fact = 1.0L;  // k!
  long double pw = 1.0L;    // h^{2k}
  for (int k = 0; k < 300; ++k) {
    if (k > 0) {
      fact *= k;
      pw *= h2;
    }
    long double term = pw / fact * static_cast<long double>(rgamma(k + nu + 1.0));
    if (k % 2) term = -term;
    sum += term;
    if (k > h && std::fabs(term) < 1e-21L * std::fabs(sum)) break;
  }
  return static_cast<double>(lead * sum);
}

double hyp2f1(double a, double b, double c, double z) {
  require(c > b && b > 0.0, "hyp2f1: requires c > b > 0");
  require(z < 1.0, "hyp2f1: requires z < 1");
  if (z == 0.0) return 1.0;
  const double lognorm = std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b);
  auto r = quad::algebraic([&](double t) { return std::pow(1.0 - t * z, -a); }, 0.0, 1.0, b - 1.0,
                           c - b - 1.0, 1e-13);
  return std::exp(lognorm) * r.value;
}

double lambda_t(double t, double y) {
  require(t > 0.0 && t < 1.0, "lambda_t: t must lie in (0,1)");
  require(y >= 0.0, "lambda_t: y must be nonnegative");
  if (std::isinf(y)) return 1.0;
  // atan2 picks the branch in (0, pi) since sin(pi t) > 0.
  return 1.0 - std::atan2(std::sin(pi * t), std::cos(pi * t) + y) / (pi * t);
}

double lambda_t_inv(double t, double x) {
  require(t > 0.0 && t < 1.0, "lambda_t_inv: t must lie in (0,1)");
  require(x >= 0.0 && x <= 1.0, "lambda_t_inv: x must lie in [0,1]");
  if (x == 1.0) return std::numeric_limits<double>::infinity();
  return std::sin(pi * t * x) / std::sin(pi * t * (1.0 - x));
}

double lambda_t_density(double t, double y) {
  require(t > 0.0 && t < 1.0, "lambda_t_density: t must lie in (0,1)");
  if (y < 0.0) return 0.0;
  return std::sin(pi * t) / (pi * t) / (y * y + 2.0 * y * std::cos(pi * t) + 1.0);
}

double kanter(double alpha, double phi, double phi_c) {
  const double sphi = phi < 0.5 * pi ? std::sin(phi) : std::sin(phi_c);
  const double sa = std::sin(alpha * phi);
  const double sb = std::sin((1.0 - alpha) * phi);
  return std::exp((std::log(sa) - std::log(sphi)) / (1.0 - alpha) + std::log(sb) - std::log(sa));
}

namespace {

void check_alpha(double alpha) { require(alpha > 0.0 && alpha < 1.0, "stable: alpha must lie in (0,1)"); }

bool use_series(double alpha, double x) { return std::pow(x, -alpha) < 0.3; }

// (1/pi) sum_k (-1)^{k+1} Gamma(k alpha + shift)/k! sin(k pi alpha) x^{-k alpha}
double tail_series(double alpha, double x, double shift) {
  const double lx = std::log(x);
  double sum = 0.0;
  for (int k = 1; k < 400; ++k) {
    const double lg = std::lgamma(k * alpha + shift) - std::lgamma(k + 1.0) - k * alpha * lx;
    const double term = std::exp(lg) * std::sin(k * pi * alpha);
    sum += (k % 2) ? term : -term;
    if (lg < std::log(1e-18 * std::fabs(sum) + 1e-300)) break;
  }
  return sum / pi;
}

}  // namespace

double stable_pdf(double alpha, double x) {
  check_alpha(alpha);
  require(x > 0.0, "stable_pdf: x must be positive");
  if (use_series(alpha, x)) return tail_series(alpha, x, 1.0) / x;
  const double r = alpha / (1.0 - alpha);
  const double s = std::pow(x, -r);
  const double k0 = std::pow(alpha, r) * (1.0 - alpha);
  auto integrand = [&](double phi, double d) {
    const double phi_c = d > 0.0 ? d : pi - phi;
    const double k = kanter(alpha, d < 0.0 ? -d : phi, phi_c);
    return k * std::exp(-(k - k0) * s);
  };
  const double integral = quad::finite_c(integrand, 0.0, pi, 1e-13).value;
  const double logpref = std::log(alpha / ((1.0 - alpha) * pi)) - std::log(x) / (1.0 - alpha) - k0 * s;
  return std::exp(logpref) * integral;
}

double stable_cdf(double alpha, double x) {
  check_alpha(alpha);
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (use_series(alpha, x)) return 1.0 - tail_series(alpha, x, 0.0);
  const double r = alpha / (1.0 - alpha);
  const double s = std::pow(x, -r);
  const double k0 = std::pow(alpha, r) * (1.0 - alpha);
  auto integrand = [&](double phi, double d) {
    const double phi_c = d > 0.0 ? d : pi - phi;
    return std::exp(-(kanter(alpha, d < 0.0 ? -d : phi, phi_c) - k0) * s);
  };
  return std::exp(-k0 * s) * quad::finite_c(integrand, 0.0, pi, 1e-13).value / pi;
}

double stable_ccdf(double alpha, double x) {
  check_alpha(alpha);
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (use_series(alpha, x)) return tail_series(alpha, x, 0.0);
  return 1.0 - stable_cdf(alpha, x);
}

namespace {

double stable_solve(double alpha, double target, bool upper) {
  // Solve in log x; cdf is increasing, ccdf decreasing.
  auto f = [&](double lx) {
    const double x = std::exp(lx);
    return upper ? target - stable_ccdf(alpha, x) : stable_cdf(alpha, x) - target;
  };
  double lo = -2.0, hi = 2.0;
  while (f(lo) > 0.0) lo -= 2.0;
  while (f(hi) < 0.0) hi += 4.0;
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50),
                                             iters);
  return std::exp(0.5 * (r.first + r.second));
}

}  // namespace

double stable_quantile(double alpha, double p) {
  check_alpha(alpha);
  require(p > 0.0 && p < 1.0, "stable_quantile: p must lie in (0,1)");
  if (p > 0.5) return stable_quantile_upper(alpha, 1.0 - p);
  return stable_solve(alpha, p, false);
}

double stable_quantile_upper(double alpha, double s) {
  check_alpha(alpha);
  require(s > 0.0 && s < 1.0, "stable_quantile_upper: s must lie in (0,1)");
  if (s > 0.5) return stable_quantile(alpha, 1.0 - s);
  return stable_solve(alpha, s, true);
}

}  // namespace thorin::special
