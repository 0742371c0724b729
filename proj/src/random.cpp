#include "thorin/random.hpp"

#include <cmath>
#include <numbers>

#include "thorin/error.hpp"
#include "thorin/special.hpp"

namespace thorin {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::split(std::uint64_t index) const {
  return RandomStream(splitmix64(seed_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

double RandomStream::exponential() { return -std::log(uniform()); }

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

namespace {

// Marsaglia-Tsang squeeze/rejection, shape >= 1.
double gamma_mt(RandomStream& rng, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double gamma_variate(RandomStream& rng, double shape) {
  require(shape > 0.0 && std::isfinite(shape), "gamma_variate: shape must be positive");
  if (shape == 1.0) return rng.exponential();
  if (shape > 1.0) return gamma_mt(rng, shape);
  return std::exp(log_gamma_variate(rng, shape));
}

double log_gamma_variate(RandomStream& rng, double shape) {
  require(shape > 0.0 && std::isfinite(shape), "log_gamma_variate: shape must be positive");
  if (shape >= 1.0) return std::log(gamma_variate(rng, shape));
  // gamma_a = gamma_{a+1} U^{1/a}
  const double g = gamma_mt(rng, shape + 1.0);
  return std::log(g) + std::log(rng.uniform()) / shape;
}

double beta_variate(RandomStream& rng, double a, double b) {
  require(a > 0.0 && b > 0.0, "beta_variate: parameters must be positive");
  const double la = log_gamma_variate(rng, a);
  const double lb = log_gamma_variate(rng, b);
  // a/(a+b) in log space: 1/(1 + exp(lb - la))
  return 1.0 / (1.0 + std::exp(lb - la));
}

double stable_variate(RandomStream& rng, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "stable_variate: alpha must lie in (0,1)");
  const double u = rng.uniform();
  const double phi = std::numbers::pi * u;
  const double phi_c = std::numbers::pi * (1.0 - u);
  const double k = special::kanter(alpha, phi, phi_c);
  const double e = rng.exponential();
  return std::pow(k / e, (1.0 - alpha) / alpha);
}

}  // namespace thorin
