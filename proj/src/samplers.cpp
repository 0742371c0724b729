#include "thorin/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "thorin/error.hpp"

namespace thorin {

using std::numbers::pi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative truncation budget e^{-kTail}; the kernel range and cell count are
// added so the bound holds for the whole sum.
constexpr double kTail = 38.0;

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

}  // namespace

WienerGamma::WienerGamma(const MixingLaw& g, double m, int n_steps, bool reversed) : m_(m) {
  require(m > 0.0 && std::isfinite(m), "wiener_gamma: m must be positive");
  require(n_steps >= 1, "wiener_gamma: n_steps must be at least 1");
  if (!g.log_integrable_below())
    fail(ErrorCode::Divergent, "wiener_gamma: E log+(1/G) is infinite for " + g.name());
  h_.resize(static_cast<std::size_t>(n_steps));
  for (int i = 0; i < n_steps; ++i) {
    const double p = (i + 0.5) / n_steps;
    const double q = g.quantile(p);
    if (!(q > 0.0)) fail(ErrorCode::Overflow, "wiener_gamma: kernel 1/quantile is infinite at a cell midpoint");
    h_[static_cast<std::size_t>(reversed ? n_steps - 1 - i : i)] = 1.0 / q;
  }
  init();
}

WienerGamma::WienerGamma(std::vector<double> h, double m) : h_(std::move(h)), m_(m) {
  require(m > 0.0 && std::isfinite(m), "wiener_gamma: m must be positive");
  require(!h_.empty(), "wiener_gamma: empty kernel");
  for (double v : h_) require(v >= 0.0 && std::isfinite(v), "wiener_gamma: kernel values must be finite and nonnegative");
  init();
}

void WienerGamma::init() {
  log_h_.resize(h_.size());
  double lo = kInf, hi = -kInf;
  for (std::size_t i = 0; i < h_.size(); ++i) {
    log_h_[i] = h_[i] > 0.0 ? std::log(h_[i]) : -kInf;
    if (h_[i] > 0.0) {
      lo = std::min(lo, log_h_[i]);
      hi = std::max(hi, log_h_[i]);
    }
  }
  require(hi > -kInf, "wiener_gamma: kernel vanishes identically");
  log_ratio_ = hi - lo;
}

WienerGamma::LogDraw WienerGamma::draw_log(RandomStream& rng, double power) const {
  const std::size_t n = h_.size();
  const double a = m_ / static_cast<double>(n);
  const double tail = (kTail + log_ratio_ + std::log(static_cast<double>(n))) / std::min(power, 1.0);
  LogDraw out{-kInf, -kInf};
  auto add = [&](std::size_t i, double log_dg) {
    out.log_total = log_add(out.log_total, log_dg);
    if (log_h_[i] > -kInf) out.log_integral = log_add(out.log_integral, log_h_[i] + power * log_dg);
  };
  if (tail * m_ > 0.25 * static_cast<double>(n) || n < 64) {
    for (std::size_t i = 0; i < n; ++i) add(i, log_gamma_variate(rng, a));
    return out;
  }
  // dgamma_i = gamma_{a+1} exp(-E_i / a) with E_i i.i.d. exponential. The E_i
  // are produced in increasing order (Renyi spacings) and assigned to random
  // distinct cells; once (E - E_min)/a exceeds the budget the rest is negligible.
  thread_local std::vector<std::uint8_t> used;
  thread_local std::vector<std::size_t> touched;
  if (used.size() < n) used.assign(n, 0);
  touched.clear();
  double e = rng.exponential() / static_cast<double>(n);
  const double stop = e + tail * a;
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t i;
    do {
      i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      if (i >= n) i = n - 1;
    } while (used[i]);
    used[i] = 1;
    touched.push_back(i);
    add(i, log_gamma_variate(rng, a + 1.0) - e / a);
    --remaining;
    if (remaining == 0) break;
    e += rng.exponential() / static_cast<double>(remaining);
    if (e > stop) break;
  }
  for (std::size_t i : touched) used[i] = 0;
  return out;
}

double WienerGamma::sample(RandomStream& rng) const { return std::exp(draw_log(rng).log_integral); }

double WienerGamma::dirichlet_mean(RandomStream& rng) const {
  const LogDraw d = draw_log(rng);
  return std::exp(d.log_integral - d.log_total);
}

double wiener_gamma_sample(RandomStream& rng, const MixingLaw& g, double m, int n_steps) {
  return WienerGamma(g, m, n_steps).sample(rng);
}

double dirichlet_mean_sample(RandomStream& rng, const MixingLaw& g, double m, int n_steps) {
  return WienerGamma(g, m, n_steps).dirichlet_mean(rng);
}

double compound_poisson_horizon(const MixingLaw& g, double m) {
  const double ek = g.mean_inverse();
  if (!std::isfinite(ek)) return 40.0;
  return std::max(20.0, std::log(m * ek / 1e-8 + 1.0));
}

double compound_poisson_sample(RandomStream& rng, const MixingLaw& g, double m, double horizon, int* jumps) {
  require(m > 0.0 && std::isfinite(m), "compound_poisson: m must be positive");
  require(horizon > 0.0, "compound_poisson: horizon must be positive");
  double tau = 0.0, x = 0.0;
  int count = 0;
  for (;;) {
    tau += rng.exponential() / m;
    if (tau > horizon) break;
    x += std::exp(-tau) * rng.exponential() / g.sample(rng);
    ++count;
  }
  if (jumps) *jumps = count;
  return x;
}

int affine_default_iters(double m) { return static_cast<int>(std::ceil(std::max(200.0, 50.0 / m))); }

double affine_iterate(RandomStream& rng, const MixingLaw& g, double m, int iters, double x0) {
  require(m > 0.0 && std::isfinite(m), "affine_iterate: m must be positive");
  require(iters >= 1, "affine_iterate: iters must be at least 1");
  require(x0 >= 0.0, "affine_iterate: x0 must be nonnegative");
  double x = x0;
  for (int k = 0; k < iters; ++k) {
    const double kj = rng.exponential() / g.sample(rng);
    x = std::pow(rng.uniform(), 1.0 / m) * (x + kj);
  }
  return x;
}

double power_jump_sample(RandomStream& rng, double alpha, double t, int n_steps) {
  require(alpha > 0.0 && std::isfinite(alpha), "power_jump: alpha must be positive");
  require(t > 0.0 && std::isfinite(t), "power_jump: t must be positive");
  require(n_steps >= 1, "power_jump: n_steps must be at least 1");
  thread_local std::vector<double> ones;
  thread_local int cached = -1;
  thread_local double cached_t = -1.0;
  thread_local std::unique_ptr<WienerGamma> wg;
  if (cached != n_steps || cached_t != t) {
    ones.assign(static_cast<std::size_t>(n_steps), 1.0);
    wg = std::make_unique<WienerGamma>(ones, t);
    cached = n_steps;
    cached_t = t;
  }
  return std::exp(wg->draw_log(rng, alpha).log_integral);
}

// Closed-form laws.
namespace {

bool near(double a, double b) { return std::fabs(a - b) < 1e-12; }

// alpha of a G_alpha-family law (arcsine = 1/2, uniform = 1), or -1.
double galpha_index(const MixingLaw& g) {
  if (g.as<ArcSine>()) return 0.5;
  if (g.as<Uniform01>()) return 1.0;
  if (const auto* f = g.as<GAlpha>()) return f->alpha;
  return -1.0;
}

// Rejection from a uniform proposal on (0, 1) under a numerically found bound.
struct UnitRejection {
  std::function<double(double)> f;
  double bound;
  explicit UnitRejection(std::function<double(double)> fn) : f(std::move(fn)), bound(0.0) {
    for (int i = 1; i < 20000; ++i) bound = std::max(bound, f(i / 20000.0));
    bound *= 1.02;
  }
  double draw(RandomStream& rng) const {
    for (;;) {
      const double x = rng.uniform();
      if (rng.uniform() * bound <= f(x)) return x;
    }
  }
};

// D_1(1/G_1): density e sin(pi x) / (pi x^x (1-x)^{1-x}) on (0, 1).
const UnitRejection& d1_recip_uniform() {
  static const UnitRejection r([](double x) {
    return std::numbers::e * std::sin(pi * x) / (pi * std::exp(x * std::log(x) + (1.0 - x) * std::log1p(-x)));
  });
  return r;
}

// 1/D_1(G_1): density sin(pi y) / (pi y^{1+y} (1-y)^{1-y}) on (0, 1).
const UnitRejection& d1_uniform_reciprocal() {
  static const UnitRejection r([](double y) {
    return std::sin(pi * y) / (pi * y * std::exp(y * std::log(y) + (1.0 - y) * std::log1p(-y)));
  });
  return r;
}

enum class Closed { None, Point, Half, RecipHalf, Alpha, RecipAlpha, G0Shift, RecipG0Shift, Uniform, RecipUniform };

Closed classify(const MixingLaw& g, double t) {
  if (g.as<PointMass>()) return Closed::Point;
  const MixingLaw* in = g.inner();
  const double a = galpha_index(g);
  const double ai = in ? galpha_index(*in) : -1.0;
  if (a == 0.5) return Closed::Half;
  if (ai == 0.5) return Closed::RecipHalf;
  if (a == 1.0 && near(t, 1.0)) return Closed::Uniform;
  if (ai == 1.0 && near(t, 1.0)) return Closed::RecipUniform;
  if (a > 0.0 && a < 1.0 && near(t, 1.0 - a)) return Closed::Alpha;
  if (ai > 0.0 && ai < 1.0 && near(t, 1.0 - ai)) return Closed::RecipAlpha;
  if (const auto* s = g.as<ShiftedG0>(); s && s->mu > 0.0 && near(t, 1.0)) return Closed::G0Shift;
  if (in && in->as<ShiftedG0>() && near(t, 1.0)) return Closed::RecipG0Shift;
  return Closed::None;
}

}  // namespace

bool has_closed_form(const MixingLaw& g, double t) { return t > 0.0 && classify(g, t) != Closed::None; }

double closed_form_dirichlet(RandomStream& rng, const MixingLaw& g, double t) {
  require(t > 0.0 && std::isfinite(t), "closed_form: t must be positive");
  switch (classify(g, t)) {
    case Closed::Point:
      return 1.0 / g.as<PointMass>()->a;
    case Closed::Half:
      return 1.0 / beta_variate(rng, 0.5, 0.5 + t);
    case Closed::RecipHalf:
      return beta_variate(rng, t + 0.5, t + 0.5);
    case Closed::Alpha:
      return std::pow(rng.uniform(), -1.0 / galpha_index(g));
    case Closed::RecipAlpha:
      return rng.uniform();
    case Closed::G0Shift: {
      const double mu = g.as<ShiftedG0>()->mu;
      return std::exp(rng.uniform() * std::log1p(1.0 / mu)) / (mu + 1.0);
    }
    case Closed::RecipG0Shift:
      return rng.uniform() + g.inner()->as<ShiftedG0>()->mu;
    case Closed::Uniform:
      return 1.0 / d1_uniform_reciprocal().draw(rng);
    case Closed::RecipUniform:
      return d1_recip_uniform().draw(rng);
    case Closed::None:
      break;
  }
  fail(ErrorCode::UnsupportedFamily, "no closed-form sampler for " + g.name() + " at t = " + std::to_string(t));
}

double closed_form_sample(RandomStream& rng, const MixingLaw& g, double t) {
  const double d = closed_form_dirichlet(rng, g, t);
  return gamma_variate(rng, t) * d;
}

void SampleBatch::merge(const SampleBatch& other) {
  values.insert(values.end(), other.values.begin(), other.values.end());
  n = values.size();
  sub_seeds.insert(sub_seeds.end(), other.sub_seeds.begin(), other.sub_seeds.end());
  wall_time += other.wall_time;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("THORINLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

namespace {

constexpr std::size_t kChunk = 8192;

void run_chunks(std::size_t n, std::uint64_t seed, const std::function<double(RandomStream&)>& draw,
                std::vector<double>& out, std::vector<std::uint64_t>* seeds) {
  out.assign(n, 0.0);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const RandomStream root(seed);
  if (seeds) {
    seeds->resize(chunks);
    for (std::size_t k = 0; k < chunks; ++k) (*seeds)[k] = root.split(k).seed();
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= chunks || failed.load()) return;
      try {
        RandomStream rng = root.split(k);
        const std::size_t end = std::min(n, (k + 1) * kChunk);
        for (std::size_t i = k * kChunk; i < end; ++i) out[i] = draw(rng);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(worker_threads(), std::max<std::size_t>(chunks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

SampleBatch generate_batch(std::size_t n, std::uint64_t seed, const std::string& sampler_id,
                           const std::function<double(RandomStream&)>& draw) {
  const auto t0 = std::chrono::steady_clock::now();
  SampleBatch b;
  b.sampler_id = sampler_id;
  b.seed = seed;
  run_chunks(n, seed, draw, b.values, &b.sub_seeds);
  b.n = b.values.size();
  for (double v : b.values)
    if (!(v >= 0.0)) fail(ErrorCode::Overflow, sampler_id + ": produced a negative or non-finite value");
  b.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

std::vector<double> generate_values(std::size_t n, std::uint64_t seed,
                                    const std::function<double(RandomStream&)>& draw) {
  std::vector<double> out;
  run_chunks(n, seed, draw, out, nullptr);
  return out;
}

RichardsonCheck richardson_check(const MixingLaw& g, double m, double lambda, std::size_t n_mc,
                                 std::uint64_t seed, int n_steps) {
  require(n_steps >= 2, "richardson_check: n_steps must be at least 2");
  auto laplace = [&](int steps, std::uint64_t s, double& var) {
    const WienerGamma wg(g, m, steps);
    auto v = generate_values(n_mc, s, [&](RandomStream& r) { return std::exp(-lambda * wg.sample(r)); });
    double mean = 0.0, sq = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n_mc);
    for (double x : v) sq += (x - mean) * (x - mean);
    var = sq / (static_cast<double>(n_mc) - 1.0) / static_cast<double>(n_mc);
    return mean;
  };
  double v1 = 0.0, v2 = 0.0;
  RichardsonCheck r;
  r.coarse = laplace(n_steps / 2, seed, v1);
  r.fine = laplace(n_steps, splitmix64(seed), v2);
  r.sigma = std::sqrt(v1 + v2);
  r.drift_warning = std::fabs(r.fine - r.coarse) > 2.0 * r.sigma;
  return r;
}

}  // namespace thorin
