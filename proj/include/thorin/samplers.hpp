#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "thorin/mixing.hpp"
#include "thorin/random.hpp"

namespace thorin {

inline constexpr int kDefaultSteps = 4096;

// Riemann-sum Wiener-Gamma integral sum_i h_i dgamma_i over n equal cells of
// [0, m], h_i = 1/quantile_G(midpoint_i / m). Cells whose increment is
// negligible (relative contribution below ~1e-16) are never materialized: the
// exponentials driving the tiny-shape increments are generated in increasing
// order, so only the first few per draw need a gamma variate.
class WienerGamma {
 public:
  WienerGamma(const MixingLaw& g, double m, int n_steps = kDefaultSteps, bool reversed = false);
  // Explicit nonnegative kernel values at the cell midpoints.
  WienerGamma(std::vector<double> h, double m);

  double mass() const { return m_; }
  int steps() const { return static_cast<int>(h_.size()); }
  const std::vector<double>& kernel() const { return h_; }

  struct LogDraw {
    double log_integral;  // log sum h_i dgamma_i
    double log_total;     // log sum dgamma_i = log gamma_m
  };
  // power raises each increment: sum h_i (dgamma_i)^power.
  LogDraw draw_log(RandomStream& rng, double power = 1.0) const;

  double sample(RandomStream& rng) const;          // Gamma_m(G)
  double dirichlet_mean(RandomStream& rng) const;  // D_m(G), same increments

 private:
  void init();
  std::vector<double> h_;
  std::vector<double> log_h_;
  double m_;
  double log_ratio_ = 0.0;
};

// One-off draws; these rebuild the kernel each call, so reuse a WienerGamma for batches.
double wiener_gamma_sample(RandomStream& rng, const MixingLaw& g, double m, int n_steps = kDefaultSteps);
double dirichlet_mean_sample(RandomStream& rng, const MixingLaw& g, double m, int n_steps = kDefaultSteps);

// Horizon e^{-T} bound: max(20, log(m E[e/G] / 1e-8 + 1)); 40 when E[1/G] is infinite.
double compound_poisson_horizon(const MixingLaw& g, double m);
// sum over arrivals tau_i <= T of a rate-m Poisson process of e^{-tau_i} e_i / G_i.
double compound_poisson_sample(RandomStream& rng, const MixingLaw& g, double m, double horizon,
                               int* jumps = nullptr);

// X <- U^{1/m} (X + e/G), iterated.
int affine_default_iters(double m);
double affine_iterate(RandomStream& rng, const MixingLaw& g, double m, int iters, double x0 = 0.0);

// sum over a partition of [0, t] of (dgamma)^alpha; the limit is V^(alpha)(t).
// GGC only for alpha >= 1 (see power_jump_is_ggc) but sampled for any alpha > 0.
double power_jump_sample(RandomStream& rng, double alpha, double t, int n_steps = kDefaultSteps);
inline bool power_jump_is_ggc(double alpha) { return alpha >= 1.0; }

// Exact constructions from gamma, beta and uniform primitives.
// Available: point masses (any t); galpha:1/2 and reciprocal(galpha:1/2) (any t);
// galpha:a and reciprocal(galpha:a) at t = 1 - a; reciprocal(g0shift:mu) and
// g0shift:mu (mu > 0) at t = 1; uniform and reciprocal(uniform) at t = 1.
bool has_closed_form(const MixingLaw& g, double t);
double closed_form_dirichlet(RandomStream& rng, const MixingLaw& g, double t);
double closed_form_sample(RandomStream& rng, const MixingLaw& g, double t);

struct SampleBatch {
  std::vector<double> values;
  std::size_t n = 0;
  std::string sampler_id;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  std::vector<std::uint64_t> sub_seeds;  // one per chunk

  void merge(const SampleBatch& other);
};

// Worker count: THORINLAB_THREADS if set, else hardware concurrency.
unsigned worker_threads();

// n draws in fixed-size chunks; chunk k uses RandomStream(seed).split(k), so
// the result does not depend on the number of threads.
SampleBatch generate_batch(std::size_t n, std::uint64_t seed, const std::string& sampler_id,
                           const std::function<double(RandomStream&)>& draw);
// Same chunking for arbitrary real-valued draws (e.g. log-scale values).
std::vector<double> generate_values(std::size_t n, std::uint64_t seed,
                                    const std::function<double(RandomStream&)>& draw);

struct RichardsonCheck {
  double coarse;        // MC Laplace at n_steps / 2
  double fine;          // MC Laplace at n_steps
  double sigma;         // combined MC standard error
  bool drift_warning;   // |fine - coarse| > 2 sigma
};
RichardsonCheck richardson_check(const MixingLaw& g, double m, double lambda, std::size_t n_mc,
                                 std::uint64_t seed, int n_steps = kDefaultSteps);

}  // namespace thorin
