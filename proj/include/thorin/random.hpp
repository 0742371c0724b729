#pragma once

#include <cstdint>
#include <random>

namespace thorin {

inline constexpr std::uint64_t kDefaultSeed = 20240611ULL;

// Deterministic stream: the engine is fully specified by the standard and all
// variate transforms below are implemented here, so a seed reproduces the same
// sequence on every conforming platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = kDefaultSeed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64() {
    ++draws_;
    return engine_();
  }
  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }
  double exponential();
  double normal();

  // Independent child stream, a pure function of (seed, index).
  RandomStream split(std::uint64_t index) const;

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

double gamma_variate(RandomStream& rng, double shape);
// log of a gamma(shape) draw; stays finite for shapes where the draw itself
// underflows.
double log_gamma_variate(RandomStream& rng, double shape);
double beta_variate(RandomStream& rng, double a, double b);
// Positive stable with E exp(-lambda S) = exp(-lambda^alpha).
double stable_variate(RandomStream& rng, double alpha);

}  // namespace thorin
