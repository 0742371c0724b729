#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "thorin/bernstein.hpp"
#include "thorin/error.hpp"
#include "thorin/samplers.hpp"
#include "thorin/verify.hpp"

using namespace thorin;
using doctest::Approx;

namespace {

struct Moments {
  double mean, se;
};

Moments moments(const std::vector<double>& v) {
  double s = 0.0, s2 = 0.0;
  for (double x : v) {
    s += x;
    s2 += x * x;
  }
  const double n = v.size(), m = s / n;
  return {m, std::sqrt(std::max(s2 / n - m * m, 0.0) / n)};
}

}  // namespace

TEST_SUITE("samplers") {
  TEST_CASE("Wiener-Gamma with a point mass is a scaled gamma") {
    const auto g = MixingLaw::point(2.0);
    WienerGamma wg(g, 1.5);
    RandomStream r(3);
    for (int i = 0; i < 100; ++i) CHECK(wg.dirichlet_mean(r) == Approx(0.5).epsilon(1e-12));
    const auto v = generate_values(20000, 4, [&](RandomStream& s) { return wg.sample(s); });
    CHECK(ks_one_sample(v, [](double x) { return boost::math::gamma_p(1.5, 2.0 * x); }).pass);
  }

  TEST_CASE("Wiener-Gamma Laplace transform of the arcsine GGC") {
    const auto g = MixingLaw::arcsine();
    WienerGamma wg(g, 1.0);
    const auto v = generate_values(100000, 5, [&](RandomStream& s) { return wg.sample(s); });
    const auto est = mc_laplace(v, {1.0})[0];
    const double exact = std::exp(-psi_numeric(g, 1.0));
    CHECK(exact == Approx(0.17157287525381).epsilon(1e-8));
    CHECK(mc_vs_exact("wg arcsine", est.mean, est.se, exact).pass);
  }

  TEST_CASE("means and supports") {
    const auto ru = MixingLaw::reciprocal(MixingLaw::uniform());
    const WienerGamma wg(ru, 1.0);
    const auto v = generate_values(100000, 6, [&](RandomStream& s) { return wg.sample(s); });
    const auto m = moments(v);
    CHECK(std::abs(m.mean - 0.5) < 4.0 * m.se);

    // 1/G >= 1 for arcsine, so D >= 1.
    const auto a = MixingLaw::arcsine();
    const auto d = generate_values(5000, 7, [&](RandomStream& s) { return dirichlet_mean_sample(s, a, 0.7, 256); });
    for (double x : d) CHECK(x >= 1.0);
  }

  TEST_CASE("compound Poisson jump count has mean m T") {
    const auto g = MixingLaw::uniform();
    const double m = 2.0, horizon = 20.0;
    RandomStream r(8);
    double total = 0.0;
    const int reps = 4000;
    for (int i = 0; i < reps; ++i) {
      int jumps = 0;
      compound_poisson_sample(r, g, m, horizon, &jumps);
      total += jumps;
    }
    CHECK(std::abs(total / reps - m * horizon) < 4.0 * std::sqrt(m * horizon / reps));
    CHECK(compound_poisson_horizon(g, m) >= 20.0);
  }

  TEST_CASE("affine chain forgets its start") {
    const auto g = MixingLaw::reciprocal(MixingLaw::uniform());
    const double m = 4.0;
    const int iters = affine_default_iters(m);
    const auto a = generate_values(20000, 9, [&](RandomStream& s) { return affine_iterate(s, g, m, iters, 0.0); });
    const auto b = generate_values(20000, 10, [&](RandomStream& s) { return affine_iterate(s, g, m, iters, 100.0); });
    const auto mom = moments(a);
    CHECK(std::abs(mom.mean - 2.0) < 4.0 * mom.se);
    CHECK(ks_two_sample(a, b).pass);
  }

  TEST_CASE("power jumps") {
    // alpha = 1 sums the increments back to gamma_t.
    const auto v1 = generate_values(20000, 12, [](RandomStream& s) { return power_jump_sample(s, 1.0, 2.0); });
    CHECK(ks_one_sample(v1, [](double x) { return boost::math::gamma_p(2.0, x); }).pass);
    // E V^(alpha)(t) = t Gamma(alpha).
    const auto v2 = generate_values(20000, 13, [](RandomStream& s) { return power_jump_sample(s, 2.0, 1.5); });
    const auto m = moments(v2);
    CHECK(std::abs(m.mean - 1.5) < 4.0 * m.se);
    CHECK(power_jump_is_ggc(1.0));
    CHECK_FALSE(power_jump_is_ggc(0.5));
  }

  TEST_CASE("closed-form constructions match Wiener-Gamma") {
    struct Case {
      const char* spec;
      double t;
    };
    const Case cases[] = {{"reciprocal(g0shift:1)", 1.0}, {"g0shift:0.5", 1.0},   {"arcsine", 0.5},
                          {"reciprocal(arcsine)", 0.3},   {"galpha:0.3", 0.7},     {"reciprocal(galpha:0.6)", 0.4},
                          {"uniform", 1.0},               {"reciprocal(uniform)", 1.0}};
    for (const auto& c : cases) {
      INFO(std::string(c.spec));
      const auto g = MixingLaw::parse(c.spec);
      REQUIRE(has_closed_form(g, c.t));
      const auto a = generate_values(20000, 14, [&](RandomStream& s) { return closed_form_dirichlet(s, g, c.t); });
      const WienerGamma wg(g, c.t);
      const auto b = generate_values(20000, 15, [&](RandomStream& s) { return wg.dirichlet_mean(s); });
      CHECK(ks_two_sample(a, b).pass);
    }
    // Gamma_1(1/(1 + G0)) has mean E[1 + G0] = 3/2.
    const auto g = MixingLaw::reciprocal(MixingLaw::g0shift(1.0));
    const auto v = generate_values(100000, 16, [&](RandomStream& s) { return closed_form_sample(s, g, 1.0); });
    const auto m = moments(v);
    CHECK(std::abs(m.mean - 1.5) < 4.0 * m.se);
    CHECK_FALSE(has_closed_form(MixingLaw::uniform(), 0.5));
    RandomStream r(1);
    CHECK_THROWS_AS(closed_form_dirichlet(r, MixingLaw::uniform(), 0.5), Error);
  }

  TEST_CASE("reversed cell order gives the same law") {
    const auto g = MixingLaw::uniform();
    WienerGamma fwd(g, 0.8), rev(g, 0.8, kDefaultSteps, true);
    const auto a = generate_values(20000, 17, [&](RandomStream& s) { return fwd.dirichlet_mean(s); });
    const auto b = generate_values(20000, 18, [&](RandomStream& s) { return rev.dirichlet_mean(s); });
    CHECK(ks_two_sample(a, b).pass);
  }

  TEST_CASE("batches do not depend on the thread count") {
    const auto g = MixingLaw::arcsine();
    auto draw = [&](RandomStream& s) { return wiener_gamma_sample(s, g, 0.5, 256); };
    setenv("THORINLAB_THREADS", "1", 1);
    const auto a = generate_batch(5000, 19, "wg", draw);
    setenv("THORINLAB_THREADS", "3", 1);
    const auto b = generate_batch(5000, 19, "wg", draw);
    unsetenv("THORINLAB_THREADS");
    CHECK(a.values == b.values);
    CHECK(a.sub_seeds == b.sub_seeds);
    CHECK(a.n == 5000);
  }
}
