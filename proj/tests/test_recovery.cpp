#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "thorin/densities.hpp"
#include "thorin/recovery.hpp"
#include "thorin/samplers.hpp"
#include "thorin/special.hpp"

using namespace thorin;
using doctest::Approx;

TEST_SUITE("recovery") {
  TEST_CASE("ratio formula from the closed density recovers the arcsine cdf") {
    const auto a = MixingLaw::arcsine();
    const double t = 0.5;
    const std::vector<double> xs{0.5, 1.05, 1.3, 2.0, 5.0, 20.0};
    const auto r = recover_cdf_ratio(xs, t, [&](double x) { return dirichlet_mean_density(a, t, x); }, 1.0, INFINITY);
    CHECK(r.values[0] == 1.0);  // below the support of D
    for (std::size_t i = 1; i < xs.size(); ++i) CHECK(r.values[i] == Approx(a.cdf(1.0 / xs[i])).epsilon(1e-9));
    CHECK(r.values[2] == Approx(0.680994).epsilon(1e-6));
    CHECK(r.monotone());
  }

  TEST_CASE("ratio formula from draws") {
    const auto a = MixingLaw::arcsine();
    const double t = 0.5;
    const std::vector<double> xs{1.05, 1.3, 2.0, 5.0, 20.0};
    const auto r = recover_cdf_ratio(xs, t, dirichlet_mean_draws(a, t, 200000, 31));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CAPTURE(xs[i]);
      CHECK(std::abs(r.values[i] - a.cdf(1.0 / xs[i])) < 4.0 * r.errors[i] + r.max_bias_bound);
    }
    CHECK(r.monotone(4.0 * r.errors[0]));
    CHECK(r.max_window > 0.0);
  }

  TEST_CASE("Pareto ratio Thorin cdf") {
    CHECK(pareto_thorin_cdf(1.0, 1.0) == Approx(0.41843).epsilon(1e-4));
    for (double m : {0.5, 1.0, 3.0}) {
      CAPTURE(m);
      CHECK(pareto_thorin_cdf(m, 1e-6) == Approx(1.0).epsilon(1e-6));
      CHECK(pareto_thorin_cdf(m, 1e6) < 1e-3);
      double prev = 1.0;
      for (double z : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double f = pareto_thorin_cdf(m, z);
        CHECK(f <= prev);
        prev = f;
        // theta -> 1 is continuous.
        CHECK(std::abs(pareto_thorin_cdf(m, z, 0.999) - f) < 5e-3);
      }
    }
  }

  TEST_CASE("Pareto cdf at theta < 1 matches recovery from inverse gamma draws") {
    const double m = 2.0, theta = 0.5;
    const auto d = generate_values(200000, 32, [m](RandomStream& r) { return 1.0 / gamma_variate(r, m); });
    const std::vector<double> zs{0.3, 1.0, 3.0};
    const auto r = recover_cdf_ratio(zs, theta, d);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      CAPTURE(zs[i]);
      CHECK(std::abs(r.values[i] - pareto_thorin_cdf(m, zs[i], theta)) < 4.0 * r.errors[i] + r.max_bias_bound);
    }
  }

  TEST_CASE("stable power Thorin cdf") {
    for (double alpha : {0.3, 0.7}) {
      CAPTURE(alpha);
      CHECK(stable_power_thorin_cdf(alpha, 1e-3) > 0.99);
      CHECK(stable_power_thorin_cdf(alpha, 100.0) < 0.11);
      const std::vector<double> ys{0.5, 1.0, 3.0};
      const auto d = generate_values(200000, 33, [alpha](RandomStream& r) { return stable_variate(r, alpha); });
      const auto r = recover_cdf_ratio(ys, alpha, d);
      double prev = 1.0;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        const double f = stable_power_thorin_cdf(alpha, ys[i]);
        CHECK(f < prev);
        prev = f;
        CHECK(std::abs(r.values[i] - f) < 4.0 * r.errors[i] + r.max_bias_bound);
      }
    }
  }

  TEST_CASE("stable moment identity") {
    const std::vector<double> ys{0.3, 0.7, 1.0, 2.0, 5.0};
    for (double alpha : {0.5, 0.7}) {
      const double c = alpha / std::tgamma(1.0 - alpha);
      CHECK(lemma24_residual(alpha, [alpha](double x) { return special::stable_pdf(alpha, x); }, ys, c) < 5e-3);
    }
    // An exponential law is not stable: the residual is far from zero.
    CHECK(lemma24_residual(0.7, [](double x) { return std::exp(-x); }, ys, 0.7 / std::tgamma(0.3)) > 0.05);
  }

  TEST_CASE("one-sided moments from a density and from draws agree") {
    const auto d = generate_values(200000, 34, [](RandomStream& r) { return 1.0 + r.exponential(); });
    std::vector<double> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    const auto a = one_sided_moments(sorted, 1.5, 0.5);
    const auto b = one_sided_moments([](double x) { return std::exp(-(x - 1.0)); }, 1.0, INFINITY, 1.5, 0.5);
    CHECK(std::abs(a.above - b.above) < 4.0 * a.above_se + a.bias_bound);
    CHECK(std::abs(a.below - b.below) < 4.0 * a.below_se + a.bias_bound);
  }
}
