#include <doctest.h>

#include <cmath>
#include <string>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "thorin/error.hpp"
#include "thorin/mixing.hpp"

using namespace thorin;
using doctest::Approx;

TEST_SUITE("mixing") {
  TEST_CASE("densities") {
    CHECK(MixingLaw::arcsine().pdf(0.5) == Approx(2.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(MixingLaw::uniform().pdf(0.3) == 1.0);
    CHECK(MixingLaw::zratio(0.5).pdf(1.0) == Approx(1.0 / std::numbers::pi).epsilon(1e-12));
    // galpha:1/2 is the arcsine law.
    for (double x : {0.1, 0.5, 0.83}) CHECK(MixingLaw::galpha(0.5).pdf(x) == Approx(MixingLaw::arcsine().pdf(x)).epsilon(1e-12));
  }

  TEST_CASE("cdf and quantile values") {
    CHECK(MixingLaw::arcsine().cdf(0.5) == Approx(0.5));
    CHECK(MixingLaw::galpha(0.5).cdf(0.5) == Approx(0.5));
    CHECK(MixingLaw::uniform().cdf(0.25) == Approx(0.25));
    CHECK(MixingLaw::arcsine().quantile(0.5) == Approx(0.5));
    CHECK(MixingLaw::galpha(0.5).quantile(0.5) == Approx(0.5));
    CHECK(MixingLaw::g0shift(1.0).quantile(0.5) == Approx(1.5));
  }

  TEST_CASE("cdf inverts quantile on 200 points for every closed family") {
    for (const char* spec : {"arcsine", "uniform", "galpha:0.3", "galpha:0.8", "g0shift:0", "g0shift:0.5", "zratio:0.5",
                             "pareto:2", "gammapow:0.5", "stable:0.5", "reciprocal(arcsine)", "reciprocal(galpha:0.3)",
                             "reciprocal(uniform)", "reciprocal(g0shift:1)"}) {
      const auto g = MixingLaw::parse(spec);
      double worst = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double p = (i + 0.5) / 200.0;
        const double q = g.quantile(p);
        // g0shift puts mass 0.02 within 1e-19 of its edges, so there a single ulp
        // of q spans a visible step in p; allow that step.
        const double step = g.cdf(std::nextafter(q, INFINITY)) - g.cdf(std::nextafter(q, -INFINITY));
        worst = std::max(worst, std::abs(g.cdf(q) - p) - step);
      }
      INFO(std::string(spec));
      CHECK(worst < 1e-10);
    }
  }

  TEST_CASE("log moments") {
    CHECK(MixingLaw::arcsine().log_moment() == Approx(-std::log(4.0)).epsilon(1e-12));
    CHECK(MixingLaw::uniform().log_moment() == Approx(-1.0).epsilon(1e-12));
    CHECK(MixingLaw::galpha(0.5).log_moment() == Approx(-std::log(4.0)).epsilon(1e-10));
    // Closed forms against quadrature over the quantile function.
    for (const char* spec : {"galpha:0.3", "g0shift:0.5", "zratio:0.4", "reciprocal(galpha:0.7)"}) {
      const auto g = MixingLaw::parse(spec);
      const auto q = g.expect([](double x) { return std::log(x); });
      INFO(std::string(spec));
      CHECK(g.log_moment() == Approx(q.value).epsilon(1e-8));
    }
  }

  TEST_CASE("inverse means") {
    CHECK(MixingLaw::reciprocal(MixingLaw::galpha(0.3)).mean_inverse() == Approx(0.5).epsilon(1e-10));
    CHECK(std::isinf(MixingLaw::uniform().mean_inverse()));
    // E 1/(1 + G_0) = 1/(2 log 2).
    CHECK(MixingLaw::g0shift(1.0).mean_inverse() == Approx(1.0 / (2.0 * std::log(2.0))).epsilon(1e-10));
  }

  TEST_CASE("reciprocal is an involution on cdfs") {
    const auto g = MixingLaw::galpha(0.3);
    const auto r = MixingLaw::reciprocal(g);
    for (double x : {0.2, 0.5, 0.9}) CHECK(r.cdf(1.0 / x) == Approx(1.0 - g.cdf(x)).epsilon(1e-12));
  }

  TEST_CASE("quantile tables") {
    const auto g = MixingLaw::table({0.0, 0.5, 1.0}, {1.0, 2.0, 4.0});
    CHECK(g.quantile(0.25) == Approx(1.5));
    CHECK(g.cdf(3.0) == Approx(0.75));
    CHECK(g.mean() == Approx(2.25).epsilon(1e-14));
    CHECK(g.mean_inverse() == Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0) / 2.0).epsilon(1e-14));
    const char* path = "thorin_table_test.csv";
    {
      std::ofstream f(path);
      f << "p,x\n0,1\n0.5,2\n1,4\n";
    }
    const auto h = MixingLaw::parse(std::string("table:") + path);
    CHECK(h.quantile(0.75) == Approx(3.0));
    std::remove(path);
    CHECK_THROWS_AS(MixingLaw::table({0.0, 1.0}, {2.0, 1.0}), Error);
  }

  TEST_CASE("parser errors") {
    for (const char* bad : {"galpha:1.5", "galpha", "nosuch", "reciprocal(arcsine", "uniform:3", "g0shift:-1"}) {
      INFO(std::string(bad));
      CHECK_THROWS_AS(MixingLaw::parse(bad), Error);
    }
  }
}
