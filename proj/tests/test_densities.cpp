#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "thorin/densities.hpp"
#include "thorin/error.hpp"
#include "thorin/quadrature.hpp"
#include "thorin/samplers.hpp"
#include "thorin/verify.hpp"

using namespace thorin;
using doctest::Approx;

TEST_SUITE("densities") {
  TEST_CASE("closed density values") {
    CHECK(density_closed(MixingLaw::arcsine(), 0.5, 1.0).value == Approx(0.178318).epsilon(1e-5));
    CHECK(dirichlet_mean_density(MixingLaw::g0shift(1.0), 1.0, 1.0) == Approx(1.0 / std::log(2.0)).epsilon(1e-12));
    CHECK(dirichlet_mean_density(MixingLaw::uniform(), 1.0, 2.0) == Approx(1.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(dirichlet_mean_density(MixingLaw::reciprocal(MixingLaw::uniform()), 1.0, 0.5) ==
          Approx(2.0 * std::numbers::e / std::numbers::pi).epsilon(1e-12));
    // point:a is gamma(t) with rate a.
    CHECK(density_closed(MixingLaw::point(2.0), 1.0, 0.5).value == Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK_FALSE(has_closed_density(MixingLaw::uniform(), 0.5));
    CHECK_THROWS_AS(density_closed(MixingLaw::uniform(), 0.5, 1.0), Error);
  }

  TEST_CASE("closed densities integrate to one") {
    struct Case {
      const char* spec;
      double t;
    };
    const Case cases[] = {{"galpha:0.4", 0.6},          {"arcsine", 0.5},        {"arcsine", 2.0},
                          {"reciprocal(arcsine)", 0.7}, {"reciprocal(galpha:0.3)", 0.7},
                          {"g0shift:0.5", 1.0},         {"reciprocal(g0shift:1)", 1.0},
                          {"uniform", 1.0},             {"reciprocal(uniform)", 1.0}};
    for (const auto& c : cases) {
      INFO(std::string(c.spec));
      CAPTURE(c.t);
      const auto g = MixingLaw::parse(c.spec);
      REQUIRE(has_closed_density(g, c.t));
      const auto r = quad::decades([&](double x) { return density_closed(g, c.t, x).value; }, -30, 30, 1e-10);
      CHECK(r.value == Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("closed densities match draws") {
    const auto g = MixingLaw::reciprocal(MixingLaw::uniform());
    const auto v = ggc_draws(g, 1.0, 50000, 21);
    const auto r = pdf_vs_hist(v, [&](double x) { return density_closed(g, 1.0, x).value; }, 0.0, INFINITY);
    CHECK(r.pass);
  }

  TEST_CASE("dual and Bessel Monte Carlo agree with the closed density") {
    // Gamma_t(G) for G = arcsine: pass H = 1/G.
    const auto g = MixingLaw::arcsine();
    const auto h = MixingLaw::reciprocal(g);
    const double t = 0.5;
    const std::vector<double> xs{0.25, 1.0, 3.0};
    const auto d = dirichlet_mean_draws(h, t, 40000, 22);
    const auto dual = ggc_density_dual_mc(xs, t, h, d);
    const auto gam = ggc_draws(h, t, 40000, 23);
    const auto bes = ggc_density_bessel_mc(xs, t, h, gam);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CAPTURE(xs[i]);
      const double exact = density_closed(g, t, xs[i]).value;
      CHECK(std::abs(dual.values[i] - exact) < 4.0 * dual.errors[i]);
      CHECK(std::abs(bes.values[i] - exact) < 4.0 * bes.errors[i]);
    }
    RandomStream rng(24);
    const auto one = ggc_density_dual_mc(1.0, t, h, 20000, rng);
    CHECK(std::abs(one.value - density_closed(g, t, 1.0).value) < 4.0 * one.error);
  }

  TEST_CASE("mean density of the reciprocal law") {
    // D_t(1/arcsine) is beta(t + 1/2, t + 1/2): uniform at t = 1/2.
    const auto g = MixingLaw::arcsine();
    auto f = [&](double x) { return dirichlet_mean_density(g, 0.5, x); };
    for (double x : {0.1, 0.5, 0.9}) CHECK(mean_density_dual(x, 0.5, f, g.log_moment()) == Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("fractional-integral form for t <= 1") {
    const auto u = MixingLaw::uniform();
    for (double x : {1.2, 2.0, 5.0})
      CHECK(dirichlet_mean_density_t_le_1(x, 1.0, u) == Approx(dirichlet_mean_density(u, 1.0, x)).epsilon(1e-8));
    const auto a = MixingLaw::arcsine();
    for (double x : {1.1, 1.5, 3.0})
      CHECK(dirichlet_mean_density_t_le_1(x, 0.5, a) == Approx(dirichlet_mean_density(a, 0.5, x)).epsilon(1e-5));
  }

  TEST_CASE("Bernoulli mixture form matches beta times the Dirichlet mean") {
    const auto a = MixingLaw::arcsine();
    const double t = 0.4;
    const auto v = generate_values(50000, 25, [&](RandomStream& r) {
      return beta_variate(r, t, 1.0 - t) * closed_form_dirichlet(r, a, t);
    });
    CHECK(pdf_vs_hist(v, [&](double x) { return dirichlet_mean_density_bernoulli(x, t, a); }, 0.0, INFINITY).pass);
  }

  TEST_CASE("Moebius density at u = 0 is the density of Gamma_t(1/G)") {
    const auto g = MixingLaw::reciprocal(MixingLaw::arcsine());
    const double t = 0.5;
    const auto d = dirichlet_mean_draws(g, t, 40000, 26);
    const std::vector<double> xs{0.5, 2.0};
    const auto s = sigma_u_density_mc(xs, t, g, 0.0, d);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double exact = density_closed(MixingLaw::arcsine(), t, xs[i]).value;
      CHECK(std::abs(s.values[i] - exact) < 4.0 * s.errors[i] + 1e-12);
    }
  }

  TEST_CASE("grid trapezoid") {
    DensityGrid g;
    for (int i = 0; i <= 1000; ++i) {
      g.abscissae.push_back(i * 0.02);
      g.values.push_back(std::exp(-i * 0.02));
    }
    CHECK(g.trapezoid() == Approx(1.0).epsilon(1e-3));
  }
}
