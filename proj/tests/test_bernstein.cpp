#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "thorin/bernstein.hpp"
#include "thorin/error.hpp"

using namespace thorin;
using doctest::Approx;

TEST_SUITE("bernstein") {
  TEST_CASE("closed psi values") {
    // E log(1 + 1/G) for the arcsine law is 2 log(1 + sqrt 2).
    CHECK(psi_numeric(MixingLaw::arcsine(), 1.0) == Approx(2.0 * std::log1p(std::sqrt(2.0))).epsilon(1e-10));
    // E log(1 + lambda G) = 2 log((1 + sqrt(1 + lambda))/2).
    CHECK(psi_numeric(MixingLaw::reciprocal(MixingLaw::arcsine()), 3.0) ==
          Approx(2.0 * std::log(1.5)).epsilon(1e-10));
    CHECK(psi_numeric(MixingLaw::reciprocal(MixingLaw::uniform()), 1.0) ==
          Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-10));
    CHECK(psi(SubordinatorFamily::hyp_cosh(), 2.0) == Approx(std::log(std::cosh(2.0))).epsilon(1e-12));
    CHECK(psi(SubordinatorFamily::gamma(), 3.0) == Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(psi(SubordinatorFamily::stable_half(), 4.0) == Approx(std::sqrt(8.0)).epsilon(1e-14));
  }

  TEST_CASE("closed forms agree with Thorin quadrature") {
    const char* specs[] = {"gamma", "cosh", "sinh", "besselk:0.3", "besselj:0", "besselj:-0.25", "stablehalf",
                           "galpha:0.3", "uniform", "g0shift:0.5"};
    for (const char* spec : specs) {
      INFO(std::string(spec));
      const auto f = SubordinatorFamily::parse(spec);
      const auto th = thorin_of(f);
      for (double lambda : {0.1, 1.0, 7.0}) {
        CAPTURE(lambda);
        CHECK(th.psi(lambda) == Approx(psi(f, lambda)).epsilon(1e-6));
      }
      CHECK(psi(f, 0.0) == 0.0);
    }
  }

  TEST_CASE("psi is increasing and concave") {
    const auto f = SubordinatorFamily::parse("besselk:0.5");
    double prev = 0.0, prev_slope = 1e300;
    for (int i = 1; i <= 40; ++i) {
      const double a = 0.25 * (i - 1), b = 0.25 * i;
      const double pb = psi(f, b);
      const double slope = (pb - psi(f, a)) / 0.25;
      CHECK(pb > prev);
      CHECK(slope <= prev_slope * (1.0 + 1e-9));
      prev = pb;
      prev_slope = slope;
    }
  }

  TEST_CASE("duality under G -> 1/G") {
    for (const char* spec : {"arcsine", "uniform", "galpha:0.7", "g0shift:1"}) {
      INFO(std::string(spec));
      const auto g = MixingLaw::parse(spec);
      const auto h = MixingLaw::reciprocal(g);
      const auto pg = bernstein_numeric(g);
      for (double lambda : {0.2, 1.0, 5.0}) {
        CHECK(dual_shift(pg, g.log_moment(), lambda) == Approx(psi_numeric(h, lambda)).epsilon(1e-7));
      }
      // Applying the dual twice returns psi_G.
      const auto ph = bernstein_numeric(h);
      CHECK(dual_shift(ph, h.log_moment(), 2.0) == Approx(psi_numeric(g, 2.0)).epsilon(1e-7));
    }
  }

  TEST_CASE("Moebius maps") {
    CHECK(sigma_u(0.0, 4.0) == Approx(0.25));
    CHECK(sigma_u(INFINITY, 4.0) == 1.0);
    CHECK(sigma_u(40.0, 4.0) == Approx(1.0).epsilon(1e-12));
    const auto g = MixingLaw::uniform();
    const double u = 1.0, a = std::sinh(u), b = std::cosh(u), c = std::cosh(u), d = std::sinh(u);
    const double k = moebius_k(g, a, b);
    const auto pg = bernstein_numeric(g);
    for (double lambda : {0.3, 1.0, 4.0}) {
      const double direct = psi_pushforward(g, [u](double x) { return sigma_u(u, x); }, lambda);
      CHECK(moebius_shift(pg, a, b, c, d, k, lambda) == Approx(direct).epsilon(1e-6));
    }
  }

  TEST_CASE("Levy densities") {
    // E exp(-G)/1 for arcsine: e^{-1/2} I_0(1/2).
    CHECK(levy_density(SubordinatorFamily::parse("arcsine"), 1.0) == Approx(0.64503527).epsilon(1e-6));
    CHECK(levy_density(SubordinatorFamily::gamma(), 2.0) == Approx(std::exp(-2.0) / 2.0).epsilon(1e-12));
    for (const char* spec : {"cosh", "sinh", "besselk:0", "besselj:0", "uniform"}) {
      INFO(std::string(spec));
      const auto f = SubordinatorFamily::parse(spec);
      const auto th = thorin_of(f);
      for (double x : {0.5, 2.0, 10.0}) CHECK(levy_density(f, x) == Approx(th.laplace(x) / x).epsilon(1e-6));
    }
    CHECK(levy_density(SubordinatorFamily::hyp_sinh(), 10.0) > 0.0);
  }

  TEST_CASE("Thorin measures") {
    const auto cosh_th = thorin_of(SubordinatorFamily::hyp_cosh());
    CHECK(cosh_th.form == ThorinMeasure::Form::Atoms);
    const auto k = thorin_of(SubordinatorFamily::bessel_k(0.0));
    CHECK(k.form == ThorinMeasure::Form::Density);
    const auto u = thorin_of(SubordinatorFamily::ggc(2.0, MixingLaw::uniform()));
    CHECK(u.total_mass() == Approx(2.0));
    CHECK(std::isfinite(u.integrability_low()));
    CHECK(std::isfinite(u.integrability_high()));
  }

  TEST_CASE("non-GGC families are refused") {
    CHECK_FALSE(SubordinatorFamily::hyp_tanh().is_ggc());
    CHECK_THROWS_AS(thorin_of(SubordinatorFamily::hyp_tanh()), Error);
    CHECK_FALSE(SubordinatorFamily::bessel_j(0.5).is_ggc());
    CHECK_FALSE(SubordinatorFamily::power_jump(0.5).is_ggc());
    CHECK(SubordinatorFamily::power_jump(2.0).is_ggc());
    CHECK_THROWS_AS(SubordinatorFamily::parse("nonsense"), Error);
  }
}
