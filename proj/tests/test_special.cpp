#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thorin/quadrature.hpp"
#include "thorin/special.hpp"

using namespace thorin;
using doctest::Approx;

TEST_SUITE("special") {
  TEST_CASE("Bessel values at the origin") {
    CHECK(special::bessel_i(0.0, 0.0) == 1.0);
    CHECK(special::bessel_j(0.0, 0.0) == 1.0);
    CHECK(special::bessel_j(1.0, 0.0) == 0.0);
  }

  TEST_CASE("Laplace transform of I_1(x)/x at 2 is 2 - sqrt 3") {
    const auto r = quad::decades([](double x) { return std::exp(-x) * special::bessel_i_scaled(1.0, x) / x; }, -20, 3);
    CHECK(r.value == Approx(2.0 - std::sqrt(3.0)).epsilon(1e-10));
  }

  TEST_CASE("Wronskian I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x") {
    for (double nu : {0.0, 0.3, 1.5})
      for (double x : {0.05, 0.7, 3.0, 25.0, 300.0}) {
        const double w = special::bessel_i(nu, x) * special::bessel_k(nu + 1, x) +
                         special::bessel_i(nu + 1, x) * special::bessel_k(nu, x);
        CHECK(w * x == Approx(1.0).epsilon(1e-9));
      }
  }

  TEST_CASE("scaled Bessel functions stay finite and match beyond the switch to asymptotics") {
    for (double nu : {0.0, 0.5, 2.25}) {
      // Continuity across x = 650, where the scaled forms change method.
      CHECK(special::bessel_i_scaled(nu, 649.999) == Approx(special::bessel_i_scaled(nu, 650.001)).epsilon(1e-5));
      CHECK(special::bessel_k_scaled(nu, 649.999) == Approx(special::bessel_k_scaled(nu, 650.001)).epsilon(1e-5));
      // Leading asymptotics 1/sqrt(2 pi x) and sqrt(pi/(2x)).
      const double x = 1e9;
      CHECK(special::bessel_i_scaled(nu, x) * std::sqrt(2 * std::numbers::pi * x) == Approx(1.0).epsilon(1e-8));
      CHECK(special::bessel_k_scaled(nu, x) / std::sqrt(std::numbers::pi / (2 * x)) == Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("ascending J series agrees with the library J") {
    for (double nu : {-0.5, 0.0, 0.7})
      for (double x : {0.1, 2.0, 9.0}) CHECK(special::bessel_j_series(nu, x) == Approx(special::bessel_j(nu, x)).epsilon(1e-12));
  }

  TEST_CASE("hypergeometric 2F1 by the Euler integral") {
    CHECK(special::hyp2f1(1.0, 1.5, 3.0, 0.0) == Approx(1.0).epsilon(1e-14));
    const double closed = std::pow((1.0 + std::sqrt(2.0)) / 2.0, -2.0);
    CHECK(special::hyp2f1(1.0, 1.5, 3.0, -1.0) == Approx(closed).epsilon(1e-12));
    CHECK(closed == Approx(0.68629).epsilon(1e-5));
  }

  TEST_CASE("Lambda_t and its inverse") {
    for (double t : {0.2, 0.5, 0.9}) CHECK(special::lambda_t(t, 1.0) == Approx(0.5).epsilon(1e-14));
    CHECK(special::lambda_t(0.5, 0.0) == Approx(0.0));
    CHECK(special::lambda_t(0.7, special::lambda_t_inv(0.7, 0.3)) == Approx(0.3).epsilon(1e-12));
    CHECK(special::lambda_t_inv(0.4, 0.5) == Approx(1.0).epsilon(1e-12));
    CHECK(special::lambda_t_inv(0.4, 0.0) == Approx(0.0));
    CHECK(special::lambda_t_inv(0.5, 1.0 / 3.0) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    // Lambda_t is a cdf: its density integrates to 1.
    const auto m = quad::decades([](double y) { return special::lambda_t_density(0.6, y); }, -30, 30);
    CHECK(m.value == Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("positive stable law") {
    CHECK(special::stable_pdf(0.5, 1.0) == Approx(std::exp(-0.25) / (2 * std::sqrt(std::numbers::pi))).epsilon(1e-12));
    for (double a : {0.3, 0.5, 0.7}) {
      const auto m = quad::decades([a](double x) { return special::stable_pdf(a, x); }, -20, 25, 1e-10);
      CHECK(m.value == Approx(1.0).epsilon(1e-6));
    }
    const auto lap = quad::decades([](double x) { return std::exp(-x) * special::stable_pdf(0.7, x); }, -20, 3);
    CHECK(lap.value == Approx(std::exp(-1.0)).epsilon(1e-9));
    for (double p : {1e-6, 0.2, 0.5, 0.9})
      CHECK(special::stable_cdf(0.5, special::stable_quantile(0.5, p)) == Approx(p).epsilon(1e-9));
    CHECK(special::stable_ccdf(0.5, special::stable_quantile_upper(0.5, 1e-9)) == Approx(1e-9).epsilon(1e-6));
  }

  TEST_CASE("reciprocal gamma vanishes at the poles") {
    CHECK(special::rgamma(0.0) == 0.0);
    CHECK(special::rgamma(-2.0) == 0.0);
    CHECK(special::rgamma(0.5) == Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
  }
}
