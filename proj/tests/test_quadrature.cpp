#include <doctest.h>

#include <cmath>
#include <numbers>

#include "thorin/quadrature.hpp"

using namespace thorin;
using doctest::Approx;

TEST_SUITE("quadrature") {
  TEST_CASE("endpoint singularities") {
    CHECK(quad::finite([](double x) { return -std::log(x); }, 0.0, 1.0).value == Approx(1.0).epsilon(1e-12));
    // Nodes within 1e-16 of x = 1 round onto the endpoint, dropping about 2 sqrt(1e-16) of mass.
    CHECK(quad::finite([](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0).value ==
          Approx(std::numbers::pi).epsilon(1e-7));
    // finite_c hands over the distance to the endpoint, so 1/sqrt(d) keeps precision.
    const auto r = quad::finite_c([](double, double d) { return 1.0 / std::sqrt(std::abs(d)); }, 0.0, 2.0);
    CHECK(r.value == Approx(4.0 * std::sqrt(1.0)).epsilon(1e-10));
  }

  TEST_CASE("algebraic weights") {
    // int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi
    CHECK(quad::algebraic([](double) { return 1.0; }, 0.0, 1.0, -0.5, -0.5).value ==
          Approx(std::numbers::pi).epsilon(1e-12));
    // int_0^inf x^{-1/2} e^{-x} dx = sqrt(pi)
    CHECK(quad::algebraic_upper([](double x) { return std::exp(-x); }, 0.0, -0.5).value ==
          Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  }

  TEST_CASE("half line and smooth rules") {
    CHECK(quad::upper([](double x) { return std::exp(-x); }, 0.0).value == Approx(1.0).epsilon(1e-12));
    CHECK(quad::smooth([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2).value ==
          Approx(1.0).epsilon(1e-13));
    // Very short interval: the mapped rule keeps a sane error estimate.
    const auto s = quad::smooth([](double x) { return x; }, 1.0, 1.0 + 1e-9);
    CHECK(s.value == Approx(1e-9).epsilon(1e-9));
  }

  TEST_CASE("per-decade rule keeps slowly decaying tails") {
    // Density (1/2) x^{-3/2} on [1, inf): mass 1, tail ~ x^{-1/2}.
    const auto r = quad::decades([](double x) { return x < 1.0 ? 0.0 : 0.5 * std::pow(x, -1.5); }, 0, 30);
    CHECK(r.value == Approx(1.0).epsilon(1e-12));
  }
}
