#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "thorin/random.hpp"
#include "thorin/samplers.hpp"
#include "thorin/verify.hpp"

using namespace thorin;
using doctest::Approx;

TEST_SUITE("random") {
  TEST_CASE("streams are reproducible and splits are independent of the parent position") {
    RandomStream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    RandomStream c(42);
    c.next_u64();
    auto s1 = c.split(3);
    auto s2 = RandomStream(42).split(3);
    CHECK(s1.next_u64() == s2.next_u64());
    CHECK(RandomStream(42).split(3).next_u64() != RandomStream(42).split(4).next_u64());
  }

  TEST_CASE("uniform lies in the open unit interval") {
    RandomStream r(1);
    for (int i = 0; i < 100000; ++i) {
      const double u = r.uniform();
      CHECK_UNARY(u > 0.0 && u < 1.0);
    }
  }

  TEST_CASE("gamma variates") {
    // Mean at t = 2 within 3 sigma.
    const auto v = generate_values(1000000, 5, [](RandomStream& r) { return gamma_variate(r, 2.0); });
    double m = 0.0;
    for (double x : v) m += x;
    m /= v.size();
    CHECK(std::abs(m - 2.0) < 3.0 * std::sqrt(2.0) / 1000.0);

    // Shape 1 is exponential.
    const auto e = generate_values(100000, 6, [](RandomStream& r) { return gamma_variate(r, 1.0); });
    CHECK(ks_one_sample(e, [](double x) { return 1.0 - std::exp(-x); }).pass);

    // E gamma_t^3 = Gamma(3 + t)/Gamma(t) = 1.875 at t = 1/2.
    const auto g = generate_values(1000000, 7, [](RandomStream& r) { return gamma_variate(r, 0.5); });
    double s = 0.0, s2 = 0.0;
    for (double x : g) {
      s += x * x * x;
      s2 += x * x * x * x * x * x;
    }
    const double n = g.size(), mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.875) < 3.0 * se);
  }

  TEST_CASE("log gamma variates at tiny shapes") {
    // P(gamma_t < x) ~ x^t/Gamma(1+t): log gamma_t t is close to log U.
    const double t = 1e-3;
    const auto v = generate_values(20000, 8, [t](RandomStream& r) { return std::exp(t * log_gamma_variate(r, t)); });
    CHECK(ks_one_sample(v, [](double u) { return std::clamp(u, 0.0, 1.0); }).statistic < 0.02);
  }

  TEST_CASE("beta and stable variates") {
    const auto b = generate_values(100000, 9, [](RandomStream& r) { return beta_variate(r, 0.5, 0.5); });
    CHECK(ks_one_sample(b, [](double x) { return 2.0 / M_PI * std::asin(std::sqrt(x)); }).pass);
    // 1/2-stable: S = 1/(4 gamma_{1/2}) in law.
    const auto s = generate_values(100000, 10, [](RandomStream& r) { return stable_variate(r, 0.5); });
    CHECK(ks_one_sample(s, [](double x) { return std::erfc(0.5 / std::sqrt(x)); }).pass);
  }
}
