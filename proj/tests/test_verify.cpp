#include <doctest.h>

#include <cmath>
#include <vector>

#include "thorin/error.hpp"
#include "thorin/samplers.hpp"
#include "thorin/verify.hpp"

using namespace thorin;
using doctest::Approx;

namespace {

std::vector<double> gammas(double shape, std::size_t n, std::uint64_t seed) {
  return generate_values(n, seed, [shape](RandomStream& r) { return gamma_variate(r, shape); });
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("KS statistic and p-values") {
    const auto a = gammas(1.0, 5000, 41);
    CHECK(ks_statistic(a, a) == 0.0);
    CHECK(ks_statistic({1.0, 2.0}, {3.0, 4.0}) == 1.0);
    const auto r = ks_two_sample(a, gammas(2.0, 5000, 42));
    CHECK_FALSE(r.pass);
    CHECK(r.p_value < 1e-6);
    CHECK(ks_two_sample(a, gammas(1.0, 5000, 43)).pass);
    CHECK(ks_pvalue(0.0, 100.0) == Approx(1.0));
    const double crit = ks_critical(0.05, 1000.0);
    CHECK(ks_pvalue(crit, 1000.0) == Approx(0.05).epsilon(1e-6));
    // Asymptotic 5% point 1.358/sqrt(n).
    CHECK(crit * std::sqrt(1000.0) == Approx(1.358).epsilon(0.01));
  }

  TEST_CASE("KS rejection rate under the null is close to alpha") {
    int rejected = 0;
    const int reps = 300;
    for (int i = 0; i < reps; ++i) {
      const auto a = gammas(1.0, 1000, 1000 + 2 * i), b = gammas(1.0, 1000, 1001 + 2 * i);
      rejected += !ks_two_sample(a, b, 0.05).pass;
    }
    // Binomial(300, 0.05): mean 15, sd 3.8.
    CHECK(rejected >= 4);
    CHECK(rejected <= 27);
  }

  TEST_CASE("too few samples is a domain error") {
    const std::vector<double> small(10, 1.0);
    CHECK_THROWS_AS(ks_two_sample(small, small), Error);
    CHECK_THROWS_AS(ks_one_sample(small, [](double x) { return x; }), Error);
    CHECK_THROWS_AS(pdf_vs_hist(small, [](double) { return 1.0; }, 0.0, 1.0), Error);
  }

  TEST_CASE("Monte Carlo Laplace transform") {
    const auto v = gammas(2.0, 200000, 44);
    const auto est = mc_laplace(v, {0.0, 1.0});
    CHECK(est[0].mean == 1.0);
    CHECK(est[0].se == 0.0);
    CHECK(mc_vs_exact("gamma2", est[1].mean, est[1].se, 0.25).pass);
    CHECK_FALSE(mc_vs_exact("wrong", est[1].mean, est[1].se, 0.26).pass);
  }

  TEST_CASE("binned chi-square against a density") {
    const auto v = gammas(2.0, 50000, 45);
    const auto ok = pdf_vs_hist(v, [](double x) { return x * std::exp(-x); }, 0.0, INFINITY);
    CHECK(ok.pass);
    CHECK(ok.p_value > 0.01);
    const auto bad = pdf_vs_hist(v, [](double x) { return 0.25 * x * x * x * std::exp(-x) / 1.5; }, 0.0, INFINITY);
    CHECK_FALSE(bad.pass);
  }

  TEST_CASE("reports serialize") {
    auto r = make_report("x", 0.5, 1.0, 10, 7, "note");
    CHECK(r.pass);
    CHECK_FALSE(make_report("nan", NAN, 1.0).pass);
    r.metrics.push_back({"m", 2.0});
    const auto j = reports_to_json({r});
    CHECK(j.is_array());
    CHECK(j[0]["name"] == "x");
    CHECK(j[0]["pass"] == true);
    CHECK(j[0]["seed"] == 7);
  }
}
