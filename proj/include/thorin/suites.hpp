#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thorin/verify.hpp"

namespace thorin {

// Acceptance criteria 1-10, each a group of reports that must all pass.
//   1  closed-form Laplace transforms vs Wiener-Gamma Monte Carlo
//   2  duality of Bernstein functions under G -> 1/G
//   3  equivalence of the four samplers of Gamma_1(G_{1/2})
//   4  closed densities: normalization, histogram fit, small-x law
//   5  dual and Bessel Monte Carlo densities, negative moment identity
//   6  hyperbolic and Bessel subordinator identities
//   7  Thorin cdf recovery round trip for G_{1/2}
//   8  Pareto and stable worked examples, stable moment identity
//   9  small-t and Moebius limit laws
//   10 beta multiplication, mixture and convolution identities
struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<TestReport> reports;
  double seconds = 0.0;

  bool pass() const;
};

inline constexpr int kCriteria = 10;

std::string criterion_title(int id);
// n is the Monte Carlo sample size used by every randomized check in the
// criterion; seed fixes all streams.
CriterionResult run_criterion(int id, std::size_t n, std::uint64_t seed);

// identities -> 1, 2, 3, 6, 9, 10; densities -> 4, 5; thorin -> 7, 8; all -> 1-10.
std::vector<int> suite_criteria(std::string_view suite);
std::vector<TestReport> run_suite(std::string_view suite, std::size_t n, std::uint64_t seed);

}  // namespace thorin
