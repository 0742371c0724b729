#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thorin/samplers.hpp"

namespace thorin {

// One check. pass is statistic <= threshold (and finite); p_value is NaN when
// the check has none.
struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string notes;
  double p_value = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::string, double>> metrics;

  nlohmann::ordered_json to_json() const;
};

TestReport make_report(std::string name, double statistic, double threshold, std::size_t n = 0,
                       std::uint64_t seed = 0, std::string notes = {});
nlohmann::ordered_json reports_to_json(const std::vector<TestReport>& reports);

// P(sqrt(n_eff) D > d) under the null, with the Stephens small-sample
// correction (sqrt(n_eff) + 0.12 + 0.11/sqrt(n_eff)) d.
double ks_pvalue(double d, double n_eff);
// Critical value of D at level alpha for effective size n_eff.
double ks_critical(double alpha, double n_eff);

double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_statistic(std::vector<double> a, const std::function<double(double)>& cdf);

// Two-sample KS at level alpha: statistic D, threshold the critical D.
// Both samples need at least min_n points.
TestReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b, double alpha = 0.01,
                         std::string name = "ks_two_sample", std::size_t min_n = 1000);
TestReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha = 0.01);
TestReport ks_one_sample(const std::vector<double>& a, const std::function<double(double)>& cdf,
                         double alpha = 0.01, std::string name = "ks_one_sample", std::size_t min_n = 1000);

struct LaplaceEstimate {
  double lambda = 0.0;
  double mean = 0.0;  // (1/n) sum exp(-lambda X_i)
  double se = 0.0;    // sample standard deviation / sqrt(n)
};
std::vector<LaplaceEstimate> mc_laplace(const std::vector<double>& values, const std::vector<double>& lambdas);

// Z-score check of an MC estimate against an exact value: statistic |z|,
// threshold k (default 3).
TestReport mc_vs_exact(std::string name, double estimate, double se, double exact, std::size_t n = 0,
                       std::uint64_t seed = 0, double k = 3.0);

// Binned chi-square of draws against a density supported in [lo, hi]. Bin
// edges are the empirical quantiles j/bins, so each bin holds about n/bins
// draws; expected counts come from quadrature of the density. statistic is
// chi2, threshold its 1 - alpha quantile with bins - 1 degrees of freedom;
// the largest |O - E|/sqrt(E) is reported as the metric max_residual.
TestReport pdf_vs_hist(const std::vector<double>& values, const std::function<double(double)>& density,
                       double lo, double hi, int bins = 50, double alpha = 0.01, std::string name = "pdf_vs_hist",
                       std::size_t min_n = 10000);

}  // namespace thorin
