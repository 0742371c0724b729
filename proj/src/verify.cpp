#include "thorin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "thorin/error.hpp"
#include "thorin/quadrature.hpp"

namespace thorin {

namespace {

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

// Kolmogorov survival function Q(z) = P(K > z).
double kolmogorov_q(double z) {
  if (z <= 0.0) return 1.0;
  if (z < 1.18) {
    // Theta-transformed form, fast for small z.
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * z * z);
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double term = std::exp(-(2.0 * k - 1.0) * (2.0 * k - 1.0) * c);
      s += term;
      if (term < 1e-18 * s) break;
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / z * s;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * z * z);
    s += (k % 2 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

double stephens(double n_eff) {
  const double r = std::sqrt(n_eff);
  return r + 0.12 + 0.11 / r;
}

}  // namespace

nlohmann::ordered_json TestReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["statistic"] = number(statistic);
  j["threshold"] = number(threshold);
  j["pass"] = pass;
  j["n"] = n;
  j["seed"] = seed;
  j["notes"] = notes;
  if (!std::isnan(p_value)) j["p_value"] = p_value;
  for (const auto& [k, v] : metrics) j[k] = number(v);
  return j;
}

TestReport make_report(std::string name, double statistic, double threshold, std::size_t n, std::uint64_t seed,
                       std::string notes) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.threshold = threshold;
  r.pass = std::isfinite(statistic) && statistic <= threshold;
  r.n = n;
  r.seed = seed;
  r.notes = std::move(notes);
  return r;
}

nlohmann::ordered_json reports_to_json(const std::vector<TestReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  return arr;
}

double ks_pvalue(double d, double n_eff) { return kolmogorov_q(stephens(n_eff) * d); }

double ks_critical(double alpha, double n_eff) {
  require(alpha > 0.0 && alpha < 1.0, "ks_critical: alpha must lie in (0, 1)");
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_q(mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) / stephens(n_eff);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_statistic(std::vector<double> a, const std::function<double(double)>& cdf) {
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

TestReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b, double alpha, std::string name,
                         std::size_t min_n) {
  if (a.size() < min_n || b.size() < min_n)
    fail(ErrorCode::Domain, "ks_two_sample: needs at least " + std::to_string(min_n) + " draws per sample");
  for (const auto* v : {&a, &b})
    for (double x : *v)
      if (std::isnan(x)) fail(ErrorCode::Domain, "ks_two_sample: NaN draw");
  const double d = ks_statistic(a, b);
  const double n_eff = static_cast<double>(a.size()) * b.size() / (a.size() + b.size());
  auto r = make_report(std::move(name), d, ks_critical(alpha, n_eff), std::min(a.size(), b.size()));
  r.p_value = ks_pvalue(d, n_eff);
  r.metrics = {{"alpha", alpha}, {"n_a", static_cast<double>(a.size())}, {"n_b", static_cast<double>(b.size())}};
  return r;
}

TestReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha) {
  auto r = ks_two_sample(a.values, b.values, alpha, a.sampler_id + " vs " + b.sampler_id);
  r.seed = a.seed;
  return r;
}

TestReport ks_one_sample(const std::vector<double>& a, const std::function<double(double)>& cdf, double alpha,
                         std::string name, std::size_t min_n) {
  if (a.size() < min_n)
    fail(ErrorCode::Domain, "ks_one_sample: needs at least " + std::to_string(min_n) + " draws");
  const double d = ks_statistic(a, cdf);
  const double n = static_cast<double>(a.size());
  auto r = make_report(std::move(name), d, ks_critical(alpha, n), a.size());
  r.p_value = ks_pvalue(d, n);
  r.metrics = {{"alpha", alpha}};
  return r;
}

std::vector<LaplaceEstimate> mc_laplace(const std::vector<double>& values, const std::vector<double>& lambdas) {
  std::vector<LaplaceEstimate> out;
  out.reserve(lambdas.size());
  const double n = static_cast<double>(values.size());
  for (double l : lambdas) {
    require(l >= 0.0, "mc_laplace: lambda must be nonnegative");
    LaplaceEstimate e;
    e.lambda = l;
    if (l == 0.0 || values.empty()) {
      e.mean = values.empty() ? 0.0 : 1.0;
      out.push_back(e);
      continue;
    }
    long double s = 0.0L, s2 = 0.0L;
    for (double x : values) {
      const long double v = std::exp(-l * x);
      s += v;
      s2 += v * v;
    }
    const long double mean = s / n;
    const long double var = values.size() > 1 ? std::max(0.0L, (s2 - n * mean * mean) / (n - 1.0L)) : 0.0L;
    e.mean = static_cast<double>(mean);
    e.se = static_cast<double>(std::sqrt(var / n));
    out.push_back(e);
  }
  return out;
}

TestReport mc_vs_exact(std::string name, double estimate, double se, double exact, std::size_t n,
                       std::uint64_t seed, double k) {
  const double diff = estimate - exact;
  const double z = se > 0.0 ? std::abs(diff) / se : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  auto r = make_report(std::move(name), z, k, n, seed);
  r.metrics = {{"estimate", estimate}, {"se", se}, {"exact", exact},
               {"relative_error", exact != 0.0 ? std::abs(diff / exact) : std::abs(diff)}};
  return r;
}

TestReport pdf_vs_hist(const std::vector<double>& values, const std::function<double(double)>& density, double lo,
                       double hi, int bins, double alpha, std::string name, std::size_t min_n) {
  if (values.size() < min_n)
    fail(ErrorCode::Domain, "pdf_vs_hist: needs at least " + std::to_string(min_n) + " draws");
  require(bins >= 2, "pdf_vs_hist: need at least two bins");
  require(lo < hi, "pdf_vs_hist: empty support");
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();

  std::vector<double> edges{lo};
  for (int j = 1; j < bins; ++j) {
    const double e = v[static_cast<std::size_t>(static_cast<double>(j) * n / bins)];
    if (e > edges.back() && e < hi) edges.push_back(e);
  }
  edges.push_back(hi);
  const int k = static_cast<int>(edges.size()) - 1;
  require(k >= 2, "pdf_vs_hist: draws do not spread over two bins");

  double chi2 = 0.0, max_res = 0.0, mass = 0.0;
  for (int j = 0; j < k; ++j) {
    const double a = edges[j], b = edges[j + 1];
    // Bins are [a, b); the last one also takes anything at or beyond hi.
    const auto first = j == 0 ? v.begin() : std::lower_bound(v.begin(), v.end(), a);
    const auto last = j == k - 1 ? v.end() : std::lower_bound(v.begin(), v.end(), b);
    const auto obs = static_cast<std::size_t>(last - first);
    const double p = std::isinf(b) ? quad::upper(density, a, 1e-10).value : quad::finite(density, a, b, 1e-10).value;
    mass += p;
    const double expct = p * n;
    if (!(expct > 0.0)) {
      chi2 = std::numeric_limits<double>::infinity();
      max_res = std::numeric_limits<double>::infinity();
      continue;
    }
    const double res = (static_cast<double>(obs) - expct) / std::sqrt(expct);
    chi2 += res * res;
    max_res = std::max(max_res, std::abs(res));
  }
  const boost::math::chi_squared dist(k - 1);
  const double crit = boost::math::quantile(boost::math::complement(dist, alpha));
  auto r = make_report(std::move(name), chi2, crit, n);
  r.p_value = std::isfinite(chi2) ? boost::math::gamma_q(0.5 * (k - 1), 0.5 * chi2) : 0.0;
  r.metrics = {{"bins", static_cast<double>(k)}, {"max_residual", max_res}, {"density_mass", mass}};
  return r;
}

}  // namespace thorin
