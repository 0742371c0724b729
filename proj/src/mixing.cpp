#include "thorin/mixing.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "thorin/error.hpp"
#include "thorin/random.hpp"
#include "thorin/special.hpp"

namespace thorin {

using std::numbers::pi;
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEuler = std::numbers::egamma;

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

// Shortest text that reads back as v.
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void check_unit_open(double v, const char* what) {
  require(v > 0.0 && v < 1.0, std::string(what) + " must lie in (0,1)");
}

void check_prob(double p) { require(p > 0.0 && p < 1.0, "quantile: p must lie in (0,1)"); }

// G_alpha quantile from the ratio r = sin(pi(1-a)(1-p)) / sin(pi(1-a)p).
double galpha_from_ratio(double alpha, double r) { return 1.0 / (1.0 + std::pow(r, 1.0 / alpha)); }

double g0_logit_cdf(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double l = std::log1p(-y) - std::log(y);
  return 0.5 - std::atan(l / pi) / pi;
}

// Table helpers.
std::size_t cell_of(const std::vector<double>& p, double q) {
  auto it = std::upper_bound(p.begin(), p.end(), q);
  std::size_t i = static_cast<std::size_t>(it - p.begin());
  if (i == 0) return 0;
  if (i >= p.size()) return p.size() - 2;
  return i - 1;
}

double table_quantile(const TableData& t, double q) {
  const std::size_t i = cell_of(t.p, q);
  const double dp = t.p[i + 1] - t.p[i];
  if (dp <= 0.0) return t.x[i + 1];
  const double w = (q - t.p[i]) / dp;
  return t.x[i] + w * (t.x[i + 1] - t.x[i]);
}

double table_cdf(const TableData& t, double x, bool strict) {
  const auto& xs = t.x;
  if (strict ? x <= xs.front() : x < xs.front()) return 0.0;
  if (strict ? x > xs.back() : x >= xs.back()) return 1.0;
  auto it = strict ? std::lower_bound(xs.begin(), xs.end(), x) : std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t j = static_cast<std::size_t>(it - xs.begin());  // first index past x
  std::size_t i = j - 1;
  const double dx = xs[j] - xs[i];
  if (dx <= 0.0) return t.p[i];
  return t.p[i] + (t.p[j] - t.p[i]) * (x - xs[i]) / dx;
}

bool table_has_atoms(const TableData& t) {
  for (std::size_t i = 0; i + 1 < t.x.size(); ++i)
    if (t.x[i + 1] == t.x[i] && t.p[i + 1] > t.p[i]) return true;
  return false;
}

quad::Result expect_quantile(const MixingLaw& g, const std::function<double(double)>& h) {
  return quad::finite_c(
      [&](double p, double d) {
        const double q = d < 0.0 ? g.quantile(-d) : (d > 0.0 ? g.quantile_upper(d) : g.quantile(p));
        return h(q);
      },
      0.0, 1.0, 1e-12);
}

}  // namespace

MixingLaw MixingLaw::point(double a) {
  require(a > 0.0 && std::isfinite(a), "point mass location must be positive");
  return MixingLaw(PointMass{a});
}
MixingLaw MixingLaw::galpha(double alpha) {
  check_unit_open(alpha, "galpha alpha");
  return MixingLaw(GAlpha{alpha});
}
MixingLaw MixingLaw::arcsine() { return MixingLaw(ArcSine{}); }
MixingLaw MixingLaw::uniform() { return MixingLaw(Uniform01{}); }
MixingLaw MixingLaw::g0shift(double mu) {
  require(mu >= 0.0 && std::isfinite(mu), "g0shift mu must be nonnegative");
  return MixingLaw(ShiftedG0{mu});
}
MixingLaw MixingLaw::zratio(double mu) {
  check_unit_open(mu, "zratio mu");
  return MixingLaw(ZRatio{mu});
}
MixingLaw MixingLaw::pareto(double m) {
  require(m > 0.0 && std::isfinite(m), "pareto m must be positive");
  return MixingLaw(ParetoRatio{m});
}
MixingLaw MixingLaw::gamma_power(double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), "gammapow alpha must be positive");
  return MixingLaw(GammaPower{alpha});
}
MixingLaw MixingLaw::stable(double alpha) {
  check_unit_open(alpha, "stable alpha");
  return MixingLaw(Stable{alpha});
}
MixingLaw MixingLaw::reciprocal(const MixingLaw& g) {
  if (const auto* r = g.as<Reciprocal>()) return *r->inner;
  if (const auto* pm = g.as<PointMass>()) return point(1.0 / pm->a);
  return MixingLaw(Reciprocal{std::make_shared<const MixingLaw>(g)});
}

MixingLaw MixingLaw::table(std::vector<double> p, std::vector<double> x) {
  require(p.size() == x.size() && p.size() >= 2, "table: need at least two (p, x) pairs");
  require(p.front() == 0.0 && p.back() == 1.0, "table: p must run from 0 to 1");
  require(x.front() >= 0.0, "table: x must be nonnegative");
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    require(p[i + 1] >= p[i], "table: p must be nondecreasing");
    require(x[i + 1] >= x[i], "table: x must be nondecreasing");
  }
  require(x.back() > 0.0, "table: law must not be concentrated at 0");
  if (x.front() == 0.0) {
    for (std::size_t i = 0; i + 1 < p.size() && x[i + 1] == 0.0; ++i)
      require(p[i + 1] == p[i], "table: positive mass at 0");
  }
  auto data = std::make_shared<TableData>();
  data->p = std::move(p);
  data->x = std::move(x);
  return MixingLaw(QuantileTable{std::move(data)});
}

MixingLaw MixingLaw::table_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open table " + path);
  std::vector<double> p, x;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ';', ',');
    auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    try {
      std::size_t used = 0;
      double a = std::stod(line.substr(0, comma), &used);
      double b = std::stod(line.substr(comma + 1));
      p.push_back(a);
      x.push_back(b);
    } catch (const std::exception&) {
      continue;  // header or comment
    }
  }
  return table(std::move(p), std::move(x));
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

double parse_number(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::Domain, "bad numeric parameter in family spec '" + spec + "'");
  }
}

}  // namespace

MixingLaw MixingLaw::parse(std::string_view raw) {
  const std::string spec = trim(raw);
  std::string lower = spec;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  const std::string rec = "reciprocal(";
  if (lower.rfind(rec, 0) == 0) {
    require(lower.back() == ')', "unbalanced parentheses in '" + spec + "'");
    return reciprocal(parse(std::string_view(spec).substr(rec.size(), spec.size() - rec.size() - 1)));
  }
  const auto colon = lower.find(':');
  const std::string head = lower.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto num = [&] {
    require(!arg.empty(), "family '" + head + "' needs a parameter");
    return parse_number(trim(arg), spec);
  };
  auto bare = [&] { require(colon == std::string::npos, "family '" + head + "' takes no parameter"); };
  if (head == "arcsine") return bare(), arcsine();
  if (head == "uniform") return bare(), uniform();
  if (head == "point") return point(num());
  if (head == "galpha") {
    const double a = num();
    if (a == 1.0) return uniform();
    return galpha(a);
  }
  if (head == "g0shift") return g0shift(num());
  if (head == "zratio") return zratio(num());
  if (head == "pareto") return pareto(num());
  if (head == "gammapow") return gamma_power(num());
  if (head == "stable") return stable(num());
  if (head == "table") {
    require(!arg.empty(), "table needs a path");
    return table_from_csv(trim(arg));
  }
  fail(ErrorCode::Domain, "unknown mixing law '" + spec + "'");
}

const MixingLaw* MixingLaw::inner() const {
  if (const auto* r = as<Reciprocal>()) return r->inner.get();
  return nullptr;
}

std::string MixingLaw::name() const {
  return std::visit(Overload{
      [](const PointMass& f) { return "point:" + fmt(f.a); },
      [](const GAlpha& f) { return "galpha:" + fmt(f.alpha); },
      [](const ArcSine&) { return std::string("arcsine"); },
      [](const Uniform01&) { return std::string("uniform"); },
      [](const ShiftedG0& f) { return "g0shift:" + fmt(f.mu); },
      [](const ZRatio& f) { return "zratio:" + fmt(f.mu); },
      [](const ParetoRatio& f) { return "pareto:" + fmt(f.m); },
      [](const GammaPower& f) { return "gammapow:" + fmt(f.alpha); },
      [](const Stable& f) { return "stable:" + fmt(f.alpha); },
      [](const Reciprocal& f) { return "reciprocal(" + f.inner->name() + ")"; },
      [](const QuantileTable& f) { return "table[" + std::to_string(f.data->p.size()) + "]"; },
  }, family_);
}

Support MixingLaw::support() const {
  return std::visit(Overload{
      [](const PointMass& f) { return Support{f.a, f.a}; },
      [](const GAlpha&) { return Support{0.0, 1.0}; },
      [](const ArcSine&) { return Support{0.0, 1.0}; },
      [](const Uniform01&) { return Support{0.0, 1.0}; },
      [](const ShiftedG0& f) { return Support{f.mu, f.mu + 1.0}; },
      [](const ZRatio&) { return Support{0.0, kInf}; },
      [](const ParetoRatio&) { return Support{0.0, kInf}; },
      [](const GammaPower&) { return Support{0.0, kInf}; },
      [](const Stable&) { return Support{0.0, kInf}; },
      [](const Reciprocal& f) {
        Support s = f.inner->support();
        return Support{s.hi == kInf ? 0.0 : 1.0 / s.hi, s.lo == 0.0 ? kInf : 1.0 / s.lo};
      },
      [](const QuantileTable& f) { return Support{f.data->x.front(), f.data->x.back()}; },
  }, family_);
}

bool MixingLaw::has_density() const {
  if (is_atom()) return false;
  if (const auto* t = as<QuantileTable>()) return !table_has_atoms(*t->data);
  if (const auto* r = as<Reciprocal>()) return r->inner->has_density();
  return true;
}

bool MixingLaw::log_integrable_below() const {
  if (const auto* f = as<ShiftedG0>()) return f->mu > 0.0;
  if (const auto* r = as<Reciprocal>()) return r->inner->log_integrable_above();
  return true;
}

bool MixingLaw::log_integrable_above() const {
  if (const auto* r = as<Reciprocal>()) return r->inner->log_integrable_below();
  return true;
}

double MixingLaw::pdf(double x) const {
  require(x > 0.0, "pdf: x must be positive");
  if (!has_density()) fail(ErrorCode::UnsupportedFamily, "pdf: " + name() + " has no density");
  return std::visit(Overload{
      [](const PointMass&) { return 0.0; },
      [x](const GAlpha& f) {
        if (x >= 1.0) return x == 1.0 ? kInf : 0.0;
        const double a = f.alpha;
        const double lx = std::log(x), l1 = std::log1p(-x);
        const double u = std::exp(a * l1), v = std::exp(a * lx);
        const double den = u * u - 2.0 * u * v * std::cos(pi * a) + v * v;
        const double c = a * std::sin(pi * a) / ((1.0 - a) * pi);
        return c * std::exp((a - 1.0) * (lx + l1)) / den;
      },
      [x](const ArcSine&) { return x >= 1.0 ? (x == 1.0 ? kInf : 0.0) : 1.0 / (pi * std::sqrt(x * (1.0 - x))); },
      [x](const Uniform01&) { return x < 1.0 ? 1.0 : (x == 1.0 ? 1.0 : 0.0); },
      [x](const ShiftedG0& f) {
        const double y = x - f.mu;
        if (y <= 0.0 || y >= 1.0) return 0.0;
        const double l = std::log1p(-y) - std::log(y);
        return 1.0 / (y * (1.0 - y) * (l * l + pi * pi));
      },
      [x](const ZRatio& f) { return special::lambda_t_density(f.mu, x); },
      [x](const ParetoRatio& f) { return f.m * std::exp(-(f.m + 1.0) * std::log1p(x)); },
      [x](const GammaPower& f) {
        const double xa = std::pow(x, f.alpha);
        return f.alpha * xa / x * std::exp(-xa);
      },
      [x](const Stable& f) { return special::stable_pdf(f.alpha, x); },
      [x](const Reciprocal& f) { return f.inner->pdf(1.0 / x) / (x * x); },
      [x](const QuantileTable& f) {
        const auto& t = *f.data;
        if (x < t.x.front() || x > t.x.back()) return 0.0;
        auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
        std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - t.x.begin()), t.x.size() - 1);
        std::size_t i = j - 1;
        const double dx = t.x[j] - t.x[i];
        return dx > 0.0 ? (t.p[j] - t.p[i]) / dx : 0.0;
      },
  }, family_);
}

double MixingLaw::cdf(double x) const {
  if (std::isnan(x)) fail(ErrorCode::Domain, "cdf: NaN argument");
  return std::visit(Overload{
      [x](const PointMass& f) { return x >= f.a ? 1.0 : 0.0; },
      [x](const GAlpha& f) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        const double y = std::exp(f.alpha * (std::log(x) - std::log1p(-x)));
        return special::lambda_t(1.0 - f.alpha, y);
      },
      [x](const ArcSine&) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return 2.0 / pi * std::asin(std::sqrt(x));
      },
      [x](const Uniform01&) { return std::clamp(x, 0.0, 1.0); },
      [x](const ShiftedG0& f) { return g0_logit_cdf(x - f.mu); },
      [x](const ZRatio& f) { return x <= 0.0 ? 0.0 : special::lambda_t(f.mu, x); },
      [x](const ParetoRatio& f) { return x <= 0.0 ? 0.0 : -std::expm1(-f.m * std::log1p(x)); },
      [x](const GammaPower& f) { return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x, f.alpha)); },
      [x](const Stable& f) { return special::stable_cdf(f.alpha, x); },
      [x](const Reciprocal& f) {
        if (x <= 0.0) return 0.0;
        if (const auto* t = f.inner->as<QuantileTable>()) return 1.0 - table_cdf(*t->data, 1.0 / x, true);
        return 1.0 - f.inner->cdf(1.0 / x);
      },
      [x](const QuantileTable& f) { return table_cdf(*f.data, x, false); },
  }, family_);
}

double MixingLaw::quantile(double p) const {
  check_prob(p);
  return std::visit(Overload{
      [](const PointMass& f) { return f.a; },
      [p](const GAlpha& f) {
        const double t = 1.0 - f.alpha;
        return galpha_from_ratio(f.alpha, std::sin(pi * t * (1.0 - p)) / std::sin(pi * t * p));
      },
      [p](const ArcSine&) { return std::pow(std::sin(0.5 * pi * p), 2); },
      [p](const Uniform01&) { return p; },
      [p](const ShiftedG0& f) { return f.mu + 1.0 / (1.0 + std::exp(pi / std::tan(pi * p))); },
      [p](const ZRatio& f) { return special::lambda_t_inv(f.mu, p); },
      [p](const ParetoRatio& f) { return std::expm1(-std::log1p(-p) / f.m); },
      [p](const GammaPower& f) { return std::pow(-std::log1p(-p), 1.0 / f.alpha); },
      [p](const Stable& f) { return special::stable_quantile(f.alpha, p); },
      [p](const Reciprocal& f) { return 1.0 / f.inner->quantile_upper(p); },
      [p](const QuantileTable& f) { return table_quantile(*f.data, p); },
  }, family_);
}

double MixingLaw::quantile_upper(double s) const {
  require(s > 0.0 && s < 1.0, "quantile_upper: s must lie in (0,1)");
  return std::visit(Overload{
      [](const PointMass& f) { return f.a; },
      [s](const GAlpha& f) {
        const double t = 1.0 - f.alpha;
        return galpha_from_ratio(f.alpha, std::sin(pi * t * s) / std::sin(pi * t * (1.0 - s)));
      },
      [s](const ArcSine&) { return std::pow(std::cos(0.5 * pi * s), 2); },
      [s](const Uniform01&) { return 1.0 - s; },
      [s](const ShiftedG0& f) { return f.mu + 1.0 / (1.0 + std::exp(-pi / std::tan(pi * s))); },
      [s](const ZRatio& f) { return std::sin(pi * f.mu * (1.0 - s)) / std::sin(pi * f.mu * s); },
      [s](const ParetoRatio& f) { return std::expm1(-std::log(s) / f.m); },
      [s](const GammaPower& f) { return std::pow(-std::log(s), 1.0 / f.alpha); },
      [s](const Stable& f) { return special::stable_quantile_upper(f.alpha, s); },
      [s](const Reciprocal& f) { return 1.0 / f.inner->quantile(s); },
      [s](const QuantileTable& f) { return table_quantile(*f.data, 1.0 - s); },
  }, family_);
}

quad::Result MixingLaw::expect(const std::function<double(double)>& h) const {
  if (const auto* pm = as<PointMass>()) return {h(pm->a), 0.0};
  if (const auto* r = as<Reciprocal>()) return r->inner->expect([&](double x) { return h(1.0 / x); });
  if (const auto* t = as<QuantileTable>()) {
    const auto& d = *t->data;
    quad::Result acc;
    for (std::size_t i = 0; i + 1 < d.p.size(); ++i) {
      const double dp = d.p[i + 1] - d.p[i];
      if (dp <= 0.0) continue;
      const double x0 = d.x[i], x1 = d.x[i + 1];
      if (x1 == x0) {
        acc.value += dp * h(x0);
        continue;
      }
      auto r = quad::finite_c([&](double w, double c) {
        const double x = c < 0.0 ? x0 + (x1 - x0) * (-c) : (c > 0.0 ? x1 - (x1 - x0) * c : x0 + (x1 - x0) * w);
        return h(x);
      }, 0.0, 1.0, 1e-12);
      acc.value += dp * r.value;
      acc.error += dp * r.error;
    }
    return acc;
  }
  if (const auto* st = as<Stable>()) {
    const double a = st->alpha;
    const double med = special::stable_quantile(a, 0.5);
    auto lo = quad::finite([&](double x) { return x > 0.0 ? h(x) * special::stable_pdf(a, x) : 0.0; }, 0.0, med, 1e-12);
    auto hi = quad::upper([&](double x) { return h(x) * special::stable_pdf(a, x); }, med, 1e-12);
    return {lo.value + hi.value, lo.error + hi.error};
  }
  return expect_quantile(*this, h);
}

double MixingLaw::log_moment() const {
  auto divergent = [this]() -> double { fail(ErrorCode::Divergent, "E|log G| is infinite for " + name()); };
  return std::visit(Overload{
      [](const PointMass& f) { return std::log(f.a); },
      [](const GAlpha& f) { return std::log(f.alpha) / (1.0 - f.alpha); },
      [](const ArcSine&) { return -std::log(4.0); },
      [](const Uniform01&) { return -1.0; },
      [&](const ShiftedG0& f) { return f.mu > 0.0 ? -std::log(std::log1p(1.0 / f.mu)) : divergent(); },
      [](const ZRatio&) { return 0.0; },
      [](const ParetoRatio& f) { return -kEuler - boost::math::digamma(f.m); },
      [](const GammaPower& f) { return -kEuler / f.alpha; },
      [](const Stable& f) { return kEuler * (1.0 / f.alpha - 1.0); },
      [&](const Reciprocal& f) { return -f.inner->log_moment(); },
      [&](const QuantileTable&) {
        auto r = expect([](double x) { return std::log(x); });
        return std::isfinite(r.value) ? r.value : divergent();
      },
  }, family_);
}

double MixingLaw::mean() const {
  return std::visit(Overload{
      [](const PointMass& f) { return f.a; },
      [](const GAlpha&) { return 0.5; },
      [](const ArcSine&) { return 0.5; },
      [](const Uniform01&) { return 0.5; },
      [](const ShiftedG0& f) { return f.mu + 0.5; },
      [](const ZRatio&) { return kInf; },
      [](const ParetoRatio& f) { return f.m > 1.0 ? 1.0 / (f.m - 1.0) : kInf; },
      [](const GammaPower& f) { return std::tgamma(1.0 + 1.0 / f.alpha); },
      [](const Stable&) { return kInf; },
      [](const Reciprocal& f) { return f.inner->mean_inverse(); },
      [](const QuantileTable& f) {
        const auto& d = *f.data;
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < d.p.size(); ++i) s += (d.p[i + 1] - d.p[i]) * 0.5 * (d.x[i] + d.x[i + 1]);
        return s;
      },
  }, family_);
}

double MixingLaw::mean_inverse() const {
  return std::visit(Overload{
      [](const PointMass& f) { return 1.0 / f.a; },
      [](const GAlpha&) { return kInf; },
      [](const ArcSine&) { return kInf; },
      [](const Uniform01&) { return kInf; },
      [](const ShiftedG0& f) {
        return f.mu > 0.0 ? 1.0 / (f.mu * (f.mu + 1.0) * std::log1p(1.0 / f.mu)) : kInf;
      },
      [](const ZRatio&) { return kInf; },
      [](const ParetoRatio&) { return kInf; },
      [](const GammaPower& f) { return f.alpha > 1.0 ? std::tgamma(1.0 - 1.0 / f.alpha) : kInf; },
      [](const Stable& f) { return std::tgamma(1.0 + 1.0 / f.alpha); },
      [](const Reciprocal& f) { return f.inner->mean(); },
      [](const QuantileTable& f) {
        // Exact integral of 1/quantile over each linear cell.
        const auto& d = *f.data;
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < d.p.size(); ++i) {
          const double dp = d.p[i + 1] - d.p[i];
          if (dp <= 0.0) continue;
          const double x0 = d.x[i], x1 = d.x[i + 1];
          if (x0 == 0.0) return kInf;
          s += x1 == x0 ? dp / x0 : dp * std::log(x1 / x0) / (x1 - x0);
        }
        return s;
      },
  }, family_);
}

double MixingLaw::sample(RandomStream& rng) const {
  if (const auto* st = as<Stable>()) return stable_variate(rng, st->alpha);
  if (const auto* gp = as<GammaPower>()) return std::pow(rng.exponential(), 1.0 / gp->alpha);
  if (const auto* pm = as<PointMass>()) return pm->a;
  if (const auto* r = as<Reciprocal>()) return 1.0 / r->inner->sample(rng);
  return quantile(rng.uniform());
}

}  // namespace thorin
