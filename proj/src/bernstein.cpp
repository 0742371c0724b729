#include "thorin/bernstein.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "thorin/error.hpp"
#include "thorin/special.hpp"

namespace thorin {

using std::numbers::pi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest text that reads back as v.
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void check_lambda(double lambda) {
  require(lambda >= 0.0 && !std::isnan(lambda), "psi: lambda must be nonnegative");
}

// acosh(1 + lambda) without cancellation for small lambda.
double acosh1p(double lambda) { return std::log1p(lambda + std::sqrt(lambda * (2.0 + lambda))); }

// Closed psi per unit Thorin mass for the catalog mixing laws.
bool law_psi_closed(const MixingLaw& g, double l, double& out) {
  if (l == 0.0) {
    out = 0.0;
    return g.as<PointMass>() || g.as<ArcSine>() || g.as<Uniform01>() || g.as<GAlpha>() ||
           (g.as<ShiftedG0>() && g.as<ShiftedG0>()->mu > 0.0) ||
           (g.inner() && (g.inner()->as<ArcSine>() || g.inner()->as<Uniform01>() || g.inner()->as<GAlpha>() ||
                          g.inner()->as<ShiftedG0>()));
  }
  if (const auto* p = g.as<PointMass>()) {
    out = std::log1p(l / p->a);
    return true;
  }
  double alpha = -1.0;
  if (g.as<ArcSine>()) alpha = 0.5;
  if (const auto* ga = g.as<GAlpha>()) alpha = ga->alpha;
  if (alpha == 0.5) {
    out = 2.0 * std::asinh(std::sqrt(l));
    return true;
  }
  if (alpha > 0.0) {
    out = -(alpha * std::log(l) + std::log(std::expm1(alpha * std::log1p(1.0 / l)))) / (1.0 - alpha);
    return true;
  }
  if (g.as<Uniform01>()) {
    out = (1.0 + l) * std::log1p(l) - l * std::log(l);
    return true;
  }
  if (const auto* s = g.as<ShiftedG0>()) {
    if (s->mu <= 0.0) fail(ErrorCode::Divergent, "psi: E log+(1/G) is infinite for " + g.name());
    out = std::log(std::log1p(1.0 / s->mu)) - std::log(std::log1p(1.0 / (l + s->mu)));
    return true;
  }
  const MixingLaw* in = g.inner();
  if (!in) return false;
  double ai = -1.0;
  if (in->as<ArcSine>()) ai = 0.5;
  if (const auto* ga = in->as<GAlpha>()) ai = ga->alpha;
  if (ai == 0.5) {
    out = 2.0 * std::log1p(l / (2.0 * (1.0 + std::sqrt(1.0 + l))));
    return true;
  }
  if (ai > 0.0) {
    out = -std::log(std::expm1(ai * std::log1p(l)) / (ai * l)) / (1.0 - ai);
    return true;
  }
  if (in->as<Uniform01>()) {
    if (l < 1e-4) {
      out = l * (0.5 + l * (-1.0 / 6.0 + l * (1.0 / 12.0 - l / 20.0)));
    } else {
      out = (1.0 + l) / l * std::log1p(l) - 1.0;
    }
    return true;
  }
  if (const auto* s = in->as<ShiftedG0>()) {
    const double v = std::log1p(l / (1.0 + l * s->mu)) / l;
    out = -std::log(v);
    return true;
  }
  return false;
}

double log_cosh(double s) {
  if (s > 20.0) return s + std::log1p(std::exp(-2.0 * s)) - std::numbers::ln2;
  const double h = std::sinh(0.5 * s);
  return std::log1p(2.0 * h * h);
}

// log(sinh(s)/s)
double log_sinhc(double s) {
  if (s < 1e-3) {
    const double s2 = s * s;
    return s2 / 6.0 - s2 * s2 / 180.0;
  }
  if (s > 20.0) return s + std::log1p(-std::exp(-2.0 * s)) - std::numbers::ln2 - std::log(s);
  return std::log(std::sinh(s) / s);
}

// log(s/tanh(s))
double log_tanhc_inv(double s) {
  if (s < 1e-3) {
    const double s2 = s * s;
    return s2 / 3.0 - 7.0 * s2 * s2 / 90.0;
  }
  return std::log(s) - std::log(std::tanh(s));
}

double psi_bessel_k(double nu, double l) {
  if (l == 0.0) return 0.0;
  if (nu == 0.0) {
    const double a = acosh1p(l);
    return 0.5 * a * a;
  }
  // Thorin form: z = 1 + cosh u, mu(dz) = cosh(nu u) du.
  auto r = quad::upper([&](double u) {
    return std::log1p(l / (1.0 + std::cosh(u))) * std::cosh(nu * u);
  }, 0.0, 1e-13);
  return r.value;
}

double psi_bessel_j(double nu, double l) {
  if (l == 0.0) return 0.0;
  const double a = acosh1p(l);
  if (nu == 0.0) return a;
  if (nu > 0.0) return -std::expm1(-nu * a) / nu;
  // I_{-m} = I_m + (2/pi) sin(m pi) K_m.
  const double m = -nu;
  return -std::expm1(-m * a) / m + 2.0 / pi * std::sin(m * pi) * psi_bessel_k(m, l);
}

double psi_power_jump(double alpha, double l) {
  if (l == 0.0) return 0.0;
  if (alpha == 1.0) return std::log1p(l);
  // int (1 - e^{-lambda x}) e^{-x^{1/alpha}} dx/(alpha x), with x = y^alpha.
  auto r = quad::upper([&](double y) {
    if (y <= 0.0) return 0.0;
    return -std::expm1(-l * std::pow(y, alpha)) * std::exp(-y) / y;
  }, 0.0, 1e-13);
  return r.value;
}

}  // namespace

SubordinatorFamily SubordinatorFamily::gamma() { return {}; }

SubordinatorFamily SubordinatorFamily::ggc(double mass, const MixingLaw& g) {
  require(mass > 0.0 && std::isfinite(mass), "ggc: Thorin mass must be positive");
  SubordinatorFamily f;
  f.kind = SubKind::Ggc;
  f.mass = mass;
  f.law = std::make_shared<const MixingLaw>(g);
  return f;
}

SubordinatorFamily SubordinatorFamily::hyp_cosh() {
  SubordinatorFamily f;
  f.kind = SubKind::HypCosh;
  return f;
}
SubordinatorFamily SubordinatorFamily::hyp_sinh() {
  SubordinatorFamily f;
  f.kind = SubKind::HypSinh;
  return f;
}
SubordinatorFamily SubordinatorFamily::hyp_tanh() {
  SubordinatorFamily f;
  f.kind = SubKind::HypTanh;
  return f;
}
SubordinatorFamily SubordinatorFamily::bessel_j(double nu) {
  require(nu > -1.0 && std::isfinite(nu), "besselj: nu must exceed -1");
  SubordinatorFamily f;
  f.kind = SubKind::BesselJ;
  f.param = nu;
  return f;
}
SubordinatorFamily SubordinatorFamily::bessel_k(double nu) {
  require(std::fabs(nu) < 1.0, "besselk: |nu| must be below 1");
  SubordinatorFamily f;
  f.kind = SubKind::BesselK;
  f.param = std::fabs(nu);
  return f;
}
SubordinatorFamily SubordinatorFamily::stable_half() {
  SubordinatorFamily f;
  f.kind = SubKind::StableHalf;
  return f;
}
SubordinatorFamily SubordinatorFamily::power_jump(double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), "powerjump: alpha must be positive");
  SubordinatorFamily f;
  f.kind = SubKind::PowerJump;
  f.param = alpha;
  return f;
}

SubordinatorFamily SubordinatorFamily::parse(std::string_view raw) {
  std::string s(raw);
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  const auto colon = lower.find(':');
  const std::string head = lower.substr(0, colon);
  auto num = [&]() {
    require(colon != std::string::npos, "subordinator '" + head + "' needs a parameter");
    try {
      std::size_t used = 0;
      const std::string a = s.substr(colon + 1);
      double v = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::Domain, "bad numeric parameter in '" + s + "'");
    }
  };
  if (head == "gamma") return gamma();
  if (head == "cosh") return hyp_cosh();
  if (head == "sinh") return hyp_sinh();
  if (head == "tanh") return hyp_tanh();
  if (head == "besselj") return bessel_j(num());
  if (head == "besselk") return bessel_k(num());
  if (head == "stablehalf") return stable_half();
  if (head == "powerjump") return power_jump(num());
  return ggc(1.0, MixingLaw::parse(s));
}

std::string SubordinatorFamily::name() const {
  switch (kind) {
    case SubKind::GammaStd: return "gamma";
    case SubKind::Ggc: return mass == 1.0 ? law->name() : law->name() + "*" + fmt(mass);
    case SubKind::HypCosh: return "cosh";
    case SubKind::HypSinh: return "sinh";
    case SubKind::HypTanh: return "tanh";
    case SubKind::BesselJ: return "besselj:" + fmt(param);
    case SubKind::BesselK: return "besselk:" + fmt(param);
    case SubKind::StableHalf: return "stablehalf";
    case SubKind::PowerJump: return "powerjump:" + fmt(param);
  }
  return "?";
}

bool SubordinatorFamily::is_ggc() const {
  switch (kind) {
    case SubKind::HypTanh: return false;
    case SubKind::BesselJ: return param <= 0.0;
    case SubKind::PowerJump: return param >= 1.0;
    default: return true;
  }
}

double psi_numeric(const MixingLaw& g, double lambda) {
  check_lambda(lambda);
  if (lambda == 0.0) return 0.0;
  if (!g.log_integrable_below())
    fail(ErrorCode::Divergent, "psi: E log+(1/G) is infinite for " + g.name());
  if (const auto* p = g.as<PointMass>()) return std::log1p(lambda / p->a);
  const auto r = g.expect([&](double x) { return x > 0.0 ? std::log1p(lambda / x) : 0.0; });
  if (!std::isfinite(r.value)) fail(ErrorCode::Divergent, "psi: quadrature diverged for " + g.name());
  return r.value;
}

bool has_closed_psi(const SubordinatorFamily& f) {
  switch (f.kind) {
    case SubKind::Ggc: {
      double v;
      try {
        return law_psi_closed(*f.law, 1.0, v);
      } catch (const Error&) {
        return true;  // closed form exists; the law is out of its domain
      }
    }
    case SubKind::BesselJ: return f.param >= 0.0;
    case SubKind::BesselK: return f.param == 0.0;
    case SubKind::PowerJump: return f.param == 1.0;
    default: return true;
  }
}

double psi_closed(const SubordinatorFamily& f, double lambda) {
  check_lambda(lambda);
  const double s = std::sqrt(2.0 * lambda);
  switch (f.kind) {
    case SubKind::GammaStd: return std::log1p(lambda);
    case SubKind::Ggc: {
      double v;
      if (law_psi_closed(*f.law, lambda, v)) return f.mass * v;
      break;
    }
    case SubKind::HypCosh: return log_cosh(s);
    case SubKind::HypSinh: return log_sinhc(s);
    case SubKind::HypTanh: return log_tanhc_inv(s);
    case SubKind::BesselJ:
      if (f.param >= 0.0) return psi_bessel_j(f.param, lambda);
      break;
    case SubKind::BesselK:
      if (f.param == 0.0) return psi_bessel_k(0.0, lambda);
      break;
    case SubKind::StableHalf: return s;
    case SubKind::PowerJump:
      if (f.param == 1.0) return std::log1p(lambda);
      break;
  }
  fail(ErrorCode::UnsupportedFamily, "no closed-form exponent for " + f.name());
}

double psi(const SubordinatorFamily& f, double lambda) {
  check_lambda(lambda);
  if (has_closed_psi(f)) return psi_closed(f, lambda);
  switch (f.kind) {
    case SubKind::Ggc: return f.mass * psi_numeric(*f.law, lambda);
    case SubKind::BesselJ: return psi_bessel_j(f.param, lambda);
    case SubKind::BesselK: return psi_bessel_k(f.param, lambda);
    case SubKind::PowerJump: return psi_power_jump(f.param, lambda);
    default: break;
  }
  fail(ErrorCode::UnsupportedFamily, "no exponent for " + f.name());
}

BernsteinEval bernstein(const SubordinatorFamily& f) {
  BernsteinEval b;
  b.tag = f.name();
  if (has_closed_psi(f)) {
    b.source = BernsteinEval::Source::ClosedForm;
    b.accuracy = 1e-14;
    b.fn = [f](double l) { return psi_closed(f, l); };
  } else {
    b.source = BernsteinEval::Source::Quadrature;
    b.accuracy = 1e-9;
    b.fn = [f](double l) { return psi(f, l); };
  }
  return b;
}

BernsteinEval bernstein_numeric(const MixingLaw& g) {
  BernsteinEval b;
  b.source = BernsteinEval::Source::Quadrature;
  b.tag = g.name();
  b.accuracy = 1e-9;
  b.fn = [g](double l) { return psi_numeric(g, l); };
  return b;
}

double dual_shift(const BernsteinEval& psi_g, double elog_g, double lambda) {
  require(lambda > 0.0, "dual_shift: lambda must be positive (psi_{1/G}(0) = 0)");
  return psi_g(1.0 / lambda) + elog_g + std::log(lambda);
}

double moebius_k(const MixingLaw& g, double a, double b) {
  if (b != 0.0 && !g.log_integrable_below())
    fail(ErrorCode::Divergent, "moebius_k: E log+(1/G) is infinite for " + g.name());
  const auto r = g.expect([&](double x) { return std::log(x / (a * x + b)); });
  if (!std::isfinite(r.value)) fail(ErrorCode::Divergent, "moebius_k: quadrature diverged");
  return r.value;
}

double moebius_shift(const BernsteinEval& psi_g, double a, double b, double c, double d, double k,
                     double lambda) {
  require(std::fabs(std::fabs(a * d - b * c) - 1.0) < 1e-9, "moebius_shift: ad - bc must be +-1");
  const double den = c * lambda + a;
  if (!(den > 0.0)) fail(ErrorCode::Domain, "moebius_shift: c lambda + a must be positive");
  return psi_g((d * lambda + b) / den) + std::log(den) + k;
}

double sigma_u(double u, double x) {
  if (std::isinf(u)) return 1.0;
  const double th = std::tanh(u);
  if (std::isinf(x)) return th;
  return (x * th + 1.0) / (x + th);
}

double psi_pushforward(const MixingLaw& g, const std::function<double(double)>& h, double lambda) {
  check_lambda(lambda);
  if (lambda == 0.0) return 0.0;
  return g.expect([&](double x) { return std::log1p(lambda / h(x)); }).value;
}

namespace {

// sum_{k>=1} sign^k-weighted e^{-c k^2 x} for the theta-type Levy densities.
double theta_sum(double c, double x, bool odd_only, bool alternating) {
  long double sum = 0.0L;
  const long nmax = static_cast<long>(std::ceil(10.0 / std::sqrt(std::max(x, 1e-300)))) + 10;
  for (long n = 1; n <= nmax * 4; ++n) {
    const double k = odd_only ? 2.0 * n - 1.0 : static_cast<double>(n);
    const long double term = std::exp(-c * k * k * x);
    sum += (alternating && n % 2 == 0) ? -term : term;
    if (term < 1e-18L * std::fabs(sum) && n > 2) break;
  }
  return static_cast<double>(sum);
}

}  // namespace

double levy_density(const SubordinatorFamily& f, double x) {
  require(x > 0.0, "levy_density: x must be positive");
  const double p2 = pi * pi;
  switch (f.kind) {
    case SubKind::GammaStd: return std::exp(-x) / x;
    case SubKind::Ggc: {
      const auto r = f.law->expect([&](double z) { return std::exp(-x * z); });
      return f.mass * r.value / x;
    }
    case SubKind::HypCosh: return theta_sum(p2 / 8.0, x, true, false) / x;
    case SubKind::HypSinh: return theta_sum(p2 / 2.0, x, false, false) / x;
    case SubKind::HypTanh: return theta_sum(p2 / 8.0, x, false, true) / x;
    case SubKind::BesselJ: return special::bessel_i_scaled(f.param, x) / x;
    case SubKind::BesselK: return std::exp(-2.0 * x) * special::bessel_k_scaled(f.param, x) / x;
    case SubKind::StableHalf: return 1.0 / (std::sqrt(2.0 * pi) * x * std::sqrt(x));
    case SubKind::PowerJump: return std::exp(-std::pow(x, 1.0 / f.param)) / (f.param * x);
  }
  return 0.0;
}

// Thorin measures.

double ThorinMeasure::integrate(const std::function<double(double)>& f) const {
  auto g = [&](double s) {
    const double z = z_of_s(s);
    return f(z) * w_of_s(s);
  };
  std::vector<double> pts{s_lo};
  for (double b : s_breaks)
    if (b > s_lo && b < s_hi) pts.push_back(b);
  double total = 0.0;
  if (std::isfinite(s_hi)) {
    pts.push_back(s_hi);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += quad::finite(g, pts[i], pts[i + 1], 1e-12).value;
    return total;
  }
  if (pts.size() == 1) pts.push_back(s_lo + 1.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += quad::finite(g, pts[i], pts[i + 1], 1e-12).value;
  total += quad::upper(g, pts.back(), 1e-12).value;
  return total;
}

double ThorinMeasure::laplace(double x) const {
  require(x > 0.0, "thorin laplace: x must be positive");
  switch (form) {
    case Form::Atoms: {
      long double sum = 0.0L;
      for (std::size_t n = 1; atom_count == 0 || n <= atom_count; ++n) {
        const long double term = std::exp(-x * atom(static_cast<double>(n)));
        sum += term;
        if (term < 1e-18L * sum) break;
      }
      return static_cast<double>(sum);
    }
    case Form::Density: return integrate([&](double z) { return std::exp(-x * z); });
    case Form::ScaledLaw: return mass * law->expect([&](double z) { return std::exp(-x * z); }).value;
  }
  return 0.0;
}

double ThorinMeasure::psi(double lambda) const {
  check_lambda(lambda);
  if (lambda == 0.0) return 0.0;
  switch (form) {
    case Form::Atoms: {
      long double sum = 0.0L;
      std::size_t n = 1;
      for (; atom_count == 0 || n <= atom_count; ++n) {
        const double z = atom(static_cast<double>(n));
        sum += std::log1p(lambda / z);
        if (atom_count == 0 && n >= 64 && lambda / z < 1e-5) break;
      }
      if (atom_count == 0) {
        // Midpoint rule tail: sum_{k>n} f(k) = int_{n+1/2}^inf f + f'(n+1/2)/24 + ...
        auto f = [&](double s) { return std::log1p(lambda / atom(s)); };
        const double start = static_cast<double>(n) + 0.5;
        const double h = 1e-3 * start;
        sum += quad::upper(f, start, 1e-13).value + (f(start + h) - f(start - h)) / (2.0 * h) / 24.0;
      }
      return static_cast<double>(sum);
    }
    case Form::Density: return integrate([&](double z) { return std::log1p(lambda / z); });
    case Form::ScaledLaw: return mass * psi_numeric(*law, lambda);
  }
  return 0.0;
}

double ThorinMeasure::total_mass() const {
  switch (form) {
    case Form::Atoms: return atom_count == 0 ? kInf : static_cast<double>(atom_count);
    case Form::Density: return integrate([](double) { return 1.0; });
    case Form::ScaledLaw: return mass;
  }
  return 0.0;
}

double ThorinMeasure::integrability_low() const {
  auto f = [](double z) { return z > 0.0 && z <= 1.0 ? -std::log(z) : 0.0; };
  switch (form) {
    case Form::Atoms: {
      double s = 0.0;
      for (std::size_t n = 1; atom_count == 0 || n <= atom_count; ++n) {
        const double z = atom(static_cast<double>(n));
        if (z > 1.0) break;
        s += f(z);
      }
      return s;
    }
    case Form::Density: return integrate(f);
    case Form::ScaledLaw:
      if (law->has_density())
        return mass * quad::finite([&](double z) { return z > 0.0 ? f(z) * law->pdf(z) : 0.0; }, 0.0, 1.0).value;
      return mass * law->expect(f).value;
  }
  return 0.0;
}

double ThorinMeasure::integrability_high() const {
  auto f = [](double z) { return z >= 1.0 ? 1.0 / z : 0.0; };
  switch (form) {
    case Form::Atoms: {
      long double s = 0.0L;
      std::size_t n = 1;
      for (; n <= 200000 && (atom_count == 0 || n <= atom_count); ++n) s += f(atom(static_cast<double>(n)));
      if (atom_count == 0)
        s += quad::upper([&](double t) { return f(atom(t)); }, static_cast<double>(n) - 0.5, 1e-12).value;
      return static_cast<double>(s);
    }
    case Form::Density: return integrate(f);
    case Form::ScaledLaw:
      if (law->has_density()) {
        const double top = law->support().hi;
        if (top <= 1.0) return 0.0;
        auto g = [&](double z) { return law->pdf(z) / z; };
        if (std::isfinite(top)) return mass * quad::finite(g, 1.0, top).value;
        return mass * quad::upper(g, 1.0).value;
      }
      return mass * law->expect(f).value;
  }
  return 0.0;
}

namespace {

// Thorin density of J^(nu), -1/2 < nu < 0:
// C int_0^1 (1-t^2)^{nu-1/2} [(x-1+t)^{-nu-1} 1{x>1-t} + (x-1-t)^{-nu-1} 1{x>1+t}] dt,
// C = 1/(2^nu sqrt(pi) Gamma(nu+1/2) Gamma(-nu)).
double bessel_j_thorin_density(double nu, double x) {
  if (x <= 0.0) return 0.0;
  const double c = 1.0 / (std::pow(2.0, nu) * std::sqrt(pi) * std::tgamma(nu + 0.5) * std::tgamma(-nu));
  const double p = -nu - 1.0, q = nu - 0.5;
  double total = 0.0;
  // First term over t in (max(0, 1-x), 1): singular at t = 1-x (power p) and t = 1 (power q).
  {
    const double a = std::max(0.0, 1.0 - x);
    auto g = [&](double t) { return std::pow(1.0 + t, q) * (a > 0.0 ? 1.0 : std::pow(x - 1.0 + t, p)); };
    total += quad::algebraic(g, a, 1.0, a > 0.0 ? p : 0.0, q, 1e-10).value;
  }
  // Second term over t in (0, min(1, x-1)).
  if (x > 1.0) {
    const double b = std::min(1.0, x - 1.0);
    if (x - 1.0 < 1.0) {
      auto g = [&](double t) { return std::pow(1.0 - t * t, q); };
      total += quad::algebraic(g, 0.0, b, 0.0, p, 1e-10).value;
    } else {
      auto g = [&](double t) { return std::pow(1.0 + t, q) * std::pow(x - 1.0 - t, p); };
      total += quad::algebraic(g, 0.0, 1.0, 0.0, q, 1e-10).value;
    }
  }
  return c * total;
}

ThorinMeasure density_measure(std::string desc, std::function<double(double)> rho, double lo, double hi,
                              std::function<double(double)> z, std::function<double(double)> w, double s_lo,
                              double s_hi, std::vector<double> breaks = {}) {
  ThorinMeasure m;
  m.form = ThorinMeasure::Form::Density;
  m.description = std::move(desc);
  m.density = std::move(rho);
  m.lo = lo;
  m.hi = hi;
  m.z_of_s = std::move(z);
  m.w_of_s = std::move(w);
  m.s_lo = s_lo;
  m.s_hi = s_hi;
  m.s_breaks = std::move(breaks);
  return m;
}

ThorinMeasure scaled(double mass, const MixingLaw& g, std::string desc) {
  ThorinMeasure m;
  m.form = ThorinMeasure::Form::ScaledLaw;
  m.mass = mass;
  m.law = std::make_shared<const MixingLaw>(g);
  m.description = std::move(desc);
  return m;
}

}  // namespace

ThorinMeasure thorin_of(const SubordinatorFamily& f) {
  switch (f.kind) {
    case SubKind::GammaStd: return scaled(1.0, MixingLaw::point(1.0), "unit atom at 1");
    case SubKind::Ggc: return scaled(f.mass, *f.law, fmt(f.mass) + " * law of " + f.law->name());
    case SubKind::HypCosh: {
      ThorinMeasure m;
      m.form = ThorinMeasure::Form::Atoms;
      m.atom = [](double n) { return pi * pi * (2.0 * n - 1.0) * (2.0 * n - 1.0) / 8.0; };
      m.description = "unit atoms at pi^2 (2n-1)^2 / 8";
      return m;
    }
    case SubKind::HypSinh: {
      ThorinMeasure m;
      m.form = ThorinMeasure::Form::Atoms;
      m.atom = [](double n) { return pi * pi * n * n / 2.0; };
      m.description = "unit atoms at pi^2 n^2 / 2";
      return m;
    }
    case SubKind::HypTanh:
      fail(ErrorCode::NotGgc, "tanh subordinator is not GGC: its would-be Thorin measure is signed");
    case SubKind::BesselJ: {
      const double nu = f.param;
      if (nu == 0.0) {
        return density_measure(
            "dz / (pi sqrt(z (2 - z))) on [0, 2]",
            [](double z) { return z > 0.0 && z < 2.0 ? 1.0 / (pi * std::sqrt(z * (2.0 - z))) : 0.0; }, 0.0, 2.0,
            [](double th) { const double s = std::sin(0.5 * th); return 2.0 * s * s; }, [](double) { return 1.0 / pi; }, 0.0, pi);
      }
      if (nu > 0.0) fail(ErrorCode::NotGgc, "besselj with nu > 0 is outside the GGC range handled here");
      if (nu <= -0.5) fail(ErrorCode::UnsupportedFamily, "besselj Thorin density needs -1/2 < nu < 0");
      return density_measure(
          "Thorin density of besselj:" + fmt(nu) + " on (0, inf)",
          [nu](double z) { return bessel_j_thorin_density(nu, z); }, 0.0, kInf, [](double s) { return s; },
          [nu](double s) { return bessel_j_thorin_density(nu, s); }, 0.0, kInf, {1.0, 2.0, 4.0});
    }
    case SubKind::BesselK: {
      const double nu = f.param;
      return density_measure(
          "cosh(nu acosh(z - 1)) dz / sqrt(z (z - 2)) on [2, inf)",
          [nu](double z) {
            return z > 2.0 ? std::cosh(nu * std::acosh(z - 1.0)) / std::sqrt(z * (z - 2.0)) : 0.0;
          },
          2.0, kInf, [](double u) { return 1.0 + std::cosh(u); }, [nu](double u) { return std::cosh(nu * u); }, 0.0,
          kInf);
    }
    case SubKind::StableHalf:
      return density_measure(
          "z^{-1/2} dz / (pi sqrt 2) on (0, inf)",
          [](double z) { return z > 0.0 ? 1.0 / (pi * std::sqrt(2.0 * z)) : 0.0; }, 0.0, kInf,
          [](double s) { return s * s; }, [](double) { return std::sqrt(2.0) / pi; }, 0.0, kInf);
    case SubKind::PowerJump: {
      const double a = f.param;
      if (a < 1.0) fail(ErrorCode::NotGgc, "powerjump with alpha < 1 is self-decomposable but not GGC");
      if (a == 1.0) return scaled(1.0, MixingLaw::point(1.0), "unit atom at 1");
      return scaled(1.0 / a, MixingLaw::stable(1.0 / a), fmt(1.0 / a) + " * law of stable:" + fmt(1.0 / a));
    }
  }
  fail(ErrorCode::UnsupportedFamily, "no Thorin measure for " + f.name());
}

double thorin_mass_from_density(const std::function<double(double)>& density, double x_lo, double x_hi,
                                int points) {
  require(x_lo > 0.0 && x_hi > x_lo && points >= 2, "thorin_mass_from_density: bad grid");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int i = 0; i < points; ++i) {
    const double lx = std::log(x_lo) + (std::log(x_hi) - std::log(x_lo)) * i / (points - 1);
    const double f = density(std::exp(lx));
    if (!(f > 0.0) || !std::isfinite(f)) continue;
    const double ly = std::log(f);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) fail(ErrorCode::Degenerate, "thorin_mass_from_density: density not positive on the grid");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return slope + 1.0;
}

}  // namespace thorin
