#include "thorin/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "thorin/error.hpp"

namespace thorin::quad {

namespace bq = boost::math::quadrature;

namespace {

bq::tanh_sinh<double>& ts() {
  thread_local bq::tanh_sinh<double> integrator(18);
  return integrator;
}

bq::exp_sinh<double>& es() {
  thread_local bq::exp_sinh<double> integrator(12);
  return integrator;
}

double guard(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace

Result finite(const Fn& f, double a, double b, double rel_tol) {
  if (!(a < b)) {
    if (a == b) return {};
    Result r = finite(f, b, a, rel_tol);
    return {-r.value, r.error};
  }
  Result r;
  double l1 = 0.0;
  r.value = ts().integrate([&](double x) { return guard(f(x)); }, a, b, rel_tol, &r.error, &l1);
  return r;
}

Result finite_c(const FnC& f, double a, double b, double rel_tol) {
  if (!(a < b)) {
    if (a == b) return {};
    fail(ErrorCode::Domain, "finite_c: bounds out of order");
  }
  Result r;
  double l1 = 0.0;
  r.value = ts().integrate([&](double x, double xc) { return guard(f(x, xc)); }, a, b, rel_tol,
                           &r.error, &l1);
  return r;
}

Result upper(const Fn& f, double a, double rel_tol) {
  Result r;
  double l1 = 0.0;
  // exp_sinh integrates over (a, inf); shift so the rule sees (0, inf).
  r.value = es().integrate([&](double s) { return guard(f(a + s)); }, 0.0,
                           std::numeric_limits<double>::infinity(), rel_tol, &r.error, &l1);
  return r;
}

Result smooth(const Fn& f, double a, double b, double rel_tol, unsigned max_depth) {
  if (a == b) return {};
  Result r;
  double l1 = 0.0;
  // Mapped to [0, 1]: the library's error estimate misbehaves on very short intervals.
  const double w = b - a;
  r.value = bq::gauss_kronrod<double, 31>::integrate([&](double u) { return guard(f(a + w * u)); }, 0.0, 1.0,
                                                     max_depth, rel_tol, &r.error, &l1);
  r.value *= w;
  r.error *= std::fabs(w);
  return r;
}

namespace {

// int_0^h s^p g(lo + s) ds with the substitution s = u^{1/(1+p)}.
Result power_piece(const Fn& g, double lo, double h, double p, bool reflect, double rel_tol) {
  const double q = 1.0 + p;
  const double top = std::pow(h, q);
  auto integrand = [&](double u) {
    const double s = std::pow(u, 1.0 / q);
    return g(reflect ? lo - s : lo + s);
  };
  Result r = finite(integrand, 0.0, top, rel_tol);
  r.value /= q;
  r.error /= q;
  return r;
}

}  // namespace

Result algebraic(const Fn& g, double a, double b, double pa, double pb, double rel_tol) {
  require(pa > -1.0 && pb > -1.0, "algebraic: exponents must exceed -1");
  if (!(a < b)) return {};
  const double m = 0.5 * (a + b);
  Result left = power_piece([&](double x) { return g(x) * std::pow(b - x, pb); }, a, m - a, pa,
                            false, rel_tol);
  Result right = power_piece([&](double x) { return g(x) * std::pow(x - a, pa); }, b, b - m, pb,
                             true, rel_tol);
  return {left.value + right.value, left.error + right.error};
}

Result algebraic_upper(const Fn& g, double a, double pa, double rel_tol) {
  require(pa > -1.0, "algebraic_upper: exponent must exceed -1");
  Result near = power_piece(g, a, 1.0, pa, false, rel_tol);
  Result far = upper([&](double x) { return std::pow(x - a, pa) * g(x); }, a + 1.0, rel_tol);
  return {near.value + far.value, near.error + far.error};
}

Result decades(const Fn& f, int lo, int hi, double rel_tol) {
  Result acc;
  for (int k = lo; k < hi; ++k) {
    const double a = std::pow(10.0, k), b = std::pow(10.0, k + 1);
    const Result r = smooth([&](double y) {
      const double x = std::exp(y);
      return f(x) * x;
    }, std::log(a), std::log(b), rel_tol);
    acc.value += r.value;
    acc.error += r.error;
  }
  return acc;
}

}  // namespace thorin::quad
