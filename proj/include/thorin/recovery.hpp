#pragma once

#include <functional>
#include <string>
#include <vector>

#include "thorin/mixing.hpp"

namespace thorin {

// F_G(1/x) on a grid, recovered from the law of D_t(G).
struct RecoveredCdf {
  std::vector<double> abscissae;
  std::vector<double> values;
  std::vector<double> errors;  // MC standard error (samples) or quadrature estimate
  double t = 0.0;
  std::string method;
  // Samples only: largest half-width of the windows around x where the
  // singular kernel is replaced by a local density estimate, and the largest
  // bound on the bias that replacement introduces (in cdf units).
  double max_window = 0.0;
  double max_bias_bound = 0.0;

  // x increasing implies F_G(1/x) nonincreasing, up to the reported errors.
  bool monotone(double slack = 0.0) const;
};

// One-sided fractional moments E[(D - x)_+^{-t}] and E[(x - D)_+^{-t}].
struct OneSided {
  double above = 0.0;
  double below = 0.0;
  double above_se = 0.0;
  double below_se = 0.0;
  double window = 0.0;
  double bias_bound = 0.0;
};

// From draws of D_t(G). Within a window of half-width delta around x (chosen
// to hold about sqrt(n) draws on the denser side) the kernel is integrated
// exactly against the local histogram density.
OneSided one_sided_moments(const std::vector<double>& sorted_draws, double x, double t);
// From a density of D_t(G) supported in [lo, hi] (hi may be infinite).
OneSided one_sided_moments(const std::function<double(double)>& density, double lo, double hi, double x, double t);

// F_G(1/x) = Lambda_t(E[(D_t(G) - x)_+^{-t}] / E[(x - D_t(G))_+^{-t}]), t in (0, 1).
RecoveredCdf recover_cdf_ratio(const std::vector<double>& xs, double t, std::vector<double> d_draws);
RecoveredCdf recover_cdf_ratio(const std::vector<double>& xs, double t, const std::function<double(double)>& density,
                               double lo, double hi);

// Lambda_t(f_{D_1(G/Y_t)}(x) / (x^{t-2} f_{D_1(1/(G Y_t))}(1/x) e^{t E log G})).
double recover_cdf_density_form(double x, double t, const std::function<double(double)>& f_g_over_y,
                                const std::function<double(double)>& f_inv_g_over_y, double elog_g);

// Thorin cdf F_G(1/z) of the GGC gamma_theta/gamma_m (theta in (0, 1)), whose
// Dirichlet mean D_theta(G) is 1/gamma_m. theta = 1 gives the limit, the
// Thorin cdf of the Pareto ratio gamma_1/gamma_m:
//   F_G(1/z) = (1/pi) arg(c(1/z) + i pi), c = C_m - C~_m.
double pareto_thorin_cdf(double m, double z, double theta = 1.0);
// C_m(s) - C~_m(s) with
//   C_m(s)  = int_0^inf e^{-u} (1+u/s)^m [(1 - m/(s+u)) log(u/(s+u)) + 1/(s+u)] du
//   C~_m(s) = int_0^1 e^{su} (1-u)^m [-1/(1-u) + (m/(1-u) - s) log(u/(1-u))] du
double pareto_limit_gap(double m, double s);

// F_{1/G}(1/y) for the Thorin measure of gamma_1^{1/alpha}, whose Dirichlet mean
// D_alpha(1/G) is the standard alpha-stable S_alpha:
// Lambda_alpha(E[(S - y)_+^{-alpha}] / E[(y - S)_+^{-alpha}]).
double stable_power_thorin_cdf(double alpha, double y);

// sup over ys of |y f(y) - C E[(y - S)_+^{-alpha}]| with S ~ f. Zero exactly
// for the alpha-stable law with E e^{-lambda S} = exp(-C Gamma(1-alpha) lambda^alpha / alpha).
double lemma24_residual(double alpha, const std::function<double(double)>& f, const std::vector<double>& ys, double c);

}  // namespace thorin
