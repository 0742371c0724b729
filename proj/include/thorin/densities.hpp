#pragma once

#include <functional>
#include <string>
#include <vector>

#include "thorin/mixing.hpp"
#include "thorin/random.hpp"

namespace thorin {

struct DensityValue {
  double value = 0.0;
  double error = 0.0;        // quadrature estimate or MC standard error
  bool oscillatory = false;  // Bessel kernel argument frequently beyond 25
};

struct DensityGrid {
  std::vector<double> abscissae;
  std::vector<double> values;
  std::vector<double> errors;
  std::string method;

  // Trapezoid rule over the grid, with the first cell extended to 0 by a
  // power-law fit when the grid starts above 0.
  double trapezoid() const;
};

// n draws of D_t(G): exact construction when available, Wiener-Gamma otherwise.
std::vector<double> dirichlet_mean_draws(const MixingLaw& g, double t, std::size_t n, std::uint64_t seed,
                                         int n_steps = 4096);
// n draws of Gamma_t(G), same choice of sampler.
std::vector<double> ggc_draws(const MixingLaw& g, double t, std::size_t n, std::uint64_t seed,
                              int n_steps = 4096);

// Density of Gamma_t(1/G) as x^{t-1}/Gamma(t) e^{-t E log G} E exp(-x D_t(G)).
// For Gamma_t(G) pass reciprocal(G).
DensityValue ggc_density_dual_mc(double x, double t, const MixingLaw& g, std::size_t n_mc, RandomStream& rng);
// Same estimator on a grid from precomputed draws of D_t(G).
DensityGrid ggc_density_dual_mc(const std::vector<double>& xs, double t, const MixingLaw& g,
                                const std::vector<double>& d_draws);

// Density of Gamma_t(1/G) as e^{-t E log G} E[(Gamma_t(G)/x)^{(1-t)/2} J_{t-1}(2 sqrt(x Gamma_t(G)))].
DensityValue ggc_density_bessel_mc(double x, double t, const MixingLaw& g, std::size_t n_mc, RandomStream& rng);
DensityGrid ggc_density_bessel_mc(const std::vector<double>& xs, double t, const MixingLaw& g,
                                  const std::vector<double>& gamma_draws);

// Closed densities of Gamma_t(G) for the catalog pairs (G, t):
//   galpha:a at t = 1-a          a/Gamma(1-a) x^{-1-a} (1 - e^{-x})
//   arcsine, any t               Gamma(1+t)/(sqrt(pi) Gamma(t) Gamma(t+1/2)) x^{t-1} int_0^1 e^{-xy} (y(1-y))^{t-1/2} dy
//   reciprocal(arcsine), any t   t 4^t/(sqrt(pi) Gamma(t+1/2)) x^{t-1} int_0^1 e^{-x/y} (1-y)^{t-1/2} y^{-1/2} dy
//   reciprocal(galpha:a), 1-a    x^{-a}/Gamma(1-a) int_0^1 e^{-x/w} w^{a-1} dw
//   g0shift:mu (mu > 0), t = 1   e^{-mu x}(1 - e^{-x}) / (x log(1 + 1/mu))
//   reciprocal(g0shift:mu), 1    int_0^1 e^{-x/(mu+y)} dy/(mu+y) = E1(x/(mu+1)) - E1(x/mu)
//   uniform, t = 1               (1/pi) int_0^1 e^{-xy} sin(pi y) / (y^y (1-y)^{1-y}) dy
//   reciprocal(uniform), t = 1   (e/pi) int_0^1 e^{-x/y} sin(pi y) / (y^{y+1} (1-y)^{1-y}) dy
//   point:a, any t               gamma(t) density with rate a
bool has_closed_density(const MixingLaw& g, double t);
DensityValue density_closed(const MixingLaw& g, double t, double x);

// Closed densities of D_t(G):
//   g0shift:mu, t = 1            1/(x log(1 + 1/mu)) on [1/(mu+1), 1/mu]
//   uniform, t = 1               sin(pi/x) / (pi (x-1)^{1-1/x}) on [1, inf)
//   reciprocal(uniform), t = 1   e sin(pi x) / (pi x^x (1-x)^{1-x}) on [0, 1]
//   galpha:a, t = 1-a            a x^{-1-a} on [1, inf)
//   reciprocal(galpha:a), 1-a    uniform on [0, 1]
//   arcsine, any t               law of 1/beta(1/2, t+1/2)
//   reciprocal(arcsine), any t   beta(t+1/2, t+1/2)
//   reciprocal(g0shift:mu), 1    uniform on [mu, mu+1]
bool has_closed_mean_density(const MixingLaw& g, double t);
double dirichlet_mean_density(const MixingLaw& g, double t, double x);

// E log|x - 1/G|, split at the logarithmic singularity p* = F_G(1/x).
double expected_log_distance(const MixingLaw& g, double x);

// Density of D_1(G/Y_t) = beta(t, 1-t) D_t(G), t in (0, 1):
// sin(pi t F_G(1/x))/pi x^{t-1} exp(-t E log|x - 1/G|).
double dirichlet_mean_density_bernoulli(double x, double t, const MixingLaw& g);

// Density of D_t(G), t in (0, 1], as d/dx int_a^x (x-u)^{t-1} theta_t(u) du with
// theta_t(u) = sin(t pi F_{1/G}(u))/pi exp(-t E log|u - 1/G|). At t = 1 this is
// theta_1 itself.
double dirichlet_mean_density_t_le_1(double x, double t, const MixingLaw& g);

// f_{D_t(1/G)}(x) = x^{t-2} e^{-t E log G} f_{D_t(G)}(1/x).
double mean_density_dual(double x, double t, const std::function<double(double)>& f_dt_g, double elog_g);

// Density of Gamma_t(sigma_u(G)), sigma_u(x) = (x sinh u + cosh u)/(x cosh u + sinh u):
// x^{t-1} e^{-x tanh u - t k_u}/Gamma(t) E[(cosh u + D sinh u)^{-t} exp(-x D/(cosh u (cosh u + D sinh u)))]
// with D = D_t(G) and k_u = E log(G/(G sinh u + cosh u)).
DensityValue sigma_u_density_mc(double x, double t, const MixingLaw& g, double u, std::size_t n_mc,
                                RandomStream& rng);
DensityGrid sigma_u_density_mc(const std::vector<double>& xs, double t, const MixingLaw& g, double u,
                               const std::vector<double>& d_draws);

}  // namespace thorin
