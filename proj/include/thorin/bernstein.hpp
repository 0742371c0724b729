#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "thorin/mixing.hpp"

namespace thorin {

enum class SubKind { GammaStd, Ggc, HypCosh, HypSinh, HypTanh, BesselJ, BesselK, StableHalf, PowerJump };

// A subordinator from the catalog. For Ggc the Thorin measure is mass * P_G.
struct SubordinatorFamily {
  SubKind kind = SubKind::GammaStd;
  double param = 0.0;  // nu for Bessel, alpha for PowerJump
  double mass = 1.0;   // Ggc only
  std::shared_ptr<const MixingLaw> law;

  static SubordinatorFamily gamma();
  static SubordinatorFamily ggc(double mass, const MixingLaw& g);
  static SubordinatorFamily hyp_cosh();
  static SubordinatorFamily hyp_sinh();
  static SubordinatorFamily hyp_tanh();
  // nu = 0 or -1/2 < nu < 0 have Thorin densities; nu > 0 is evaluable but not GGC.
  static SubordinatorFamily bessel_j(double nu);
  // |nu| < 1.
  static SubordinatorFamily bessel_k(double nu);
  static SubordinatorFamily stable_half();
  static SubordinatorFamily power_jump(double alpha);

  // gamma | cosh | sinh | tanh | besselj:nu | besselk:nu | stablehalf |
  // powerjump:a | <mixing law spec> (Ggc with unit mass)
  static SubordinatorFamily parse(std::string_view spec);

  std::string name() const;
  bool is_ggc() const;
};

struct BernsteinEval {
  enum class Source { ClosedForm, Quadrature };
  Source source = Source::ClosedForm;
  std::string tag;
  std::function<double(double)> fn;
  double accuracy = 0.0;  // absolute error estimate
  double operator()(double lambda) const { return fn(lambda); }
};

// psi_G(lambda) = E log(1 + lambda/G), quadrature over the quantile function.
double psi_numeric(const MixingLaw& g, double lambda);
// Exponent per unit time for the families with explicit formulas.
bool has_closed_psi(const SubordinatorFamily& f);
double psi_closed(const SubordinatorFamily& f, double lambda);
// Closed form when available, otherwise quadrature.
double psi(const SubordinatorFamily& f, double lambda);
BernsteinEval bernstein(const SubordinatorFamily& f);
BernsteinEval bernstein_numeric(const MixingLaw& g);

// psi_{1/G}(lambda) = psi_G(1/lambda) + E log G + log lambda.
double dual_shift(const BernsteinEval& psi_g, double elog_g, double lambda);

// sigma(x) = (a x + b)/(c x + d), ad - bc = +-1:
// psi_{sigma(G)}(lambda) = psi_G((d lambda + b)/(c lambda + a)) + log(c lambda + a) + k,
// k = E log(G/(a G + b)).
double moebius_k(const MixingLaw& g, double a, double b);
double moebius_shift(const BernsteinEval& psi_g, double a, double b, double c, double d, double k,
                     double lambda);
// sigma_u(x) = (x sinh u + cosh u)/(x cosh u + sinh u); u = inf gives 1.
double sigma_u(double u, double x);
// psi_{h(G)}(lambda) = E log(1 + lambda/h(G)) by quadrature, for a monotone map h.
double psi_pushforward(const MixingLaw& g, const std::function<double(double)>& h, double lambda);

double levy_density(const SubordinatorFamily& f, double x);

struct ThorinMeasure {
  enum class Form { Atoms, Density, ScaledLaw };
  Form form = Form::ScaledLaw;

  // Atoms: unit weights at atom(n), n = 1, 2, ...; atom_count == 0 means infinitely many.
  std::function<double(double)> atom;  // real n interpolates the sequence
  std::size_t atom_count = 0;

  // Density: rho on (lo, hi), together with a parametrization z = z(s),
  // mu(dz) = w(s) ds over (s_lo, s_hi) that removes endpoint singularities.
  std::function<double(double)> density;
  double lo = 0.0, hi = 0.0;
  std::function<double(double)> z_of_s, w_of_s;
  double s_lo = 0.0, s_hi = 0.0;
  std::vector<double> s_breaks;  // interior points where the integrand has kinks

  // ScaledLaw: mass * P_G.
  double mass = 0.0;
  std::shared_ptr<const MixingLaw> law;

  std::string description;

  // int e^{-xz} mu(dz), which equals x times the Levy density.
  double laplace(double x) const;
  // int log(1 + lambda/z) mu(dz).
  double psi(double lambda) const;
  // Total mass (may be infinite).
  double total_mass() const;
  // int_(0,1] |log z| mu(dz) and int_[1,inf) mu(dz)/z, evaluated numerically.
  double integrability_low() const;
  double integrability_high() const;

 private:
  double integrate(const std::function<double(double)>& f) const;
};

ThorinMeasure thorin_of(const SubordinatorFamily& f);

// Small-x power law of a GGC density: f(x) ~ c x^{m-1}, so the log-log slope
// plus one recovers the Thorin mass m.
double thorin_mass_from_density(const std::function<double(double)>& density, double x_lo = 1e-6,
                                double x_hi = 1e-3, int points = 25);

}  // namespace thorin
