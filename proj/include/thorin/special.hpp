#pragma once

// Special functions used by the density and recovery formulas.

namespace thorin::special {

double bessel_i(double nu, double x);
double bessel_k(double nu, double x);
double bessel_j(double nu, double x);

// e^{-x} I_nu(x) and e^{x} K_nu(x); finite where the unscaled values overflow
// or underflow.
double bessel_i_scaled(double nu, double x);
double bessel_k_scaled(double nu, double x);

// Ascending series sum_k (-1)^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)),
// accumulated in extended precision. Reliable for x up to about 20.
double bessel_j_series(double nu, double x);

// Gauss hypergeometric 2F1(a, b; c; z) by the Euler integral. Requires
// c > b > 0 and z < 1.
double hyp2f1(double a, double b, double c, double z);

// Lambda_t(y) = 1 - (1/(pi t)) arg(cos(pi t) + y + i sin(pi t)), the cdf of
// the ratio of two independent t-stable variables raised to the power t.
double lambda_t(double t, double y);
double lambda_t_inv(double t, double x);
double lambda_t_density(double t, double y);

// Positive stable law with E exp(-lambda S) = exp(-lambda^alpha).
double stable_pdf(double alpha, double x);
double stable_cdf(double alpha, double x);
double stable_ccdf(double alpha, double x);
double stable_quantile(double alpha, double p);
double stable_quantile_upper(double alpha, double s);

// Kanter's function: S = (K(U)/E)^{(1-alpha)/alpha} with U uniform on (0, pi).
// phi_c is pi - phi, passed separately to keep precision near pi.
double kanter(double alpha, double phi, double phi_c);

// 1/Gamma(x), zero at the poles.
double rgamma(double x);

}  // namespace thorin::special
