#pragma once

#include "casimir/controls.hpp"

/// Special functions used by the Casimir formulas. Real arguments only.
namespace casimir::specfun {

/// Gamma function. Negative non-integers go through the reflection formula;
/// throws DomainError at 0, -1, -2, ...
double gamma(double x);

/// Dirichlet eta, sum_{n>=1} (-1)^{n+1} n^{-s}, for s > 0 (Euler-transformed).
double dirichlet_eta(double s, const SeriesControl& ctl = {});

/// Riemann zeta for s > 1, as eta(s) / (1 - 2^{1-s}).
double zeta(double s, const SeriesControl& ctl = {});

/// Modified Bessel function of the second kind, K_nu(z), nu >= 0, z > 0,
/// from the integral representation
///
///   K_nu(z) = 1/2 int_0^inf exp[-(z/2)(t + 1/t)] t^{-(nu+1)} dt
///
/// with t = e^u, which folds to int_0^inf exp(-z cosh u) cosh(nu u) du.
double bessel_k(double nu, double z, const QuadratureControl& ctl = {});

/// K_{n+1/2}(z) from the terminating closed form
/// sqrt(pi/2z) e^{-z} sum_{j=0}^{n} (n+j)! / (j! (n-j)! (2z)^j).
double bessel_k_half_integer(int half_order, double z);

/// K_nu(z) using the closed form whenever nu is a half-integer, quadrature otherwise.
double bessel_k_auto(double nu, double z, const QuadratureControl& ctl = {});

/// Jacobi theta nu_2(x) = sum_n exp[-pi (n - 1/2)^2 x], x > 0.
double theta2(double x, const SeriesControl& ctl = {});

/// Jacobi theta nu_4(x) = sum_n (-1)^n exp(-pi n^2 x), x > 0.
double theta4(double x, const SeriesControl& ctl = {});

}  // namespace casimir::specfun
