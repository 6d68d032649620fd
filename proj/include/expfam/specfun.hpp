#pragma once

// Scalar special-function kernels: modified Bessel functions (including the
// purely imaginary order K_{iu}), classical orthogonal polynomials, the
// terminating Gauss hypergeometric sum, and q-Pochhammer products.
//
// Everything here is a pure function of its arguments.

#include <cstddef>
#include <vector>

namespace expfam::specfun {

/// Polynomial stored by ascending degree: c[0] + c[1] x + ... .
struct PolyCoeffs {
  std::vector<double> c;

  int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
  double operator()(double x) const;
};

/// I_nu(x) for x >= 0. Defining power series, switching to the large-x
/// asymptotic expansion. Throws std::overflow_error when I_nu(x) is not
/// representable as a double.
double bessel_i(double nu, double x);
/// e^{-x} I_nu(x); finite for all x >= 0.
double bessel_i_scaled(double nu, double x);

/// K_nu(x) for x > 0 (K_nu = K_{-nu}). Throws std::domain_error for x <= 0.
double bessel_k(double nu, double x);
/// e^{x} K_nu(x).
double bessel_k_scaled(double nu, double x);

/// K_{iu}(a) = \int_0^\infty e^{-a cosh t} cos(u t) dt for a > 0. The integral
/// is cut where a cosh t exceeds the double underflow threshold.
double bessel_k_imag(double u, double a);

/// Physicists' Hermite polynomial H_n (H_1 = 2x).
PolyCoeffs hermite(int n);
double hermite_value(int n, double x);

/// Generalized Laguerre L_n^{(alpha)}.
PolyCoeffs laguerre(int n, double alpha);
/// L_n^{(alpha)}(x) by the three-term recurrence; stable where the
/// coefficient form cancels.
double laguerre_value(int n, double alpha, double x);

/// 2F1(-n, b; c; z) as the finite sum over k = 0..n. Throws
/// std::domain_error when c is one of 0, -1, ..., -(n-1).
double hyp2f1_terminating(int n, double b, double c, double z);

/// (a; q)_n = prod_{k<n} (1 - a q^k).
double q_pochhammer(double a, double q, int n);
/// (a; q)_inf for |q| < 1, truncated once |a q^k| < 1e-16 (at most 1e5
/// factors). Throws std::domain_error for |q| >= 1.
double q_pochhammer_inf(double a, double q);

/// log|(a; q)_inf| together with the sign of the product.
struct SignedLog {
  double log_abs;
  int sign;  // -1, 0 or +1
};
SignedLog log_q_pochhammer_inf(double a, double q);

/// [n]_q = 1 + q + ... + q^{n-1}, with [0]_q = 0.
double q_number(int n, double q);
/// [n]_q! = [1]_q ... [n]_q, with [0]_q! = 1.
double q_factorial(int n, double q);

}  // namespace expfam::specfun
