#pragma once

// Natural exponential families parametrized by the mean: the eps-deformed
// closed forms, the Lagrange coefficient engine, the rational and square-root
// generators, and the imaginary-order Bessel counterexample.

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "expfam/core/measure.hpp"
#include "expfam/core/variance.hpp"

namespace expfam::classical {

// ---------------------------------------------------------------------------
// Truncated power series over any field T (double, cpp_bin_float_50,
// cpp_rational). Coefficients are stored by ascending degree.

template <class T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b, std::size_t order) {
  std::vector<T> out(order + 1, T(0));
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i] == T(0)) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class T>
std::vector<T> series_derivative(const std::vector<T>& a) {
  if (a.size() <= 1) return {T(0)};
  std::vector<T> out(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = a[k] * T(static_cast<long>(k));
  return out;
}

template <class T>
std::vector<T> series_pow(const std::vector<T>& a, unsigned n, std::size_t order) {
  std::vector<T> out(order + 1, T(0));
  out[0] = T(1);
  for (unsigned i = 0; i < n; ++i) out = series_mul(out, a, order);
  return out;
}

/// exp(a(x)) for a series with a(0) = 0, via E' = a' E.
template <class T>
std::vector<T> series_exp(const std::vector<T>& a, std::size_t order) {
  if (!a.empty() && a[0] != T(0)) throw std::invalid_argument("series_exp: constant term must vanish");
  std::vector<T> da = series_derivative(a);
  std::vector<T> e(order + 1, T(0));
  e[0] = T(1);
  for (std::size_t n = 1; n <= order; ++n) {
    T acc(0);
    for (std::size_t k = 0; k < n && k < da.size(); ++k) acc += da[k] * e[n - 1 - k];
    e[n] = acc / T(static_cast<long>(n));
  }
  return e;
}

/// Coefficients c_0..c_N of f(m(xi)) in powers of xi, where m(xi) is the
/// inverse of xi = m / phi(m):
///   c_0 = f(0),  c_n = (1/n) [x^{n-1}] f'(x) phi(x)^n.
/// Exact when T is a rational type.
template <class T>
std::vector<T> lagrange_coefficients(const std::vector<T>& f, const std::vector<T>& phi, std::size_t order) {
  if (phi.empty() || phi[0] == T(0)) throw std::invalid_argument("lagrange_coefficients: phi(0) must be nonzero");
  std::vector<T> out(order + 1, T(0));
  out[0] = f.empty() ? T(0) : f[0];
  const std::vector<T> df = series_derivative(f);
  std::vector<T> power(order + 1, T(0));
  power[0] = T(1);
  for (std::size_t n = 1; n <= order; ++n) {
    power = series_mul(power, phi, order);
    T acc(0);
    for (std::size_t j = 0; j < n && j < df.size(); ++j) acc += df[j] * power[n - 1 - j];
    out[n] = acc / T(static_cast<long>(n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// eps-deformed families

/// Density of the member with mean m of the family with variance
/// (1 + eps m^2)^{3/2} / lambda, on the real line.
double eps_gaussian_density(double lambda, double eps, double m, double u);
FamilyMember eps_gaussian(double lambda, double eps, double m);
/// VarianceSpec overload; `spec` must be EpsDeformed with (a, b, c) = (eps, 0, 1).
FamilyMember eps_gaussian(const VarianceSpec& spec, double m);

/// Density on (0, inf) of the member with variance m^2 sqrt(1 + eps m^2) / lambda.
double eps_gamma_density(double lambda, double eps, double m, double u);
FamilyMember eps_gamma(double lambda, double eps, double m);

/// Mass at n / lambda of the member with variance m sqrt(1 + eps m^2) / lambda.
double eps_poisson_mass(double lambda, double eps, double m, long n);
/// The same mass through the terminating 2F1 closed form.
double eps_poisson_mass_hypergeometric(double lambda, double eps, double m, int n);
FamilyMember eps_poisson(double lambda, double eps, double m);

/// Mass at j sqrt(eps) / lambda (j integer) of the member with variance
/// sqrt(1 + eps m^2) / lambda: the exponentially tilted Bessel lattice.
double eps_gauss_discrete_mass(double lambda, double eps, double m, long j);
FamilyMember eps_gauss_discrete(double lambda, double eps, double m);
/// The same law assembled from its compound-Poisson double sum, aggregated
/// per lattice site j. Poisson levels beyond the 1e-18 tail are dropped.
std::map<long, double> eps_gauss_discrete_double_sum(double lambda, double eps, double m);

// ---------------------------------------------------------------------------
// Discrete generators from Lagrange expansions

enum class RationalSign { Minus, Plus };

/// phi_n(lambda) for v(m) = m / (1 - m) (Minus) or m / (1 + m) (Plus), from
/// the Hermite-sum closed forms evaluated in 50-digit arithmetic.
double rational_phi(double lambda, int n, RationalSign sign);
/// phi_0..phi_N in one pass.
std::vector<double> rational_phi_table(double lambda, int n_max, RationalSign sign);
/// The law sum_n phi_n e^{-lambda eta(m)} xi(m)^n delta_{n/lambda} with mean
/// m in (0, 1) and variance m / (lambda (1 - m)).
FamilyMember rational_minus_family(double lambda, double m);
double rational_minus_mass(double lambda, double m, long n);

/// phi_n(lambda) for v(m) = m sqrt(1 - m): e^{lambda(sqrt2-2)} (-C)^n L_n^{(-1)}(4 lambda).
double sqrt_family_phi(double lambda, int n);

/// Smallest n <= n_max with a negative coefficient, or -1.
int first_negative_phi(const std::function<double(int)>& phi, int n_max);

// ---------------------------------------------------------------------------
// Imaginary-order Bessel weight for V(m) = sqrt(1 - m^2); signed.

double arcsine_weight(double lambda, double m, double u);
/// The signed measure W_lambda(m, du); flagged non-probability.
FamilyMember arcsine_member(double lambda, double m);

// ---------------------------------------------------------------------------

/// (mass, mean, variance) of the member, moments taken about its mean.
MomentTriple moment_report(const FamilyMember& member, const MomentOptions& opts = {});
/// S_lambda(f)(m) = \int f dW_lambda(m, .).
double apply_operator(const FamilyMember& member, const std::function<double(double)>& f,
                      const MomentOptions& opts = {});

}  // namespace expfam::classical
