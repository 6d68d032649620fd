#pragma once

// Families for q = 1/p > 1 (q-Laguerre analogues of the gamma family, the
// q = infinity construction) and the Hahn-shifted Wall and Al-Salam-Carlitz
// families.

#include <functional>

#include "expfam/core/measure.hpp"

namespace expfam::qbig {

struct PParams {
  double p = 0.5;  // q = 1/p
  double lambda = 1.0;

  /// p (1 - p^lambda) / (1 - p); the variance of both q-Laguerre families
  /// is m^2 / lambda_q, and lambda_q -> lambda as p -> 1.
  double lambda_q() const;
  /// lambda (1 - p).
  double lambda_1() const;
  void validate() const;
};

/// (f(x) - f(qx + (1-q) theta)) / ((1-q)(x - theta)); std::domain_error at x = theta.
double hahn_derivative(const std::function<double(double)>& f, double q, double theta, double x);

/// Density w_lambda(m, u) on (0, inf). Integer lambda is handled through the
/// exact limit of sin(pi lambda) / (1 - p^{N - lambda}).
double q_laguerre_continuous(const PParams& params, double m, double u);
FamilyMember q_laguerre_continuous_family(const PParams& params, double m);

/// Mass at p^k, k in Z, of the discrete analogue.
double q_laguerre_discrete_mass(const PParams& params, double m, long k);
FamilyMember q_laguerre_discrete(const PParams& params, double m);

/// (1 + lambda m u) C(du) for a generator C with mean 0 and variance
/// 1/lambda. Throws std::domain_error naming the offending u when the
/// factor is negative on the support of C.
FamilyMember q_infinity_family(const Measure& C, double lambda, double m);
/// Two generators with equal third moment 0: atoms at +-1/sqrt(lambda),
/// and the semicircle of radius 2/sqrt(lambda).
Measure two_point_generator(double lambda);
Measure semicircle_generator(double lambda);
/// v(m) = 1 + lambda^2 T3 m - lambda m^2 with T3 = \int u^3 C(du).
double q_infinity_variance(double lambda, double t3, double m);

/// Wall family on {q^n}: mass (1-m)^n (1-m; q)_inf / (q; q)_n.
double wall_mass(double q, double m, long n);
/// Kernel w(m, u) = a^{ln u / ln q} (aq; q)_inf with a = (1 - m)/q.
double wall_weight(double q, double m, double u);
FamilyMember wall_family(double q, double m);

/// Al-Salam-Carlitz family on {p^{-n}}, a = m - 1:
/// mass a^n p^{n^2} (a p^{n+1}; p)_inf / (p; p)_n.
double al_salam_carlitz_mass(double p, double m, long n);
/// Kernel w(m, u) = a^{-ln u / ln p} (a p / u; p)_inf.
double al_salam_carlitz_weight(double p, double m, double u);
FamilyMember al_salam_carlitz_family(double p, double m);

}  // namespace expfam::qbig
