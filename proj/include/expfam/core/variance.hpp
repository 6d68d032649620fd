#pragma once

#include <string>
#include <vector>

#include "expfam/harness/quadrature.hpp"

namespace expfam {

enum class VarianceKind {
  Quadratic,     // c0 + c1 m + c2 m^2
  EpsDeformed,   // (a m^2 + b m + c) sqrt(1 + eps m^2)
  RationalMinus, // m / (1 - m)
  RationalPlus,  // m / (1 + m)
  SqrtOneMinus,  // m sqrt(1 - m)
  ArcSine,       // sqrt(1 - m^2)
  CustomSeries,  // sum_k coeffs[k] m^k
};

/// A variance function V on its mean domain (lo, hi), with scale lambda.
/// The family member with mean m has variance V(m) / lambda.
struct VarianceSpec {
  VarianceKind kind = VarianceKind::Quadratic;
  std::vector<double> coeffs;
  harness::Interval domain{-1.0, 1.0};
  double lambda = 1.0;

  double operator()(double m) const;
  double dispersion(double m) const { return (*this)(m) / lambda; }
  /// Taylor coefficients of V at 0 up to degree n (polynomial kinds and
  /// CustomSeries only).
  std::vector<double> series(int n) const;

  /// Throws std::invalid_argument unless lambda > 0 and V > 0 on a sample
  /// grid inside the domain.
  void validate() const;

  static VarianceSpec quadratic(double c0, double c1, double c2, harness::Interval domain, double lambda = 1.0);
  static VarianceSpec eps_deformed(double a, double b, double c, double eps, harness::Interval domain,
                                   double lambda = 1.0);
  static VarianceSpec rational_minus(double lambda = 1.0);
  static VarianceSpec rational_plus(double lambda = 1.0);
  static VarianceSpec sqrt_one_minus(double lambda = 1.0);
  static VarianceSpec arcsine(double lambda = 1.0);
  static VarianceSpec custom(std::vector<double> coeffs, harness::Interval domain, double lambda = 1.0);
};

std::string to_string(VarianceKind kind);

}  // namespace expfam
