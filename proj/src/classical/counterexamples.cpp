#include <cmath>
#include <numbers>
#include <stdexcept>

#include "expfam/classical.hpp"
#include "expfam/specfun.hpp"

namespace expfam::classical {

double arcsine_weight(double lambda, double m, double u) {
  if (!(lambda > 0)) throw std::domain_error("arcsine_weight: lambda must be positive");
  if (!(std::abs(m) < 1.0)) throw std::domain_error("arcsine_weight: |m| must be < 1");
  return lambda / std::numbers::pi * specfun::bessel_k_imag(lambda * u, lambda) *
         std::exp(lambda * std::sqrt(1.0 - m * m) - lambda * u * std::asin(m));
}

FamilyMember arcsine_member(double lambda, double m) {
  // Validates the arguments.
  (void)arcsine_weight(lambda, m, 0.0);
  FamilyMember out;
  out.family = "arcsine";
  out.mean = m;
  out.lambda = lambda;
  out.dispersion = std::sqrt(1.0 - m * m) / lambda;
  out.probability = false;
  DensityPart d;
  d.density = [=](double u) { return arcsine_weight(lambda, m, u); };
  d.support = {-INFINITY, INFINITY};
  d.center = m;
  d.scale = 1.0 / lambda;
  out.measure = Measure::from_density(std::move(d));
  return out;
}

}  // namespace expfam::classical
