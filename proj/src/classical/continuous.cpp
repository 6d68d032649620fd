#include <cmath>
#include <numbers>
#include <stdexcept>

#include "expfam/classical.hpp"
#include "expfam/specfun.hpp"

namespace expfam::classical {

namespace {
void require_positive(double v, const char* what) {
  if (!(v > 0)) throw std::domain_error(std::string(what) + " must be positive");
}
}  // namespace

double eps_gaussian_density(double lambda, double eps, double m, double u) {
  const double s = std::sqrt(1.0 + eps * m * m);
  const double r = std::sqrt(1.0 + eps * u * u);
  const double z = lambda / eps * r;
  // exp((lambda/eps)(1 + eps u m)/s) K_1(z) with the e^{-z} of K_1 folded in.
  const double expo = lambda / eps * ((1.0 + eps * u * m) / s - r);
  return lambda / (std::numbers::pi * std::sqrt(eps) * r) * std::exp(expo) * specfun::bessel_k_scaled(1.0, z);
}

FamilyMember eps_gaussian(double lambda, double eps, double m) {
  require_positive(lambda, "eps_gaussian: lambda");
  require_positive(eps, "eps_gaussian: eps");
  const double s2 = 1.0 + eps * m * m;
  FamilyMember out;
  out.family = "eps-gaussian";
  out.mean = m;
  out.lambda = lambda;
  out.dispersion = s2 * std::sqrt(s2) / lambda;
  DensityPart d;
  d.density = [=](double u) { return eps_gaussian_density(lambda, eps, m, u); };
  d.support = {-INFINITY, INFINITY};
  d.center = m;
  d.scale = std::sqrt(out.dispersion);
  out.measure = Measure::from_density(std::move(d));
  // Ratio between the constant printed with the closed form and the one
  // that normalizes it.
  out.metadata["printed_to_normalized_constant"] = std::exp(-lambda / eps) / std::sqrt(eps);
  return out;
}

FamilyMember eps_gaussian(const VarianceSpec& spec, double m) {
  if (spec.kind != VarianceKind::EpsDeformed || spec.coeffs.size() != 4 || spec.coeffs[1] != 0.0 ||
      spec.coeffs[2] != 1.0 || spec.coeffs[0] != spec.coeffs[3])
    throw std::invalid_argument("eps_gaussian: spec must be (1 + eps m^2)^{3/2}");
  return eps_gaussian(spec.lambda, spec.coeffs[3], m);
}

double eps_gamma_density(double lambda, double eps, double m, double u) {
  if (!(u > 0)) return 0.0;
  const double se = std::sqrt(eps);
  const double s = std::sqrt(1.0 + eps * m * m);
  const double z = lambda * se * u;
  const double ival = specfun::bessel_i_scaled(lambda, z);
  if (ival == 0.0) return 0.0;
  const double log_w = lambda * std::log((1.0 + s) / (se * m)) + std::log(lambda / u) + std::log(ival) + z -
                       lambda * u * s / m;
  return std::exp(log_w);
}

FamilyMember eps_gamma(double lambda, double eps, double m) {
  require_positive(lambda, "eps_gamma: lambda");
  require_positive(eps, "eps_gamma: eps");
  if (!(m > 0)) throw std::domain_error("eps_gamma: m must be positive");
  FamilyMember out;
  out.family = "eps-gamma";
  out.mean = m;
  out.lambda = lambda;
  out.dispersion = m * m * std::sqrt(1.0 + eps * m * m) / lambda;
  DensityPart d;
  d.density = [=](double u) { return eps_gamma_density(lambda, eps, m, u); };
  d.support = {0.0, INFINITY};
  d.substitution = Substitution::Log;
  d.center = std::log(m);
  d.scale = std::max(0.05, std::sqrt(out.dispersion) / m);
  out.measure = Measure::from_density(std::move(d));
  return out;
}

}  // namespace expfam::classical
