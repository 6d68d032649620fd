#include "expfam/core/variance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace expfam {

namespace {
double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}
}  // namespace

double VarianceSpec::operator()(double m) const {
  switch (kind) {
    case VarianceKind::Quadratic:
    case VarianceKind::CustomSeries:
      return horner(coeffs, m);
    case VarianceKind::EpsDeformed:
      return (coeffs[0] * m * m + coeffs[1] * m + coeffs[2]) * std::sqrt(1.0 + coeffs[3] * m * m);
    case VarianceKind::RationalMinus:
      return m / (1.0 - m);
    case VarianceKind::RationalPlus:
      return m / (1.0 + m);
    case VarianceKind::SqrtOneMinus:
      return m * std::sqrt(1.0 - m);
    case VarianceKind::ArcSine:
      return std::sqrt(1.0 - m * m);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> VarianceSpec::series(int n) const {
  if (kind != VarianceKind::Quadratic && kind != VarianceKind::CustomSeries)
    throw std::invalid_argument("VarianceSpec::series: only polynomial and series kinds expose coefficients");
  std::vector<double> out(static_cast<std::size_t>(n + 1), 0.0);
  for (std::size_t k = 0; k < coeffs.size() && k < out.size(); ++k) out[k] = coeffs[k];
  return out;
}

void VarianceSpec::validate() const {
  if (!(lambda > 0)) throw std::invalid_argument("VarianceSpec: lambda must be positive");
  if (!(domain.hi > domain.lo)) throw std::invalid_argument("VarianceSpec: empty mean domain");
  const double lo = std::isfinite(domain.lo) ? domain.lo : -10.0;
  const double hi = std::isfinite(domain.hi) ? domain.hi : 10.0;
  constexpr int kSamples = 33;
  for (int i = 1; i < kSamples; ++i) {
    const double m = lo + (hi - lo) * i / kSamples;
    if (!((*this)(m) > 0)) throw std::invalid_argument("VarianceSpec: V(m) is not positive at m=" + std::to_string(m));
  }
}

VarianceSpec VarianceSpec::quadratic(double c0, double c1, double c2, harness::Interval domain, double lambda) {
  return {VarianceKind::Quadratic, {c0, c1, c2}, domain, lambda};
}

VarianceSpec VarianceSpec::eps_deformed(double a, double b, double c, double eps, harness::Interval domain,
                                        double lambda) {
  if (!(eps > 0)) throw std::invalid_argument("eps_deformed: eps must be positive");
  return {VarianceKind::EpsDeformed, {a, b, c, eps}, domain, lambda};
}

VarianceSpec VarianceSpec::rational_minus(double lambda) { return {VarianceKind::RationalMinus, {}, {0.0, 1.0}, lambda}; }
VarianceSpec VarianceSpec::rational_plus(double lambda) {
  return {VarianceKind::RationalPlus, {}, {0.0, INFINITY}, lambda};
}
VarianceSpec VarianceSpec::sqrt_one_minus(double lambda) { return {VarianceKind::SqrtOneMinus, {}, {0.0, 1.0}, lambda}; }
VarianceSpec VarianceSpec::arcsine(double lambda) { return {VarianceKind::ArcSine, {}, {-1.0, 1.0}, lambda}; }
VarianceSpec VarianceSpec::custom(std::vector<double> coeffs, harness::Interval domain, double lambda) {
  return {VarianceKind::CustomSeries, std::move(coeffs), domain, lambda};
}

std::string to_string(VarianceKind kind) {
  switch (kind) {
    case VarianceKind::Quadratic: return "quadratic";
    case VarianceKind::EpsDeformed: return "eps-deformed";
    case VarianceKind::RationalMinus: return "rational-minus";
    case VarianceKind::RationalPlus: return "rational-plus";
    case VarianceKind::SqrtOneMinus: return "sqrt-one-minus";
    case VarianceKind::ArcSine: return "arcsine";
    case VarianceKind::CustomSeries: return "custom-series";
  }
  return "unknown";
}

}  // namespace expfam
