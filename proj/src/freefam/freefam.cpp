#include "expfam/freefam.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace expfam::freefam {

double FreeMeixnerLaw::density(double u) const {
  const double r2 = 4.0 * (1.0 + b) - (u - a) * (u - a);
  if (!(r2 > 0)) return 0.0;
  return std::sqrt(r2) / (2.0 * std::numbers::pi * (b * u * u + a * u + 1.0));
}

Measure FreeMeixnerLaw::measure() const {
  Measure mu;
  DensityPart d;
  const FreeMeixnerLaw self = *this;
  d.density = [self](double u) { return self.density(u); };
  d.support = ac_support;
  d.substitution = Substitution::Cosine;
  mu.continuous = std::move(d);
  mu.atoms = atoms;
  return mu;
}

FreeMeixnerLaw free_meixner(double a, double b) {
  if (!(b > -1.0)) throw std::domain_error("free_meixner: b must exceed -1");
  FreeMeixnerLaw law;
  law.a = a;
  law.b = b;
  const double r = 2.0 * std::sqrt(1.0 + b);
  law.ac_support = {a - r, a + r};
  const double disc = a * a - 4.0 * b;
  auto add = [&](double u, double p) {
    if (p > 0) law.atoms.push_back({u, p});
  };
  if (b == 0.0) {
    if (a * a > 1.0) add(-1.0 / a, 1.0 - 1.0 / (a * a));
  } else if (b > 0.0) {
    if (disc > 0.0) {
      const double d = std::sqrt(disc);
      const double mag = (std::abs(a) - d) / (2.0 * b);
      add(a > 0 ? -mag : mag, 1.0 - (std::abs(a) - d) / (2.0 * b * d));
    }
  } else {
    const double d = std::sqrt(disc);  // disc > 0 since b < 0
    add((-a + d) / (2.0 * b), 1.0 + (d - a) / (2.0 * b * d));
    add((-a - d) / (2.0 * b), 1.0 + (d + a) / (2.0 * b * d));
  }
  return law;
}

double cauchy_transform(double a, double b, double z) {
  const double disc = (a - z) * (a - z) - 4.0 * (1.0 + b);
  if (!(disc > 0)) throw std::domain_error("cauchy_transform: z lies on the absolutely continuous support");
  const double den = 2.0 * (1.0 + a * z + b * z * z);
  if (den == 0.0) throw std::domain_error("cauchy_transform: z is a pole");
  const double sign = z > a ? 1.0 : -1.0;
  return (a + z + 2.0 * b * z - sign * std::sqrt(disc)) / den;
}

namespace {
void require_quadratic(const VarianceSpec& V, const char* who) {
  if (V.kind != VarianceKind::Quadratic || V.coeffs.size() != 3 || V.coeffs[0] != 1.0)
    throw std::invalid_argument(std::string(who) + ": V must be quadratic with V(0) = 1");
}
}  // namespace

double g2v_residual(const VarianceSpec& V, double m) {
  require_quadratic(V, "g2v_residual");
  const double v = V(m);
  if (m == 0.0) return 0.0;  // z = infinity, where G(z) ~ 1/z matches m/V(m) -> 0
  return std::abs(cauchy_transform(V.coeffs[1], V.coeffs[2], m + v / m) - m / v);
}

double free_weight(const VarianceSpec& V, double m, double u) {
  const double v = V(m);
  const double den = v + m * (m - u);
  if (!(den > 0)) {
    std::ostringstream msg;
    msg << "free_weight: V(m) + m(m - u) = " << den << " is not positive at m=" << m << ", u=" << u;
    throw std::domain_error(msg.str());
  }
  return v / den;
}

double FreeCumulantSeq::k(int n) const {
  if (n < 1 || static_cast<std::size_t>(n) > exact.size()) throw std::out_of_range("FreeCumulantSeq: index");
  return static_cast<double>(exact[static_cast<std::size_t>(n) - 1]);
}

FreeCumulantSeq free_cumulants(const std::vector<Rational>& v, std::size_t N) {
  return {free_cumulants_series(v, N)};
}

FreeCumulantSeq free_cumulants(const VarianceSpec& V, std::size_t N) {
  std::vector<double> c = V.series(static_cast<int>(N));
  std::vector<Rational> exact;
  exact.reserve(c.size());
  for (double x : c) exact.emplace_back(x);  // doubles are exact binary rationals
  // Fold in lambda for scaled specs.
  if (V.lambda != 1.0) {
    const Rational inv = Rational(1) / Rational(V.lambda);
    for (auto& x : exact) x *= inv;
  }
  return free_cumulants(exact, N);
}

VarianceSpec free_power(const VarianceSpec& V, double lambda) {
  if (!(lambda >= 1.0))
    throw std::invalid_argument(
        "free_power: lambda < 1 requires the generator to be freely infinitely divisible; only lambda >= 1 is "
        "constructed");
  VarianceSpec out = V;
  out.lambda = V.lambda * lambda;
  return out;
}

FamilyMember free_family_member(double a, double b, double m) {
  const FreeMeixnerLaw law = free_meixner(a, b);
  const VarianceSpec V = VarianceSpec::quadratic(1.0, a, b, {-INFINITY, INFINITY});
  auto w = [V, m](double u) { return free_weight(V, m, u); };
  // Positivity on the support and atoms is checked up front.
  w(law.ac_support.lo);
  w(law.ac_support.hi);
  Measure mu;
  DensityPart d;
  d.density = [law, w](double u) {
    const double base = law.density(u);
    return base == 0.0 ? 0.0 : base * w(u);
  };
  d.support = law.ac_support;
  d.substitution = Substitution::Cosine;
  mu.continuous = std::move(d);
  for (const Atom& at : law.atoms) mu.atoms.push_back({at.location, at.mass * w(at.location)});
  FamilyMember out;
  out.family = "free-meixner";
  out.mean = m;
  out.dispersion = V(m);
  out.measure = std::move(mu);
  return out;
}

}  // namespace expfam::freefam
