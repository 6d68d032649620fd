#include "expfam/core/measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace expfam {

Measure::Kind Measure::kind() const {
  const bool has_atoms = !atoms.empty() || series.has_value();
  if (continuous && has_atoms) return Kind::Mixed;
  if (continuous) return Kind::Continuous;
  return Kind::Discrete;
}

Measure Measure::from_density(DensityPart d) {
  Measure m;
  m.continuous = std::move(d);
  return m;
}

Measure Measure::from_atoms(std::vector<Atom> atoms) {
  Measure m;
  m.atoms = std::move(atoms);
  return m;
}

Measure Measure::from_series(AtomSource s) {
  Measure m;
  m.series = std::move(s);
  return m;
}

Measure Measure::point_mass(double a) { return from_atoms({{a, 1.0}}); }

namespace {

harness::IntegrationResult integrate_density(const DensityPart& d, const std::function<double(double)>& f,
                                             double tol) {
  harness::IntegrateOptions o;
  switch (d.substitution) {
    case Substitution::None: {
      o.center = d.center;
      o.scale = d.scale;
      auto g = [&](double u) {
        const double w = d.density(u);
        return w == 0.0 ? 0.0 : w * f(u);
      };
      return harness::integrate(g, d.support, tol, o);
    }
    case Substitution::Log: {
      if (!(d.support.lo >= 0.0)) throw std::invalid_argument("log substitution needs a support in (0, inf)");
      o.center = d.center;
      o.scale = d.scale;
      auto g = [&](double s) {
        const double u = std::exp(s);
        if (u == 0.0 || !std::isfinite(u)) return 0.0;
        const double w = d.density(u);
        return w == 0.0 ? 0.0 : w * f(u) * u;
      };
      const double lo = d.support.lo > 0 ? std::log(d.support.lo) : -INFINITY;
      const double hi = std::isfinite(d.support.hi) ? std::log(d.support.hi) : INFINITY;
      return harness::integrate(g, {lo, hi}, tol, o);
    }
    case Substitution::Cosine: {
      if (!d.support.bounded()) throw std::invalid_argument("cosine substitution needs a bounded support");
      const double c = 0.5 * (d.support.lo + d.support.hi);
      const double r = 0.5 * (d.support.hi - d.support.lo);
      auto g = [&](double t) {
        const double u = c - r * std::cos(t);
        const double w = d.density(u);
        return w == 0.0 ? 0.0 : w * f(u) * r * std::sin(t);
      };
      return harness::integrate_finite(g, 0.0, std::numbers::pi, tol);
    }
  }
  throw std::logic_error("unknown substitution");
}

double u_scale(const Measure& mu) {
  if (!mu.continuous) return 1.0;
  const auto& d = *mu.continuous;
  if (d.substitution == Substitution::Log) return std::exp(d.center) * std::max(1.0, d.scale);
  if (d.substitution == Substitution::Cosine) return 0.5 * (d.support.hi - d.support.lo);
  return d.scale;
}

}  // namespace

double integrate_against(const Measure& mu, const std::function<double(double)>& f, const MomentOptions& opts) {
  harness::CompensatedSum total;
  if (mu.continuous) total.add(integrate_density(*mu.continuous, f, opts.quad_tol).value);
  for (const Atom& a : mu.atoms) total.add(a.mass * f(a.location));
  if (mu.series) {
    harness::SeriesOptions so;
    so.rel_tol = opts.series_rel_tol;
    harness::walk_atoms(*mu.series, so, [&](long, const Atom& a) { total.add(a.mass * f(a.location)); });
  }
  return total.value();
}

MomentTriple moments(const Measure& mu, double center, const MomentOptions& opts) {
  harness::CompensatedSum s0, s1, s2;
  double error = 0.0;
  if (mu.continuous) {
    const double w = std::max(1.0, u_scale(mu));
    auto r0 = integrate_density(*mu.continuous, [](double) { return 1.0; }, opts.quad_tol);
    auto r1 = integrate_density(*mu.continuous, [center](double u) { return u - center; }, opts.quad_tol * w);
    auto r2 = integrate_density(
        *mu.continuous, [center](double u) { return (u - center) * (u - center); }, opts.quad_tol * w * w);
    s0.add(r0.value);
    s1.add(r1.value);
    s2.add(r2.value);
    error += r0.error;
  }
  for (const Atom& a : mu.atoms) {
    const double d = a.location - center;
    s0.add(a.mass);
    s1.add(a.mass * d);
    s2.add(a.mass * d * d);
  }
  if (mu.series) {
    harness::SeriesOptions so;
    so.rel_tol = opts.series_rel_tol;
    so.center = center;
    error += harness::walk_atoms(*mu.series, so, [&](long, const Atom& a) {
      const double d = a.location - center;
      s0.add(a.mass);
      s1.add(a.mass * d);
      s2.add(a.mass * d * d);
    });
  }
  MomentTriple t;
  t.mass = s0.value();
  t.error = error;
  if (t.mass != 0.0) {
    const double m1 = s1.value() / t.mass;
    t.mean = center + m1;
    t.variance = s2.value() / t.mass - m1 * m1;
  }
  return t;
}

}  // namespace expfam
