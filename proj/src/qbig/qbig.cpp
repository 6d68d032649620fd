#include "expfam/qbig.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "expfam/specfun.hpp"

namespace expfam::qbig {

using specfun::log_q_pochhammer_inf;

double PParams::lambda_q() const { return p * (1.0 - std::pow(p, lambda)) / (1.0 - p); }
double PParams::lambda_1() const { return lambda * (1.0 - p); }

void PParams::validate() const {
  if (!(p > 0 && p < 1)) throw std::domain_error("PParams: p must lie in (0, 1)");
  if (!(lambda > 0)) throw std::domain_error("PParams: lambda must be positive");
}

double hahn_derivative(const std::function<double(double)>& f, double q, double theta, double x) {
  if (x == theta) throw std::domain_error("hahn_derivative: x must differ from theta");
  if (q == 1.0) throw std::domain_error("hahn_derivative: q must differ from 1");
  return (f(x) - f(q * x + (1.0 - q) * theta)) / ((1.0 - q) * (x - theta));
}

namespace {

struct Signed {
  double log_abs = 0.0;
  int sign = 1;
  void mul(const specfun::SignedLog& s) {
    log_abs += s.log_abs;
    sign *= s.sign;
  }
  void div(const specfun::SignedLog& s) {
    log_abs -= s.log_abs;
    sign *= s.sign;
  }
  double value() const { return sign * std::exp(log_abs); }
};

// log of the constant in front of u^{lambda-1} / (-u c; p)_inf, c = (p^{-lambda}-1)/m:
//   (p^{-lambda}-1)^lambda (p;p)_inf sin(pi lambda) / (pi m^lambda (p^{1-lambda};p)_inf).
Signed continuous_constant(const PParams& P, double m) {
  const double p = P.p, lam = P.lambda;
  const double lp = std::log(p);
  Signed out;
  out.log_abs = lam * std::log(std::expm1(-lam * lp)) - std::log(std::numbers::pi) - lam * std::log(m);
  out.mul(log_q_pochhammer_inf(p, p));
  // sin(pi lambda) over the factor 1 - p^{N - lambda} (k = N-1 of the
  // product), where N is the nearest integer >= 1; their ratio is smooth.
  const double N = std::round(lam);
  const double delta = lam - N;
  const double sin_pi = (static_cast<long>(N) % 2 == 0 ? 1.0 : -1.0) * std::sin(std::numbers::pi * delta);
  double ratio;
  long skip = -1;
  if (N >= 1.0) {
    skip = static_cast<long>(N) - 1;
    ratio = delta == 0.0 ? (static_cast<long>(N) % 2 == 0 ? 1.0 : -1.0) * std::numbers::pi / lp
                         : sin_pi / (-std::expm1(-delta * lp));
  } else {
    ratio = sin_pi;
  }
  if (ratio == 0.0) throw std::domain_error("q_laguerre_continuous: vanishing constant");
  out.log_abs += std::log(std::abs(ratio));
  if (ratio < 0) out.sign = -out.sign;
  // Remaining factors of (p^{1-lambda}; p)_inf.
  double x = std::pow(p, 1.0 - lam);
  for (long k = 0; k < 100000; ++k, x *= p) {
    if (k != skip) {
      const double f = 1.0 - x;
      out.log_abs -= std::log(std::abs(f));
      if (f < 0) out.sign = -out.sign;
    }
    if (k > skip && std::abs(x) < 1e-17) break;
  }
  return out;
}

}  // namespace

double q_laguerre_continuous(const PParams& P, double m, double u) {
  P.validate();
  if (!(m > 0)) throw std::domain_error("q_laguerre_continuous: m must be positive");
  if (!(u > 0)) throw std::domain_error("q_laguerre_continuous: u must be positive");
  const double c = std::expm1(-P.lambda * std::log(P.p)) / m;
  Signed w = continuous_constant(P, m);
  w.log_abs += (P.lambda - 1.0) * std::log(u);
  w.div(log_q_pochhammer_inf(-u * c, P.p));
  return w.value();
}

FamilyMember q_laguerre_continuous_family(const PParams& P, double m) {
  P.validate();
  if (!(m > 0)) throw std::domain_error("q_laguerre_continuous: m must be positive");
  const Signed k = continuous_constant(P, m);
  const double c = std::expm1(-P.lambda * std::log(P.p)) / m;
  FamilyMember out;
  out.family = "q-laguerre-continuous";
  out.mean = m;
  out.lambda = P.lambda;
  out.dispersion = m * m / P.lambda_q();
  DensityPart d;
  d.density = [k, c, P](double u) {
    if (!(u > 0)) return 0.0;
    Signed w = k;
    w.log_abs += (P.lambda - 1.0) * std::log(u);
    w.div(log_q_pochhammer_inf(-u * c, P.p));
    return w.value();
  };
  d.support = {0.0, INFINITY};
  d.substitution = Substitution::Log;
  d.center = std::log(m);
  d.scale = std::max(0.3, std::sqrt(-std::log(P.p)));
  out.measure = Measure::from_density(std::move(d));
  out.metadata["p"] = P.p;
  out.metadata["lambda_q"] = P.lambda_q();
  return out;
}

namespace {

// (p^l, -c, -p/c; p)_inf / (p, -c p^l, -p^{1-l}/c; p)_inf
double discrete_log_constant(const PParams& P, double c) {
  const double p = P.p, l = P.lambda;
  Signed s;
  s.mul(log_q_pochhammer_inf(std::pow(p, l), p));
  s.mul(log_q_pochhammer_inf(-c, p));
  s.mul(log_q_pochhammer_inf(-p / c, p));
  s.div(log_q_pochhammer_inf(p, p));
  s.div(log_q_pochhammer_inf(-c * std::pow(p, l), p));
  s.div(log_q_pochhammer_inf(-std::pow(p, 1.0 - l) / c, p));
  return s.log_abs;  // all factors are positive
}

}  // namespace

double q_laguerre_discrete_mass(const PParams& P, double m, long k) {
  P.validate();
  if (!(m > 0)) throw std::domain_error("q_laguerre_discrete: m must be positive");
  const double c = std::expm1(-P.lambda * std::log(P.p)) / m;
  const double u = std::pow(P.p, static_cast<double>(k));
  return std::exp(P.lambda * k * std::log(P.p) - log_q_pochhammer_inf(-c * u, P.p).log_abs +
                  discrete_log_constant(P, c));
}

FamilyMember q_laguerre_discrete(const PParams& P, double m) {
  P.validate();
  if (!(m > 0)) throw std::domain_error("q_laguerre_discrete: m must be positive");
  const double c = std::expm1(-P.lambda * std::log(P.p)) / m;
  const double log_k = discrete_log_constant(P, c);
  const double lp = std::log(P.p);
  FamilyMember out;
  out.family = "q-laguerre-discrete";
  out.mean = m;
  out.lambda = P.lambda;
  out.dispersion = m * m / P.lambda_q();
  AtomSource src;
  src.atom = [=](long k) {
    const double u = std::exp(k * lp);
    return Atom{u, std::exp(P.lambda * k * lp - log_q_pochhammer_inf(-c * u, P.p).log_abs + log_k)};
  };
  src.start = static_cast<long>(std::round(std::log(m) / lp));
  src.index_of = [lp](double u) -> std::optional<long> {
    if (!(u > 0)) return std::nullopt;
    const double k = std::round(std::log(u) / lp);
    if (std::abs(std::exp(k * lp) - u) > 1e-12 * u) return std::nullopt;
    return static_cast<long>(k);
  };
  out.measure = Measure::from_series(std::move(src));
  out.metadata["p"] = P.p;
  out.metadata["lambda_q"] = P.lambda_q();
  return out;
}

double q_infinity_variance(double lambda, double t3, double m) { return 1.0 + lambda * lambda * t3 * m - lambda * m * m; }

Measure two_point_generator(double lambda) {
  if (!(lambda > 0)) throw std::domain_error("two_point_generator: lambda must be positive");
  const double r = 1.0 / std::sqrt(lambda);
  return Measure::from_atoms({{-r, 0.5}, {r, 0.5}});
}

Measure semicircle_generator(double lambda) {
  if (!(lambda > 0)) throw std::domain_error("semicircle_generator: lambda must be positive");
  const double R = 2.0 / std::sqrt(lambda);
  DensityPart d;
  d.density = [R](double u) {
    const double r2 = R * R - u * u;
    return r2 > 0 ? 2.0 * std::sqrt(r2) / (std::numbers::pi * R * R) : 0.0;
  };
  d.support = {-R, R};
  d.substitution = Substitution::Cosine;
  return Measure::from_density(std::move(d));
}

FamilyMember q_infinity_family(const Measure& C, double lambda, double m) {
  if (!(lambda > 0)) throw std::domain_error("q_infinity_family: lambda must be positive");
  if (C.series) throw std::invalid_argument("q_infinity_family: generator must have finitely many atoms");
  auto check = [&](double u) {
    if (1.0 + lambda * m * u < 0) {
      std::ostringstream msg;
      msg << "q_infinity_family: 1 + lambda m u < 0 at u=" << u;
      throw std::domain_error(msg.str());
    }
  };
  Measure W;
  for (const Atom& a : C.atoms) {
    check(a.location);
    W.atoms.push_back({a.location, a.mass * (1.0 + lambda * m * a.location)});
  }
  if (C.continuous) {
    const DensityPart& base = *C.continuous;
    check(base.support.lo);
    check(base.support.hi);
    DensityPart d = base;
    auto f = base.density;
    d.density = [f, lambda, m](double u) { return f(u) * (1.0 + lambda * m * u); };
    W.continuous = std::move(d);
  }
  const double t3 = integrate_against(C, [](double u) { return u * u * u; });
  FamilyMember out;
  out.family = "q-infinity";
  out.mean = m;
  out.lambda = lambda;
  out.dispersion = q_infinity_variance(lambda, t3, m) / lambda;
  out.measure = std::move(W);
  out.metadata["T3"] = t3;
  return out;
}

double wall_mass(double q, double m, long n) {
  if (!(q > 0 && q < 1)) throw std::domain_error("wall_family: q must lie in (0, 1)");
  if (!(m > 0 && m < 1)) throw std::domain_error("wall_family: m must lie in (0, 1)");
  if (n < 0) return 0.0;
  const double log_qq = std::log(std::abs(specfun::q_pochhammer(q, q, static_cast<int>(n))));
  return std::exp(n * std::log1p(-m) + log_q_pochhammer_inf(1.0 - m, q).log_abs - log_qq);
}

double wall_weight(double q, double m, double u) {
  if (!(m > 0 && m < 1)) throw std::domain_error("wall_weight: m must lie in (0, 1)");
  const double a = (1.0 - m) / q;
  return std::exp(std::log(u) / std::log(q) * std::log(a) + log_q_pochhammer_inf(a * q, q).log_abs);
}

FamilyMember wall_family(double q, double m) {
  (void)wall_mass(q, m, 0);  // argument checks
  const double lq = std::log(q);
  const double log_inf = log_q_pochhammer_inf(1.0 - m, q).log_abs;
  const double l1m = std::log1p(-m);
  FamilyMember out;
  out.family = "wall";
  out.mean = m;
  out.dispersion = m * (1.0 - m) * (1.0 - q);
  AtomSource src;
  src.atom = [=](long n) {
    const double log_qq = std::log(specfun::q_pochhammer(q, q, static_cast<int>(n)));
    return Atom{std::exp(n * lq), std::exp(n * l1m + log_inf - log_qq)};
  };
  src.first = 0;
  src.start = 0;
  src.index_of = [lq](double u) -> std::optional<long> {
    if (!(u > 0)) return std::nullopt;
    const double n = std::round(std::log(u) / lq);
    if (n < 0 || std::abs(std::exp(n * lq) - u) > 1e-12 * u) return std::nullopt;
    return static_cast<long>(n);
  };
  out.measure = Measure::from_series(std::move(src));
  out.metadata["q"] = q;
  return out;
}

double al_salam_carlitz_mass(double p, double m, long n) {
  if (!(p > 0 && p < 1)) throw std::domain_error("al_salam_carlitz_family: p must lie in (0, 1)");
  if (!(m > 1)) throw std::domain_error("al_salam_carlitz_family: m must exceed 1");
  if (n < 0) return 0.0;
  const double a = m - 1.0;
  const double lp = std::log(p);
  const double log_pp = std::log(specfun::q_pochhammer(p, p, static_cast<int>(n)));
  // signed once a p > 1, i.e. m > 1 + 1/p
  const auto tail = log_q_pochhammer_inf(a * std::pow(p, n + 1.0), p);
  return tail.sign * std::exp(n * std::log(a) + static_cast<double>(n) * n * lp - log_pp + tail.log_abs);
}

double al_salam_carlitz_weight(double p, double m, double u) {
  if (!(m > 1)) throw std::domain_error("al_salam_carlitz_weight: m must exceed 1");
  const double a = m - 1.0;
  const auto tail = log_q_pochhammer_inf(a * p / u, p);
  return tail.sign * std::exp(-std::log(u) / std::log(p) * std::log(a) + tail.log_abs);
}

FamilyMember al_salam_carlitz_family(double p, double m) {
  (void)al_salam_carlitz_mass(p, m, 0);
  const double lp = std::log(p);
  FamilyMember out;
  out.family = "al-salam-carlitz";
  out.mean = m;
  out.dispersion = (1.0 - p) * (m - 1.0) / p;
  AtomSource src;
  src.atom = [=](long n) { return Atom{std::exp(-n * lp), al_salam_carlitz_mass(p, m, n)}; };
  src.first = 0;
  src.start = std::max(0L, static_cast<long>(std::round(std::log(m - 1.0) / (-2.0 * lp))));
  src.index_of = [lp](double u) -> std::optional<long> {
    if (!(u > 0)) return std::nullopt;
    const double n = std::round(-std::log(u) / lp);
    if (n < 0 || std::abs(std::exp(-n * lp) - u) > 1e-12 * u) return std::nullopt;
    return static_cast<long>(n);
  };
  out.measure = Measure::from_series(std::move(src));
  out.metadata["p"] = p;
  return out;
}

}  // namespace expfam::qbig
