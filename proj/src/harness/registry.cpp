#include "expfam/harness/registry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "expfam/classical.hpp"
#include "expfam/freefam.hpp"
#include "expfam/qbig.hpp"
#include "expfam/qfam.hpp"
#include "expfam/specfun.hpp"

namespace expfam::harness {

std::string to_string(OdeKind kind) {
  switch (kind) {
    case OdeKind::None: return "none";
    case OdeKind::Derivative: return "derivative";
    case OdeKind::QDerivative: return "q-derivative";
    case OdeKind::Hahn: return "hahn";
  }
  return "unknown";
}

namespace {

double get(const Params& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument(std::string("missing parameter '") + key + "'");
  return it->second;
}

// Atoms of a stream around its starting index.
std::vector<double> atoms_near_start(const Params&, const FamilyMember& f) {
  std::vector<double> us;
  const AtomSource& s = *f.measure.series;
  for (long n = s.start - 2; n <= s.start + 2; ++n) {
    if (s.first && n < *s.first) continue;
    if (s.last && n > *s.last) continue;
    us.push_back(s.atom(n).location);
  }
  return us;
}

std::vector<double> around_mean(const Params&, const FamilyMember& f) {
  const DensityPart& d = *f.measure.continuous;
  std::vector<double> us;
  for (double z : {-1.2, -0.4, 0.3, 1.1}) {
    const double u = d.substitution == Substitution::Log ? std::exp(d.center + z * d.scale) : f.mean + z * d.scale;
    if (u > d.support.lo && u < d.support.hi) us.push_back(u);
  }
  return us;
}

std::vector<double> inside(double lo, double hi) {
  std::vector<double> us;
  for (double t : {0.1, 0.35, 0.6, 0.85}) us.push_back(lo + t * (hi - lo));
  return us;
}

std::vector<FamilyEntry> build_families() {
  using namespace expfam::classical;
  std::vector<FamilyEntry> out;

  out.push_back({"eps-gaussian", "continuous, V(m) = (1 + eps m^2)^{3/2}", {{"lambda", 1.0}, {"eps", 1.0}},
                 {-1.0, -0.5, 0.0, 0.5, 1.0}, true, OdeKind::Derivative,
                 [](const Params& p, double m) { return eps_gaussian(get(p, "lambda"), get(p, "eps"), m); },
                 [](const Params& p, double m, double u) {
                   return eps_gaussian_density(get(p, "lambda"), get(p, "eps"), m, u);
                 },
                 nullptr, around_mean});

  out.push_back({"eps-gamma", "continuous on (0, inf), V(m) = m^2 sqrt(1 + eps m^2)", {{"lambda", 2.0}, {"eps", 1.0}},
                 {0.5, 1.0, 1.5, 2.0, 3.0}, true, OdeKind::Derivative,
                 [](const Params& p, double m) { return eps_gamma(get(p, "lambda"), get(p, "eps"), m); },
                 [](const Params& p, double m, double u) {
                   return eps_gamma_density(get(p, "lambda"), get(p, "eps"), m, u);
                 },
                 nullptr, around_mean});

  out.push_back({"eps-poisson", "atoms at n/lambda, V(m) = m sqrt(1 + eps m^2)", {{"lambda", 1.0}, {"eps", 1.0}},
                 {0.25, 0.5, 1.0, 1.5, 2.0}, true, OdeKind::Derivative,
                 [](const Params& p, double m) { return eps_poisson(get(p, "lambda"), get(p, "eps"), m); },
                 [](const Params& p, double m, double u) {
                   const double l = get(p, "lambda");
                   return eps_poisson_mass(l, get(p, "eps"), m, std::lround(u * l));
                 },
                 nullptr, atoms_near_start});

  out.push_back({"eps-gauss-discrete", "lattice sqrt(eps)/lambda Z, V(m) = sqrt(1 + eps m^2)",
                 {{"lambda", 1.0}, {"eps", 1.0}}, {-1.0, -0.3, 0.0, 0.3, 1.0}, true, OdeKind::Derivative,
                 [](const Params& p, double m) { return eps_gauss_discrete(get(p, "lambda"), get(p, "eps"), m); },
                 [](const Params& p, double m, double u) {
                   const double l = get(p, "lambda"), e = get(p, "eps");
                   return eps_gauss_discrete_mass(l, e, m, std::lround(u * l / std::sqrt(e)));
                 },
                 nullptr, atoms_near_start});

  out.push_back({"rational-minus", "atoms at n/lambda, V(m) = m / (1 - m)", {{"lambda", 1.0}},
                 {0.1, 0.25, 0.4, 0.55, 0.7}, true, OdeKind::Derivative,
                 [](const Params& p, double m) { return rational_minus_family(get(p, "lambda"), m); },
                 [](const Params& p, double m, double u) {
                   const double l = get(p, "lambda");
                   return rational_minus_mass(l, m, std::lround(u * l));
                 },
                 nullptr, atoms_near_start});

  auto qexp = [](const Params& p) { return qfam::QExpParams{get(p, "q"), get(p, "a"), get(p, "b")}; };
  out.push_back({"q-exponential", "w(m,u) mu(du), |q| < 1, V(m) = 1 + a m + b m^2",
                 {{"q", 0.5}, {"a", 0.2}, {"b", 0.1}, {"nodes", 60}}, {-0.3, -0.15, 0.0, 0.15, 0.3}, true,
                 OdeKind::QDerivative,
                 [qexp](const Params& p, double m) {
                   return qfam::q_family_member(qexp(p), m, static_cast<int>(get(p, "nodes")));
                 },
                 [qexp](const Params& p, double m, double u) { return qfam::q_weight(qexp(p), m, u); },
                 [](const Params& p) { return get(p, "q"); },
                 [qexp](const Params& p, const FamilyMember&) {
                   const auto [lo, hi] = qfam::support_interval(qexp(p));
                   return inside(lo, hi);
                 }});

  out.push_back({"free-meixner", "free family V(m)/(V(m)+m(m-u)) mu(du), V(m) = 1 + a m + b m^2",
                 {{"a", 0.3}, {"b", 0.2}}, {-0.3, -0.15, 0.0, 0.15, 0.3}, true, OdeKind::QDerivative,
                 [](const Params& p, double m) { return freefam::free_family_member(get(p, "a"), get(p, "b"), m); },
                 [](const Params& p, double m, double u) {
                   const VarianceSpec V = VarianceSpec::quadratic(1.0, get(p, "a"), get(p, "b"), {-INFINITY, INFINITY});
                   return freefam::free_weight(V, m, u);
                 },
                 [](const Params&) { return 0.0; },
                 [](const Params& p, const FamilyMember&) {
                   const auto law = freefam::free_meixner(get(p, "a"), get(p, "b"));
                   return inside(law.ac_support.lo, law.ac_support.hi);
                 }});

  auto pp = [](const Params& p) { return qbig::PParams{get(p, "p"), get(p, "lambda")}; };
  out.push_back({"q-laguerre-continuous", "density on (0, inf), q = 1/p, V(m) = m^2 / lambda_q",
                 {{"p", 0.5}, {"lambda", 1.5}}, {0.5, 0.75, 1.0, 1.5, 2.0}, true, OdeKind::QDerivative,
                 [pp](const Params& p, double m) { return qbig::q_laguerre_continuous_family(pp(p), m); },
                 [pp](const Params& p, double m, double u) { return qbig::q_laguerre_continuous(pp(p), m, u); },
                 [](const Params& p) { return 1.0 / get(p, "p"); }, around_mean});

  out.push_back({"q-laguerre-discrete", "atoms at p^k (k in Z), q = 1/p, V(m) = m^2 / lambda_q",
                 {{"p", 0.5}, {"lambda", 1.0}}, {0.5, 0.75, 1.0, 1.5, 2.0}, true, OdeKind::QDerivative,
                 [pp](const Params& p, double m) { return qbig::q_laguerre_discrete(pp(p), m); },
                 [pp](const Params& p, double m, double u) {
                   return qbig::q_laguerre_discrete_mass(pp(p), m, std::lround(std::log(u) / std::log(get(p, "p"))));
                 },
                 [](const Params& p) { return 1.0 / get(p, "p"); }, atoms_near_start});

  out.push_back({"wall", "atoms at q^n, Hahn-shifted, V(m) = m (1 - m)(1 - q)", {{"q", 0.5}},
                 {0.1, 0.3, 0.5, 0.7, 0.9}, true, OdeKind::Hahn,
                 [](const Params& p, double m) { return qbig::wall_family(get(p, "q"), m); },
                 [](const Params& p, double m, double u) { return qbig::wall_weight(get(p, "q"), m, u); },
                 [](const Params& p) { return get(p, "q"); }, atoms_near_start});

  out.push_back({"al-salam-carlitz", "atoms at p^{-n}, Hahn-shifted, q = 1/p, V(m) = (1 - p)(m - 1)/p",
                 {{"p", 0.5}}, {1.2, 1.5, 2.0, 2.5, 2.8}, true, OdeKind::Hahn,
                 [](const Params& p, double m) { return qbig::al_salam_carlitz_family(get(p, "p"), m); },
                 [](const Params& p, double m, double u) {
                   return qbig::al_salam_carlitz_weight(get(p, "p"), m, u);
                 },
                 [](const Params& p) { return 1.0 / get(p, "p"); }, atoms_near_start});

  out.push_back({"q-infinity-two-point", "(1 + lambda m u) C(du), C = atoms at +-1/sqrt(lambda)", {{"lambda", 2.0}},
                 {-0.5, -0.25, 0.0, 0.25, 0.5}, true, OdeKind::None,
                 [](const Params& p, double m) {
                   const double l = get(p, "lambda");
                   return qbig::q_infinity_family(qbig::two_point_generator(l), l, m);
                 },
                 nullptr, nullptr, nullptr});

  out.push_back({"q-infinity-semicircle", "(1 + lambda m u) C(du), C = semicircle of radius 2/sqrt(lambda)",
                 {{"lambda", 2.0}}, {-0.3, -0.15, 0.0, 0.15, 0.3}, true, OdeKind::None,
                 [](const Params& p, double m) {
                   const double l = get(p, "lambda");
                   return qbig::q_infinity_family(qbig::semicircle_generator(l), l, m);
                 },
                 nullptr, nullptr, nullptr});

  return out;
}

Witness first_negative_index(const std::function<double(int)>& phi, int n_max) {
  Witness w;
  w.kind = "index";
  const int n = classical::first_negative_phi(phi, n_max);
  if (n >= 0) {
    w.found = true;
    w.at = n;
    w.value = phi(n);
  }
  return w;
}

std::vector<CounterexampleEntry> build_counterexamples() {
  using namespace expfam::classical;
  std::vector<CounterexampleEntry> out;
  out.push_back({"sqrt-family", "coefficients phi_n for V(m) = m sqrt(1 - m)", {{"lambda", 1.0}, {"n_max", 60}},
                 [](const Params& p) {
                   const double l = get(p, "lambda");
                   return first_negative_index([l](int n) { return sqrt_family_phi(l, n); },
                                               static_cast<int>(get(p, "n_max")));
                 }});
  out.push_back({"rational-plus", "coefficients phi_n for V(m) = m / (1 + m)", {{"lambda", 1.0}, {"n_max", 40}},
                 [](const Params& p) {
                   const int n_max = static_cast<int>(get(p, "n_max"));
                   const auto table = rational_phi_table(get(p, "lambda"), n_max, RationalSign::Plus);
                   return first_negative_index([&table](int n) { return table[static_cast<std::size_t>(n)]; }, n_max);
                 }});
  out.push_back({"arcsine", "weight (lambda/pi) K_{i lambda u}(lambda) e^{...} for V(m) = sqrt(1 - m^2)",
                 {{"lambda", 1.0}, {"m", 0.0}, {"u_max", 10.0}, {"steps", 1000}},
                 [](const Params& p) {
                   const double l = get(p, "lambda"), m = get(p, "m"), u_max = get(p, "u_max");
                   const int steps = static_cast<int>(get(p, "steps"));
                   Witness w;
                   w.kind = "u";
                   for (int i = 1; i <= steps; ++i) {
                     const double u = u_max * i / steps;
                     const double v = arcsine_weight(l, m, u);
                     if (v < 0) {
                       w.found = true;
                       w.at = u;
                       w.value = v;
                       break;
                     }
                   }
                   return w;
                 }});
  return out;
}

}  // namespace

const std::vector<FamilyEntry>& families() {
  static const std::vector<FamilyEntry> table = build_families();
  return table;
}

const std::vector<CounterexampleEntry>& counterexamples() {
  static const std::vector<CounterexampleEntry> table = build_counterexamples();
  return table;
}

const FamilyEntry& find_family(const std::string& id) {
  for (const auto& f : families())
    if (f.id == id) return f;
  std::ostringstream msg;
  msg << "unknown family '" << id << "'; known:";
  for (const auto& f : families()) msg << ' ' << f.id;
  throw std::invalid_argument(msg.str());
}

const CounterexampleEntry& find_counterexample(const std::string& id) {
  for (const auto& c : counterexamples())
    if (c.id == id) return c;
  std::ostringstream msg;
  msg << "unknown counterexample '" << id << "'; known:";
  for (const auto& c : counterexamples()) msg << ' ' << c.id;
  throw std::invalid_argument(msg.str());
}

Params merge_params(const Params& defaults, const Params& overrides) {
  Params out = defaults;
  for (const auto& [k, v] : overrides) {
    if (!defaults.count(k)) throw std::invalid_argument("unknown parameter '" + k + "'");
    out[k] = v;
  }
  return out;
}

double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
  constexpr int kLevels = 4;
  double table[kLevels][kLevels];
  for (int i = 0; i < kLevels; ++i) {
    table[i][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    double factor = 4.0;
    for (int j = 1; j <= i; ++j) {
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
    h *= 0.5;
  }
  return table[kLevels - 1][kLevels - 1];
}

double ode_residual(const FamilyEntry& e, const Params& p, double m, double u, double dispersion) {
  if (e.ode == OdeKind::None || !e.kernel) return -1.0;
  auto w = [&](double mm) { return e.kernel(p, mm, u); };
  const double w0 = w(m);
  const double rhs = w0 * (u - m) / dispersion;
  double lhs = 0.0;
  switch (e.ode) {
    case OdeKind::Derivative:
      lhs = richardson_derivative(w, m, 0.01 * std::max(std::abs(m), 0.1));
      break;
    case OdeKind::QDerivative: {
      const double q = e.ode_q(p);
      lhs = (w0 - w(q * m)) / ((1.0 - q) * m);
      break;
    }
    case OdeKind::Hahn: {
      const double q = e.ode_q(p);
      lhs = (w0 - w(q * m + 1.0 - q)) / ((1.0 - q) * (m - 1.0));
      break;
    }
    case OdeKind::None:
      break;
  }
  return std::abs(lhs - rhs) / (1.0 + std::abs(w0));
}

}  // namespace expfam::harness
