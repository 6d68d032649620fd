#pragma once

// Catalogue of every constructible family and counterexample, with the
// defaults used by the CLI and the validation suite.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "expfam/core/measure.hpp"

namespace expfam::harness {

using Params = std::map<std::string, double>;

/// Which difference operator in m the family kernel satisfies:
///   Derivative:  dW/dm              = W (u - m) / sigma^2(m)
///   QDerivative: (W(m) - W(qm)) / ((1-q) m)                   (same right side)
///   Hahn:        (W(m) - W(qm + 1 - q)) / ((1-q)(m - 1))      (same right side)
/// where sigma^2(m) is the declared variance of the member with mean m.
enum class OdeKind { None, Derivative, QDerivative, Hahn };

std::string to_string(OdeKind kind);

struct FamilyEntry {
  std::string id;
  std::string summary;
  Params defaults;
  std::vector<double> default_m_grid;
  bool probability = true;
  OdeKind ode = OdeKind::None;

  std::function<FamilyMember(const Params&, double m)> make;
  /// The weight W(m, u) at fixed u: density for continuous families, atom
  /// mass for discrete ones, w(m, u) for q- and free families.
  std::function<double(const Params&, double m, double u)> kernel;
  /// q of the difference operator (QDerivative, Hahn).
  std::function<double(const Params&)> ode_q;
  /// Points u at which the equation is checked for a given member.
  std::function<std::vector<double>(const Params&, const FamilyMember&)> sample_u;
};

/// Sign-change witness for a non-probability construction.
struct Witness {
  bool found = false;
  std::string kind;  // "index" or "u"
  double at = 0.0;
  double value = 0.0;
};

struct CounterexampleEntry {
  std::string id;
  std::string summary;
  Params defaults;  // includes the search range ("n_max" or "u_max")
  std::function<Witness(const Params&)> search;
};

const std::vector<FamilyEntry>& families();
const std::vector<CounterexampleEntry>& counterexamples();
/// Throws std::invalid_argument listing the known ids.
const FamilyEntry& find_family(const std::string& id);
const CounterexampleEntry& find_counterexample(const std::string& id);

/// Defaults overlaid with `overrides`; unknown keys are rejected.
Params merge_params(const Params& defaults, const Params& overrides);

/// |lhs - rhs| / (1 + |W|) for the family's difference equation at (m, u).
/// The classical derivative is taken by Richardson-extrapolated central
/// differences. Returns -1 for families without an equation.
double ode_residual(const FamilyEntry& entry, const Params& params, double m, double u, double dispersion);

/// d/dx f at x: central differences at h, h/2, h/4, h/8 with Richardson
/// extrapolation.
double richardson_derivative(const std::function<double(double)>& f, double x, double h);

}  // namespace expfam::harness
