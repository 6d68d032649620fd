#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expfam/harness/quadrature.hpp"
#include "expfam/harness/series_sum.hpp"

namespace expfam {

using harness::Interval;

/// How a density is integrated.
enum class Substitution {
  None,
  Log,     // s = ln u on a support inside (0, inf)
  Cosine,  // u = c + r cos(theta) on a bounded support; removes sqrt edges
};

struct DensityPart {
  std::function<double(double)> density;
  Interval support;
  double center = 0.0;  // bulk location (in s for Substitution::Log)
  double scale = 1.0;   // bulk width (in s for Substitution::Log)
  Substitution substitution = Substitution::None;
};

/// A measure: absolutely continuous part, finitely many atoms, and/or an
/// infinite atom stream. Mixed measures combine a density with atoms.
struct Measure {
  std::optional<DensityPart> continuous;
  std::vector<Atom> atoms;
  std::optional<AtomSource> series;

  enum class Kind { Continuous, Discrete, Mixed };
  Kind kind() const;

  static Measure from_density(DensityPart d);
  static Measure from_atoms(std::vector<Atom> atoms);
  static Measure from_series(AtomSource s);
  static Measure point_mass(double a);
};

struct MomentTriple {
  double mass = 0.0;
  double mean = 0.0;      // first moment divided by mass
  double variance = 0.0;  // central second moment divided by mass
  double error = 0.0;     // quadrature error plus tail bounds
};

struct MomentOptions {
  double quad_tol = 1e-11;    // absolute, scaled by the density's width for u-moments
  double series_rel_tol = 1e-12;
};

/// Zeroth, first and central second moment of `mu`; moments are taken about
/// `center` to keep the variance free of cancellation.
MomentTriple moments(const Measure& mu, double center, const MomentOptions& opts = {});

/// \int f d mu.
double integrate_against(const Measure& mu, const std::function<double(double)>& f,
                         const MomentOptions& opts = {});

/// A single law of an exponential-type family.
struct FamilyMember {
  std::string family;
  double mean = 0.0;
  double lambda = 1.0;
  double dispersion = 0.0;  // declared variance at `mean`
  Measure measure;
  bool probability = true;
  std::map<std::string, double> metadata;
};

}  // namespace expfam
