#pragma once

// Summation of discrete measures given as index-addressed atom streams, with
// a ratio-based geometric tail certificate on every unbounded side.

#include <functional>
#include <optional>
#include <vector>

namespace expfam {

struct Atom {
  double location;
  double mass;
};

/// An atom stream indexed by integers. Either end may be unbounded. `atom`
/// must be callable concurrently and is queried at most once per index.
struct AtomSource {
  std::function<Atom(long)> atom;
  std::optional<long> first;  // nullopt: unbounded below
  std::optional<long> last;   // nullopt: unbounded above
  long start = 0;             // index where the walk begins; near the mode
  /// Maps a location back to its index, when the location is an atom.
  std::function<std::optional<long>(double)> index_of;
};

}  // namespace expfam

namespace expfam::harness {

struct SeriesOptions {
  double rel_tol = 1e-12;       // tail estimate relative to accumulated weight
  long max_atoms = 1000000;     // per direction
  double center = 0.0;          // moments are accumulated about this point
};

struct SeriesMoments {
  double mass = 0.0;
  double mean = 0.0;      // normalized by mass
  double variance = 0.0;  // normalized by mass
  double tail_bound = 0.0;
  long atoms_used = 0;
};

/// Enumerates atoms of `source` until every unbounded side is certified by
/// the ratio test on |mass| (1 + (x - center)^2). Calls `visit` once per
/// atom in a fixed order (start, then upward, then downward) and returns the
/// tail bound. Throws NonConvergence when the cap is reached first.
double walk_atoms(const AtomSource& source, const SeriesOptions& opts,
                  const std::function<void(long, const Atom&)>& visit);

/// Mass, mean and variance of the atom stream.
SeriesMoments sum_series(const AtomSource& source, const SeriesOptions& opts = {});

/// Same for a finite atom list.
SeriesMoments sum_atoms(const std::vector<Atom>& atoms, double center = 0.0);

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace expfam::harness
