#include "expfam/harness/series_sum.hpp"

#include <cmath>
#include <sstream>

#include "expfam/errors.hpp"

namespace expfam::harness {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

// Walks from `from` in steps of `dir` and returns the tail bound for that
// side. `total` holds the accumulated tail-control weight of both sides.
double walk_side(const AtomSource& src, const SeriesOptions& opts, long from, int dir,
                 std::optional<long> bound, double& total, long& count,
                 const std::function<void(long, const Atom&)>& visit) {
  double prev_g = -1.0;
  double prev_ratio = 2.0;
  int zeros = 0;
  long steps = 0;
  for (long n = from;; n += dir) {
    if (bound && ((dir > 0 && n > *bound) || (dir < 0 && n < *bound))) return 0.0;
    if (steps++ >= opts.max_atoms) {
      std::ostringstream msg;
      msg << "sum_series: tail not certified after " << opts.max_atoms << " atoms (index " << n << ")";
      throw NonConvergence(msg.str());
    }
    const Atom a = src.atom(n);
    visit(n, a);
    ++count;
    const double d = a.location - opts.center;
    const double g = std::abs(a.mass) * (1.0 + d * d);
    if (!std::isfinite(g)) throw NonConvergence("sum_series: non-finite atom weight");
    total += g;
    if (bound) continue;
    if (g == 0.0) {
      // Underflowed weights: accept once several consecutive atoms vanish
      // after the walk has passed the bulk.
      if (++zeros >= 4 && total > 0.0) return 0.0;
      prev_g = 0.0;
      continue;
    }
    zeros = 0;
    if (prev_g > 0.0) {
      const double ratio = g / prev_g;
      const double r = std::max(ratio, prev_ratio);
      if (ratio < 1.0 && prev_ratio < 1.0) {
        const double tail = g * r / (1.0 - r);
        if (tail < opts.rel_tol * total) return tail;
      }
      prev_ratio = ratio;
    }
    prev_g = g;
  }
}

}  // namespace

double walk_atoms(const AtomSource& source, const SeriesOptions& opts,
                  const std::function<void(long, const Atom&)>& visit) {
  long start = source.start;
  if (source.first && start < *source.first) start = *source.first;
  if (source.last && start > *source.last) start = *source.last;
  double total = 0.0;
  long count = 0;
  double tail = walk_side(source, opts, start, +1, source.last, total, count, visit);
  tail += walk_side(source, opts, start - 1, -1, source.first, total, count, visit);
  return tail;
}

SeriesMoments sum_series(const AtomSource& source, const SeriesOptions& opts) {
  CompensatedSum s0, s1, s2;
  SeriesMoments out;
  out.tail_bound = walk_atoms(source, opts, [&](long, const Atom& a) {
    const double d = a.location - opts.center;
    s0.add(a.mass);
    s1.add(a.mass * d);
    s2.add(a.mass * d * d);
    ++out.atoms_used;
  });
  out.mass = s0.value();
  const double m1 = s1.value() / out.mass;
  out.mean = opts.center + m1;
  out.variance = s2.value() / out.mass - m1 * m1;
  return out;
}

SeriesMoments sum_atoms(const std::vector<Atom>& atoms, double center) {
  CompensatedSum s0, s1, s2;
  for (const Atom& a : atoms) {
    const double d = a.location - center;
    s0.add(a.mass);
    s1.add(a.mass * d);
    s2.add(a.mass * d * d);
  }
  SeriesMoments out;
  out.mass = s0.value();
  out.atoms_used = static_cast<long>(atoms.size());
  if (out.mass != 0.0) {
    const double m1 = s1.value() / out.mass;
    out.mean = center + m1;
    out.variance = s2.value() / out.mass - m1 * m1;
  }
  return out;
}

}  // namespace expfam::harness
