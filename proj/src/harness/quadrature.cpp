#include "expfam/harness/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "expfam/errors.hpp"

namespace expfam::harness {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p{lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
  if (!std::isfinite(p.value)) p.error = std::numeric_limits<double>::infinity();
  return p;
}

}  // namespace

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

IntegrationResult integrate_finite(const std::function<double(double)>& f, double lo, double hi,
                                   double tol, int max_subdivisions) {
  IntegrationResult out;
  if (!(hi > lo)) return out;
  std::priority_queue<Panel> heap;
  double value = 0.0, error = 0.0;
  constexpr int kSeed = 4;
  for (int i = 0; i < kSeed; ++i) {
    const double a = lo + (hi - lo) * i / kSeed;
    const double b = (i + 1 == kSeed) ? hi : lo + (hi - lo) * (i + 1) / kSeed;
    Panel p = gk15(f, a, b);
    value += p.value;
    error += p.error;
    heap.push(p);
  }
  int evals = 15 * kSeed;
  int splits = 0;
  while (error > tol && splits < max_subdivisions) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      heap.push(worst);
      break;
    }
    Panel left = gk15(f, worst.lo, mid);
    Panel right = gk15(f, mid, worst.hi);
    evals += 30;
    ++splits;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of incremental updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  out.evaluations = evals;
  return out;
}

IntegrationResult integrate(const std::function<double(double)>& f, Interval support, double tol,
                            const IntegrateOptions& opts) {
  if (!(tol > 0)) throw std::invalid_argument("integrate: tolerance must be positive");
  IntegrationResult total;
  if (!(support.hi > support.lo)) return total;

  const double scale = opts.scale > 0 ? opts.scale : 1.0;
  double core_lo = std::isfinite(support.lo) ? support.lo : opts.center - opts.core_halfwidth * scale;
  double core_hi = std::isfinite(support.hi) ? support.hi : opts.center + opts.core_halfwidth * scale;
  core_lo = std::max(core_lo, support.lo);
  core_hi = std::min(core_hi, support.hi);
  if (!(core_hi > core_lo)) {
    // Bulk lies outside the support; fall back to a unit window at the edge.
    if (std::isfinite(support.lo)) {
      core_lo = support.lo;
      core_hi = std::min(support.hi, support.lo + scale);
    } else {
      core_hi = support.hi;
      core_lo = support.hi - scale;
    }
  }

  std::vector<double> cuts{core_lo, core_hi};
  for (double b : opts.breakpoints)
    if (b > core_lo && b < core_hi) cuts.push_back(b);
  // Seed with panels of width about `scale` so that narrow peaks are seen.
  const int seeds = static_cast<int>(std::min(64.0, std::ceil((core_hi - core_lo) / scale)));
  for (int i = 1; i < seeds; ++i) cuts.push_back(core_lo + (core_hi - core_lo) * i / seeds);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double piece_tol = tol / (2.0 * static_cast<double>(cuts.size()));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    IntegrationResult r = integrate_finite(f, cuts[i], cuts[i + 1], piece_tol, opts.max_subdivisions);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }

  auto walk = [&](double edge, double direction) {
    double width = scale;
    int quiet = 0;
    for (int step = 0; step < 400; ++step) {
      const double a = edge;
      const double b = edge + direction * width;
      if (!std::isfinite(b)) break;
      IntegrationResult r = direction > 0 ? integrate_finite(f, a, b, tol / 8, opts.max_subdivisions)
                                          : integrate_finite(f, b, a, tol / 8, opts.max_subdivisions);
      total.value += r.value;
      total.error += r.error;
      total.evaluations += r.evaluations;
      const double panel = std::abs(r.value);
      quiet = (panel < tol / 100) ? quiet + 1 : 0;
      if (quiet >= 2) {
        total.error += panel;
        return;
      }
      edge = b;
      width *= 1.5;
    }
    std::ostringstream msg;
    msg << "integrate: tail walk did not settle from edge " << edge;
    throw NonConvergence(msg.str());
  };
  if (!std::isfinite(support.hi)) walk(core_hi, +1.0);
  if (!std::isfinite(support.lo)) walk(core_lo, -1.0);

  if (!std::isfinite(total.value) || total.error > tol) {
    std::ostringstream msg;
    msg << "integrate: error estimate " << total.error << " exceeds tolerance " << tol;
    throw NonConvergence(msg.str());
  }
  return total;
}

}  // namespace expfam::harness
