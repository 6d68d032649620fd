#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with global bisection, plus an
// outward panel walk for unbounded supports.

#include <functional>
#include <vector>

namespace expfam::harness {

struct Interval {
  double lo;
  double hi;

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool bounded() const;
};

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate plus tail bound
  int evaluations = 0;
};

struct IntegrateOptions {
  // Location and width of the bulk of the integrand; used to seed panels and
  // to size the core interval on unbounded supports.
  double center = 0.0;
  double scale = 1.0;
  // Half-width of the core interval, in units of `scale`.
  double core_halfwidth = 20.0;
  // Extra points at which the integrand is known to be non-smooth.
  std::vector<double> breakpoints;
  int max_subdivisions = 4000;
};

/// Integrates `f` over `support` to absolute tolerance `tol`. On unbounded
/// sides the core interval is followed by geometrically widening panels;
/// the walk stops once two consecutive panels fall below tol/100, and the
/// last panel is added to the error as the tail bound. Throws
/// NonConvergence when the error cannot be brought below tol.
IntegrationResult integrate(const std::function<double(double)>& f, Interval support, double tol,
                            const IntegrateOptions& opts = {});

/// Adaptive Gauss-Kronrod on a finite interval, without the tail walk. Does
/// not throw: a result with error > tol means the cap was hit.
IntegrationResult integrate_finite(const std::function<double(double)>& f, double lo, double hi,
                                   double tol, int max_subdivisions = 4000);

}  // namespace expfam::harness
