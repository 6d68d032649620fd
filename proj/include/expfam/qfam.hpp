#pragma once

// q-exponential families for |q| < 1 with quadratic variance 1 + a m + b m^2:
// the product weight, the Al-Salam-Chihara recurrence and its Jacobi matrix.

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "expfam/core/measure.hpp"
#include "expfam/errors.hpp"

namespace expfam::qfam {

struct QExpParams {
  double q = 0.0;
  double a = 0.0;
  double b = 0.0;

  double variance(double m) const { return 1.0 + a * m + b * m * m; }
  /// Throws DegenerateMeasure for b = -1/[N]_q, InvariantViolation unless
  /// |q| < 1 and b > -1 + max(q, 0).
  void validate() const;
};

/// b = -1/[N]_q: the orthogonality measure collapses to N + 1 points.
class DegenerateMeasure : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

/// (f(x) - f(qx)) / (x - qx); std::domain_error at x = 0.
double q_derivative(const std::function<double(double)>& f, double q, double x);

/// prod_k (1 + a m q^k + b m^2 q^{2k}) / (1 + (a - (1-q) u) m q^k + (b+1-q) m^2 q^{2k}).
/// std::domain_error when a denominator factor is <= 0.
double q_weight(const QExpParams& p, double m, double u);

/// Monic recurrence p_{n+1} = (x - alpha_n) p_n - beta_n p_{n-1}, rows 0..N.
struct OrthoPolySystem {
  std::vector<double> alpha;  // alpha[n], n = 0..N
  std::vector<double> beta;   // beta[n], n = 0..N; beta[0] = 0 by convention

  int depth() const { return static_cast<int>(alpha.size()); }
  /// p_n(x) for n < depth() + 1.
  double evaluate(int n, double x) const;
};

/// Rescaled recurrence parameters: p~_n(x) = alpha^{-n} p_n(alpha x + beta).
struct StandardizedParams {
  double alpha, beta, a_tilde, b_tilde;
};

struct AscSystem {
  OrthoPolySystem poly;
  StandardizedParams standardized;
};

/// alpha_n = a [n]_q, beta_n = (1 + b [n-1]_q) [n]_q for n <= N.
AscSystem asc_system(const QExpParams& p, int N);

/// (J^n)_{00}: the n-th moment of the orthogonality measure. Throws
/// std::invalid_argument if the system has fewer than n/2 + 1 rows.
double moments_from_jacobi(const OrthoPolySystem& sys, int n);

/// |q_weight(m, u) - sum_{n<=N} m^n p_n(u) / [n]_q!|.
double generating_check(const QExpParams& p, double m, double u, int N);

/// Absolutely continuous support (a - 2 sqrt(b+1-q), a + 2 sqrt(b+1-q)) / (1-q).
std::pair<double, double> support_interval(const QExpParams& p);

/// Gauss rule of the orthogonality measure from the K x K Jacobi matrix.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_rule(const OrthoPolySystem& sys, int K);

/// Largest interval around 0 of means m for which every product denominator
/// stays positive on the support and on the outermost Gauss nodes; found by
/// bisection on each side. A side is +-inf when the denominators stay
/// positive out to |m| = 1e6.
std::pair<double, double> admissible_mean_interval(const QExpParams& p, int K = 60);

/// w(m, u) mu(du) with mu discretized by its K-point Gauss rule.
FamilyMember q_family_member(const QExpParams& p, double m, int K = 60);

}  // namespace expfam::qfam
