#include "expfam/qfam.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "expfam/specfun.hpp"

namespace expfam::qfam {

void QExpParams::validate() const {
  if (!(std::abs(q) < 1.0)) throw InvariantViolation("q must satisfy |q| < 1");
  for (int n = 1; n <= 200; ++n) {
    const double qn = specfun::q_number(n, q);
    if (qn != 0.0 && std::abs(b + 1.0 / qn) <= 1e-14 * std::abs(b)) {
      std::ostringstream msg;
      msg << "b = -1/[" << n << "]_q gives an orthogonality measure on " << n + 1
          << " points; that degenerate case is not implemented";
      throw DegenerateMeasure(msg.str());
    }
  }
  if (!(b > -1.0 + std::max(q, 0.0))) {
    std::ostringstream msg;
    msg << "b = " << b << " must exceed -1 + max(q, 0) = " << -1.0 + std::max(q, 0.0);
    throw InvariantViolation(msg.str());
  }
}

double q_derivative(const std::function<double(double)>& f, double q, double x) {
  if (x == 0.0) throw std::domain_error("q_derivative: x must be nonzero");
  return (f(x) - f(q * x)) / (x - q * x);
}

double q_weight(const QExpParams& p, double m, double u) {
  double prod = 1.0;
  double qk = 1.0;
  for (int k = 0; k < 100000; ++k) {
    const double mq = m * qk;
    const double num = 1.0 + p.a * mq + p.b * mq * mq;
    const double den = 1.0 + (p.a - (1.0 - p.q) * u) * mq + (p.b + 1.0 - p.q) * mq * mq;
    if (!(den > 0)) {
      std::ostringstream msg;
      msg << "q_weight: denominator factor " << k << " is not positive at m=" << m << ", u=" << u;
      throw std::domain_error(msg.str());
    }
    const double f = num / den;
    prod *= f;
    if (std::abs(f - 1.0) < 1e-17 || mq == 0.0) break;
    qk *= p.q;
  }
  return prod;
}

double OrthoPolySystem::evaluate(int n, double x) const {
  if (n < 0 || n > depth()) throw std::invalid_argument("OrthoPolySystem::evaluate: n out of range");
  double prev = 0.0, cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = (x - alpha[k]) * cur - (k > 0 ? beta[k] * prev : 0.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

AscSystem asc_system(const QExpParams& p, int N) {
  p.validate();
  if (N < 0) throw std::invalid_argument("asc_system: N must be >= 0");
  AscSystem out;
  out.poly.alpha.resize(static_cast<std::size_t>(N) + 1);
  out.poly.beta.resize(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    const double qn = specfun::q_number(n, p.q);
    out.poly.alpha[n] = p.a * qn;
    out.poly.beta[n] = n == 0 ? 0.0 : (1.0 + p.b * specfun::q_number(n - 1, p.q)) * qn;
    if (out.poly.beta[n] < 0) throw InvariantViolation("asc_system: negative recurrence coefficient");
  }
  const double s = std::sqrt(p.b + 1.0 - p.q);
  const double r = std::sqrt(1.0 - p.q);
  out.standardized = {s / r, p.a / (1.0 - p.q), -p.a / (r * s), p.b / (p.b + 1.0 - p.q)};
  return out;
}

double moments_from_jacobi(const OrthoPolySystem& sys, int n) {
  if (n < 0) throw std::invalid_argument("moments_from_jacobi: n must be >= 0");
  const int need = n / 2 + 1;
  if (sys.depth() < need) throw std::invalid_argument("moments_from_jacobi: recurrence too shallow");
  // Propagate v = J^k e_0 with the symmetric Jacobi matrix, truncated to
  // `need` rows (deeper rows cannot return to row 0 in n steps).
  std::vector<double> v(static_cast<std::size_t>(need), 0.0), w(v.size());
  v[0] = 1.0;
  for (int step = 0; step < n; ++step) {
    for (int i = 0; i < need; ++i) {
      double acc = sys.alpha[i] * v[i];
      if (i > 0) acc += std::sqrt(sys.beta[i]) * v[i - 1];
      if (i + 1 < need) acc += std::sqrt(sys.beta[i + 1]) * v[i + 1];
      w[i] = acc;
    }
    std::swap(v, w);
  }
  return v[0];
}

double generating_check(const QExpParams& p, double m, double u, int N) {
  const AscSystem sys = asc_system(p, N);
  double sum = 0.0;
  double mp = 1.0;
  for (int n = 0; n <= N; ++n) {
    sum += mp * sys.poly.evaluate(n, u) / specfun::q_factorial(n, p.q);
    mp *= m;
  }
  return std::abs(q_weight(p, m, u) - sum);
}

std::pair<double, double> support_interval(const QExpParams& p) {
  if (!(p.b + 1.0 - p.q > 0)) throw InvariantViolation("support_interval: b + 1 - q must be positive");
  const double c = p.a / (1.0 - p.q);
  const double r = 2.0 * std::sqrt(p.b + 1.0 - p.q) / (1.0 - p.q);
  return {c - r, c + r};
}

GaussRule gauss_rule(const OrthoPolySystem& sys, int K) {
  if (K < 1 || K > sys.depth()) throw std::invalid_argument("gauss_rule: K out of range");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < K; ++i) {
    J(i, i) = sys.alpha[i];
    if (i + 1 < K) J(i, i + 1) = J(i + 1, i) = std::sqrt(sys.beta[i + 1]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule out;
  out.nodes.resize(K);
  out.weights.resize(K);
  for (int i = 0; i < K; ++i) {
    out.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    out.weights[i] = v0 * v0;
  }
  return out;
}

namespace {

bool denominators_positive(const QExpParams& p, double m, const std::vector<double>& us) {
  for (double u : us) {
    double qk = 1.0;
    for (int k = 0; k < 100000; ++k) {
      const double mq = m * qk;
      if (!(1.0 + (p.a - (1.0 - p.q) * u) * mq + (p.b + 1.0 - p.q) * mq * mq > 0)) return false;
      if (std::abs(mq) < 1e-17) break;
      qk *= p.q;
    }
  }
  return true;
}

double bisect_edge(const QExpParams& p, const std::vector<double>& us, double dir) {
  constexpr double kCap = 1e6;
  double good = 0.0;
  double bad = dir;
  while (denominators_positive(p, bad, us)) {
    good = bad;
    bad *= 2.0;
    if (std::abs(bad) > kCap) return dir * INFINITY;
  }
  for (int i = 0; i < 200 && std::abs(bad - good) > 1e-14 * std::abs(bad); ++i) {
    const double mid = 0.5 * (good + bad);
    (denominators_positive(p, mid, us) ? good : bad) = mid;
  }
  return good;
}

}  // namespace

std::pair<double, double> admissible_mean_interval(const QExpParams& p, int K) {
  const AscSystem sys = asc_system(p, K);
  const GaussRule g = gauss_rule(sys.poly, K);
  const auto [lo, hi] = support_interval(p);
  std::vector<double> us{lo, hi, g.nodes.front(), g.nodes.back()};
  return {bisect_edge(p, us, -1.0), bisect_edge(p, us, 1.0)};
}

FamilyMember q_family_member(const QExpParams& p, double m, int K) {
  const AscSystem sys = asc_system(p, K);
  const GaussRule g = gauss_rule(sys.poly, K);
  std::vector<Atom> atoms;
  atoms.reserve(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    atoms.push_back({g.nodes[i], g.weights[i] * q_weight(p, m, g.nodes[i])});
  FamilyMember out;
  out.family = "q-exponential";
  out.mean = m;
  out.dispersion = p.variance(m);
  out.measure = Measure::from_atoms(std::move(atoms));
  out.metadata["q"] = p.q;
  out.metadata["gauss_nodes"] = K;
  return out;
}

}  // namespace expfam::qfam
