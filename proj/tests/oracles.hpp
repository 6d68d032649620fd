#pragma once

// Reference computations that share no code with the library: boost
// quadrature and special functions, multiprecision finite differences and
// brute-force series manipulation.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

// 100 digits: a 10th difference at h = 1e-6 divides by 1e-60.
using Big = boost::multiprecision::cpp_bin_float_100;

inline double quad(const std::function<double(double)>& f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 8, 1e-14);
}

inline double quad_half_line(const std::function<double(double)>& f, double lo) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate([&](double t) { return f(lo + t); }, 1e-14);
}

inline double quad_line(const std::function<double(double)>& f) {
  return quad_half_line(f, 0.0) + quad_half_line([&](double t) { return f(-t); }, 0.0);
}

// Sum of f(lo..hi) partitioned into panels of width `step`.
inline double quad_panels(const std::function<double(double)>& f, double lo, double hi, double step) {
  double s = 0.0;
  // fixed 61-point Kronrod rule per panel; panels are short enough that the
  // smooth integrands used here are resolved to rounding
  for (double a = lo; a < hi; a += step)
    s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, std::min(hi, a + step), 0);
  return s;
}

// K_{iu}(a) from its defining integral, cut where e^{-a cosh t} < 1e-300.
inline double k_imag(double u, double a) {
  const double t_max = std::acosh(700.0 / a + 1.0);
  const double step = std::min(0.5, 0.5 / (1.0 + std::abs(u)));
  return quad_panels([&](double t) { return std::exp(-a * std::cosh(t)) * std::cos(u * t); }, 0.0, t_max, step);
}

// k-th derivative at x by a central difference in 100-digit arithmetic.
inline double derivative(const std::function<Big(const Big&)>& f, double x, int k, double h = 1e-6) {
  Big sum = 0;
  Big binom = 1;
  const Big hh(h);
  for (int j = 0; j <= k; ++j) {
    const Big pt = Big(x) + (Big(k) / 2 - j) * hh;
    sum += ((j % 2) ? -binom : binom) * f(pt);
    binom = binom * (k - j) / (j + 1);
  }
  return static_cast<double>(sum / pow(hh, k));
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

// Power-series helpers on truncated coefficient vectors.
template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b, std::size_t order) {
  std::vector<T> c(order + 1, T(0));
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Compositional inverse of g(x) = x + g_2 x^2 + ... by fixed-point iteration
// h <- x - (g(h) - h), one order per sweep.
template <class T>
std::vector<T> revert(const std::vector<T>& g, std::size_t order) {
  std::vector<T> h(order + 1, T(0));
  if (order >= 1) h[1] = T(1);
  for (std::size_t sweep = 0; sweep < order; ++sweep) {
    std::vector<T> gh(order + 1, T(0));
    std::vector<T> p(order + 1, T(0));
    p[0] = T(1);
    for (std::size_t k = 1; k < g.size() && k <= order; ++k) {
      p = mul(p, h, order);
      for (std::size_t i = 0; i <= order; ++i) gh[i] += g[k] * p[i];
    }
    std::vector<T> next(order + 1, T(0));
    for (std::size_t i = 0; i <= order; ++i) next[i] = h[i] - (gh[i] - (i == 1 ? T(1) : T(0)));
    h = next;
  }
  return h;
}

// \int_lo^hi f(u) du with u = c + r cos(theta); smooths square-root edges.
inline double quad_cosine(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  return quad([&](double t) { return f(c + r * std::cos(t)) * r * std::sin(t); }, 0.0, 3.14159265358979323846);
}

// Free cumulants k_1..k_N of the law whose R-transform R(z) = sum k_n z^{n-1}
// satisfies R(m / V(m)) = m: R is the compositional inverse of m / V(m).
template <class T>
std::vector<T> cumulants_by_reversion(const std::vector<T>& v, std::size_t N) {
  std::vector<T> inv(N + 1, T(0));
  inv[0] = T(1) / v[0];
  for (std::size_t n = 1; n <= N; ++n) {
    T s = 0;
    for (std::size_t j = 1; j <= n && j < v.size(); ++j) s += v[j] * inv[n - j];
    inv[n] = -s / v[0];
  }
  // g(m) = c m + ...; revert g / c, then g^{-1}(z) = (g/c)^{-1}(z / c).
  const T c = inv[0];
  std::vector<T> g(N + 1, T(0));
  for (std::size_t n = 1; n <= N; ++n) g[n] = inv[n - 1] / c;
  const auto h = revert(g, N);
  std::vector<T> k(N, T(0));
  T cp = 1;
  for (std::size_t n = 1; n <= N; ++n) {
    k[n - 1] = h[n - 1] / cp;
    cp *= c;
  }
  return k;
}

}  // namespace oracle
