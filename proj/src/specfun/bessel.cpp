#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "expfam/harness/quadrature.hpp"
#include "expfam/specfun.hpp"

namespace expfam::specfun {

namespace {

constexpr double kEps = 1e-16;
constexpr double kPi = std::numbers::pi;

// Power series for I_nu(x), returned as (log scale, mantissa) so that the
// caller can apply e^{-x} before exponentiating.
struct Scaled {
  double log_scale;
  double mantissa;
};

Scaled i_series(double nu, double x) {
  const double half = 0.5 * x;
  int sign = 1;
  // 1/Gamma(nu+1) vanishes at negative integers; start at the first k with
  // k+nu+1 > 0 in that case (integer nu was already folded to |nu|).
  const double lg = boost::math::lgamma(nu + 1.0, &sign);
  double log_t0 = nu * std::log(half) - lg;
  double term = static_cast<double>(sign);
  double sum = term;
  const double h2 = half * half;
  for (int k = 0; k < 100000; ++k) {
    term *= h2 / ((k + 1.0) * (k + 1.0 + nu));
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum) && k + 1.0 > half) break;
    if (std::abs(sum) > 1e200) {
      sum *= 1e-200;
      term *= 1e-200;
      log_t0 += 200.0 * std::numbers::ln10;
    }
  }
  return {log_t0, sum};
}

// Hankel asymptotic expansion, scaled by e^{-x}.
double i_asymptotic_scaled(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) >= last) break;  // expansion starts to diverge
    sum += term;
    last = std::abs(term);
    if (last < kEps * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

bool use_asymptotic(double nu, double x) { return x > std::max(40.0, nu * nu); }

double normalize_order(double nu) {
  // I_{-n} = I_n for integer n.
  if (nu < 0 && nu == std::floor(nu)) return -nu;
  return nu;
}

// Returns e^{x} K_nu(x) for nu >= 0 and, via the recurrence, also
// e^{x} K_{nu+1}(x). Temme series for x < 2, Steed's CF2 otherwise.
void k_scaled_pair(double nu, double x, double& k_nu, double& k_nu1) {
  const int nl = static_cast<int>(nu + 0.5);
  const double xmu = nu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  double rkmu, rk1;
  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * xmu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = xmu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    // 1/Gamma(1 +- mu) and the symmetric/antisymmetric combinations.
    const double gp = boost::math::tgamma1pm1(xmu);
    const double gm = boost::math::tgamma1pm1(-xmu);
    const double gampl = 1.0 / (1.0 + gp);
    const double gammi = 1.0 / (1.0 + gm);
    const double gam1 = xmu == 0.0 ? -std::numbers::egamma : (gp - gm) / (2.0 * xmu * (1.0 + gp) * (1.0 + gm));
    const double gam2 = 0.5 * (gammi + gampl);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 10000; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
      c *= d / i;
      p /= (i - xmu);
      q /= (i + xmu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    const double ex = std::exp(x);
    rkmu = sum * ex;
    rk1 = sum1 * xi2 * ex;
  } else {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - xmu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 100000; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    h = a1 * h;
    rkmu = std::sqrt(kPi / (2.0 * x)) / s;
    rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
  }
  for (int i = 1; i <= nl; ++i) {
    const double next = (xmu + i) * xi2 * rk1 + rkmu;
    rkmu = rk1;
    rk1 = next;
  }
  k_nu = rkmu;
  k_nu1 = rk1;
}

}  // namespace

double PolyCoeffs::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double bessel_i_scaled(double nu, double x) {
  if (x < 0 || std::isnan(x)) throw std::domain_error("bessel_i: x must be >= 0");
  nu = normalize_order(nu);
  if (x == 0.0) return nu == 0.0 ? 1.0 : (nu > 0 ? 0.0 : std::numeric_limits<double>::infinity());
  if (use_asymptotic(nu, x)) return i_asymptotic_scaled(nu, x);
  const Scaled s = i_series(nu, x);
  return s.mantissa * std::exp(s.log_scale - x);
}

double bessel_i(double nu, double x) {
  if (x < 0 || std::isnan(x)) throw std::domain_error("bessel_i: x must be >= 0");
  nu = normalize_order(nu);
  if (x == 0.0) return nu == 0.0 ? 1.0 : (nu > 0 ? 0.0 : std::numeric_limits<double>::infinity());
  double log_value;
  double mant;
  if (use_asymptotic(nu, x)) {
    mant = i_asymptotic_scaled(nu, x);
    log_value = x;
  } else {
    const Scaled s = i_series(nu, x);
    mant = s.mantissa;
    log_value = s.log_scale;
  }
  const double v = mant * std::exp(log_value);
  if (!std::isfinite(v)) throw std::overflow_error("bessel_i: result not representable");
  return v;
}

double bessel_k_scaled(double nu, double x) {
  if (!(x > 0)) throw std::domain_error("bessel_k: x must be > 0");
  double k0, k1;
  k_scaled_pair(std::abs(nu), x, k0, k1);
  return k0;
}

double bessel_k(double nu, double x) {
  if (!(x > 0)) throw std::domain_error("bessel_k: x must be > 0");
  double k0, k1;
  k_scaled_pair(std::abs(nu), x, k0, k1);
  return k0 * std::exp(-x);
}

double bessel_k_imag(double u, double a) {
  if (!(a > 0)) throw std::domain_error("bessel_k_imag: a must be > 0");
  // Work with e^{-a(cosh t - 1)} and restore e^{-a} at the end.
  constexpr double kUnderflow = 745.0;
  const double t_max = std::acosh(1.0 + kUnderflow / a);
  const double width = std::min(1.0, u != 0.0 ? kPi / std::abs(u) : 1.0);
  const int panels = std::max(1, static_cast<int>(std::ceil(t_max / width)));
  auto f = [u, a](double t) { return std::exp(-a * (std::cosh(t) - 1.0)) * std::cos(u * t); };
  const double tol = 1e-16 / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = t_max * i / panels;
    const double hi = t_max * (i + 1) / panels;
    sum += harness::integrate_finite(f, lo, hi, tol, 200).value;
  }
  return sum * std::exp(-a);
}

}  // namespace expfam::specfun
