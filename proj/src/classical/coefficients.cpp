#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "expfam/classical.hpp"
#include "expfam/specfun.hpp"
#include "lazy_table.hpp"

namespace expfam::classical {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// Hermite values H_k(y) (Minus) or the conjugate H~_k(y) = i^{-k} H_k(iy)
// (Plus), k = 0..n.
std::vector<Real> hermite_values(int n, const Real& y, RationalSign sign) {
  std::vector<Real> h(static_cast<std::size_t>(n) + 1);
  h[0] = 1;
  if (n >= 1) h[1] = 2 * y;
  const int back = sign == RationalSign::Minus ? -2 : 2;
  for (int k = 1; k < n; ++k) h[k + 1] = 2 * y * h[k] + back * k * h[k - 1];
  return h;
}

// Exact zeros (e.g. phi_2 at lambda = 1 for Plus) survive the alternating sum
// only as rounding residue; anything below the cancellation floor is zero.
Real snap_zero(const Real& sum, const Real& scale) {
  return abs(sum) <= scale * Real("1e-40") ? Real(0) : sum;
}

// Minus: e^{-3l/8} / (2^n e^{n/2} n!) sum_{k<n} C(n-1,k) n^{n-1-k} a^{(k+1)/2} H_{k+1}(sqrt a)
// Plus:  e^{l/2} / (2^{n+1} n!) sum_{k<=n} C(n,k) (-n)^{n-k} a^{(k-1)/2} H~_{k+1}(sqrt a)
// with a = l/2.
std::vector<double> phi_table(double lambda, int n_max, RationalSign sign) {
  if (!(lambda > 0)) throw std::domain_error("rational_phi: lambda must be positive");
  if (n_max < 0) return {};
  const Real a = Real(lambda) / 2;
  const Real y = sqrt(a);
  const std::vector<Real> h = hermite_values(n_max + 2, y, sign);
  std::vector<Real> a_pow(static_cast<std::size_t>(n_max) + 3);  // a^{j/2}
  a_pow[0] = 1;
  for (std::size_t j = 1; j < a_pow.size(); ++j) a_pow[j] = a_pow[j - 1] * y;
  const Real e_half = exp(Real(0.5));
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  if (sign == RationalSign::Minus) {
    const Real pre = exp(Real(-3) * lambda / 8);
    out[0] = static_cast<double>(pre);
    Real denom = 1;  // 2^n e^{n/2} n!
    for (int n = 1; n <= n_max; ++n) {
      denom *= 2 * e_half * n;
      Real sum = 0, scale = 0;
      Real binom = 1;
      for (int k = 0; k <= n - 1; ++k) {
        const Real term = binom * pow(Real(n), n - 1 - k) * a_pow[k + 1] * h[k + 1];
        sum += term;
        scale += abs(term);
        binom = binom * (n - 1 - k) / (k + 1);
      }
      out[n] = static_cast<double>(pre * snap_zero(sum, scale) / denom);
    }
  } else {
    const Real pre = exp(Real(lambda) / 2);
    Real denom = 2;  // 2^{n+1} n!
    for (int n = 0; n <= n_max; ++n) {
      if (n > 0) denom *= 2 * n;
      Real sum = 0, scale = 0;
      Real binom = 1;
      for (int k = 0; k <= n; ++k) {
        // a^{(k-1)/2} H~_{k+1}: at k = 0 this is H~_1(y)/y = 2.
        const Real lead = k == 0 ? Real(2) : a_pow[k - 1] * h[k + 1];
        const Real npow = (n - k == 0) ? Real(1) : pow(Real(-n), n - k);
        const Real term = binom * npow * lead;
        sum += term;
        scale += abs(term);
        binom = binom * (n - k) / (k + 1);
      }
      out[n] = static_cast<double>(pre * snap_zero(sum, scale) / denom);
    }
  }
  return out;
}

struct RationalMinusParams {
  double log_xi;   // log(2 sqrt(e) m e^{-m})
  double log_pre;  // -lambda eta(m), eta = m - m^2/2 - 3/8
};

RationalMinusParams rational_minus_params(double lambda, double m) {
  if (!(lambda > 0)) throw std::domain_error("rational_minus_family: lambda must be positive");
  if (!(m > 0 && m < 1)) throw std::domain_error("rational_minus_family: m must lie in (0, 1)");
  return {std::log(2.0 * std::sqrt(std::numbers::e) * m) - m, -lambda * (m - 0.5 * m * m - 0.375)};
}

}  // namespace

std::vector<double> rational_phi_table(double lambda, int n_max, RationalSign sign) {
  return phi_table(lambda, n_max, sign);
}

double rational_phi(double lambda, int n, RationalSign sign) {
  if (n < 0) throw std::invalid_argument("rational_phi: n must be >= 0");
  return phi_table(lambda, n, sign).back();
}

double rational_minus_mass(double lambda, double m, long n) {
  const RationalMinusParams p = rational_minus_params(lambda, m);
  const double phi = rational_phi(lambda, static_cast<int>(n), RationalSign::Minus);
  return phi * std::exp(p.log_pre + n * p.log_xi);
}

FamilyMember rational_minus_family(double lambda, double m) {
  const RationalMinusParams p = rational_minus_params(lambda, m);
  auto table = detail::make_table([lambda](std::vector<double>& v, std::size_t n) {
    v = phi_table(lambda, static_cast<int>(n) - 1, RationalSign::Minus);
  });
  FamilyMember out;
  out.family = "rational-minus";
  out.mean = m;
  out.lambda = lambda;
  out.dispersion = m / (lambda * (1.0 - m));
  AtomSource src;
  src.atom = [=](long n) {
    return Atom{n / lambda, table->at(static_cast<std::size_t>(n)) * std::exp(p.log_pre + n * p.log_xi)};
  };
  src.first = 0;
  src.start = static_cast<long>(std::floor(m * lambda));
  src.index_of = [lambda](double u) -> std::optional<long> {
    const double n = std::round(u * lambda);
    if (n < 0 || std::abs(n - u * lambda) > 1e-9 * (1.0 + n)) return std::nullopt;
    return static_cast<long>(n);
  };
  out.measure = Measure::from_series(std::move(src));
  return out;
}

double sqrt_family_phi(double lambda, int n) {
  if (!(lambda > 0)) throw std::domain_error("sqrt_family_phi: lambda must be positive");
  if (n < 0) throw std::invalid_argument("sqrt_family_phi: n must be >= 0");
  const double c = (std::numbers::sqrt2 - 1.0) * (std::numbers::sqrt2 - 1.0);
  return std::exp(lambda * (std::numbers::sqrt2 - 2.0)) * std::pow(-c, n) *
         specfun::laguerre_value(n, -1.0, 4.0 * lambda);
}

int first_negative_phi(const std::function<double(int)>& phi, int n_max) {
  for (int n = 0; n <= n_max; ++n)
    if (phi(n) < 0) return n;
  return -1;
}

}  // namespace expfam::classical
