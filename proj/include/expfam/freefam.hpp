#pragma once

// Free exponential families: free-Meixner laws, their Cauchy transform,
// the free weight V(m) / (V(m) + m(m - u)), and free cumulants.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "expfam/classical.hpp"
#include "expfam/core/measure.hpp"
#include "expfam/core/variance.hpp"

namespace expfam::freefam {

using Rational = boost::multiprecision::cpp_rational;

struct FreeMeixnerLaw {
  double a = 0.0;
  double b = 0.0;
  Interval ac_support{-2.0, 2.0};
  std::vector<Atom> atoms;  // at most two, masses >= 0

  double density(double u) const;
  /// The law as a Measure (density handled with a cosine substitution).
  Measure measure() const;
};

/// Throws std::domain_error for b <= -1. Atom masses are clamped at 0.
FreeMeixnerLaw free_meixner(double a, double b);

/// G(z) = \int mu(du) / (z - u) in closed form, for real z off the support
/// and away from the poles 1 + a z + b z^2 = 0.
double cauchy_transform(double a, double b, double z);

/// |G(m + V(m)/m) - m / V(m)| for quadratic V = 1 + a m + b m^2.
double g2v_residual(const VarianceSpec& V, double m);

/// V(m) / (V(m) + m (m - u)); std::domain_error when the denominator is <= 0.
double free_weight(const VarianceSpec& V, double m, double u);

/// k_1..k_N with k_1 = 0 and k_{n+1} = [t^{n-1}] V(t)^n / n.
template <class T>
std::vector<T> free_cumulants_series(const std::vector<T>& v, std::size_t N) {
  if (v.empty()) throw std::invalid_argument("free_cumulants: empty series");
  if (N >= 2 && v.size() < N - 1) throw std::invalid_argument("free_cumulants: series order too low for N");
  std::vector<T> k(N, T(0));
  if (N == 0) return k;
  std::vector<T> power(N, T(0));
  power[0] = T(1);
  for (std::size_t n = 1; n + 1 <= N; ++n) {
    power = classical::series_mul(power, v, N - 1);
    k[n] = power[n - 1] / T(static_cast<long>(n));
  }
  return k;
}

struct FreeCumulantSeq {
  std::vector<Rational> exact;  // exact[n-1] = k_n
  double k(int n) const;
  std::size_t size() const { return exact.size(); }
};

/// Cumulants of the centered law generating the free family of V. Double
/// coefficients are converted exactly to rationals before the series work.
FreeCumulantSeq free_cumulants(const VarianceSpec& V, std::size_t N);
FreeCumulantSeq free_cumulants(const std::vector<Rational>& v, std::size_t N);

/// V with variance V(m) / lambda; lambda < 1 is rejected.
VarianceSpec free_power(const VarianceSpec& V, double lambda);

/// Free family member V(m)/(V(m)+m(m-u)) mu(du) for V = 1 + a m + b m^2.
FamilyMember free_family_member(double a, double b, double m);

}  // namespace expfam::freefam
