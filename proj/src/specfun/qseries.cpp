#include <cmath>
#include <limits>
#include <stdexcept>

#include "expfam/specfun.hpp"

namespace expfam::specfun {

namespace {
constexpr double kTruncate = 1e-16;
constexpr int kMaxFactors = 100000;
}  // namespace

double q_pochhammer(double a, double q, int n) {
  if (n < 0) throw std::invalid_argument("q_pochhammer: n must be >= 0");
  double prod = 1.0;
  double aq = a;
  for (int k = 0; k < n; ++k) {
    prod *= 1.0 - aq;
    aq *= q;
  }
  return prod;
}

double q_pochhammer_inf(double a, double q) {
  if (!(std::abs(q) < 1.0)) throw std::domain_error("q_pochhammer_inf: |q| must be < 1");
  double prod = 1.0;
  double aq = a;
  for (int k = 0; k < kMaxFactors; ++k) {
    if (std::abs(aq) < kTruncate) break;
    prod *= 1.0 - aq;
    aq *= q;
  }
  return prod;
}

SignedLog log_q_pochhammer_inf(double a, double q) {
  if (!(std::abs(q) < 1.0)) throw std::domain_error("log_q_pochhammer_inf: |q| must be < 1");
  double log_abs = 0.0;
  int sign = 1;
  double aq = a;
  for (int k = 0; k < kMaxFactors; ++k) {
    if (std::abs(aq) < kTruncate) break;
    const double f = 1.0 - aq;
    if (f == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    if (f < 0) {
      sign = -sign;
      log_abs += std::log(-f);
    } else {
      log_abs += std::log1p(-aq);
    }
    aq *= q;
  }
  return {log_abs, sign};
}

double q_number(int n, double q) {
  if (n < 0) throw std::invalid_argument("q_number: n must be >= 0");
  double sum = 0.0;
  double qk = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += qk;
    qk *= q;
  }
  return sum;
}

double q_factorial(int n, double q) {
  if (n < 0) throw std::invalid_argument("q_factorial: n must be >= 0");
  double prod = 1.0;
  for (int k = 1; k <= n; ++k) prod *= q_number(k, q);
  return prod;
}

}  // namespace expfam::specfun
