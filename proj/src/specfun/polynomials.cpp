#include <cmath>
#include <stdexcept>

#include "expfam/specfun.hpp"

namespace expfam::specfun {

namespace {

// Sets out = (x scale + shift) * p - back * prev on coefficient vectors.
std::vector<double> step(const std::vector<double>& p, const std::vector<double>& prev, double x_coeff,
                         double shift, double back) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += x_coeff * p[i];
    out[i] += shift * p[i];
  }
  for (std::size_t i = 0; i < prev.size(); ++i) out[i] -= back * prev[i];
  return out;
}

void trim(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

}  // namespace

PolyCoeffs hermite(int n) {
  if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
  std::vector<double> prev{1.0};
  if (n == 0) return {prev};
  std::vector<double> cur{0.0, 2.0};
  for (int k = 1; k < n; ++k) {
    auto next = step(cur, prev, 2.0, 0.0, 2.0 * k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {cur};
}

double hermite_value(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

PolyCoeffs laguerre(int n, double alpha) {
  if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
  std::vector<double> prev{1.0};
  if (n == 0) return {prev};
  std::vector<double> cur{1.0 + alpha, -1.0};
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
    const double inv = 1.0 / (k + 1.0);
    auto next = step(cur, prev, -inv, (2.0 * k + 1.0 + alpha) * inv, (k + alpha) * inv);
    prev = std::move(cur);
    cur = std::move(next);
  }
  trim(cur);
  return {cur};
}

double laguerre_value(int n, double alpha, double x) {
  if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hyp2f1_terminating(int n, double b, double c, double z) {
  if (n < 0) throw std::invalid_argument("hyp2f1_terminating: n must be >= 0");
  for (int j = 0; j < n; ++j)
    if (c == -static_cast<double>(j))
      throw std::domain_error("hyp2f1_terminating: c is a non-positive integer inside the sum");
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= (k - n) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
  }
  return sum;
}

}  // namespace expfam::specfun
