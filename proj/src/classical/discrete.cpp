#include <cmath>
#include <stdexcept>

#include "expfam/classical.hpp"
#include "expfam/specfun.hpp"
#include "lazy_table.hpp"

namespace expfam::classical {

namespace {

struct PoissonParams {
  double L;     // lambda / sqrt(eps)
  double zeta;  // sqrt(eps) m / (1 + s)
  double log_norm;
};

PoissonParams poisson_params(double lambda, double eps, double m) {
  if (!(lambda > 0) || !(eps > 0)) throw std::domain_error("eps_poisson: lambda and eps must be positive");
  if (!(m > 0)) throw std::domain_error("eps_poisson: m must be positive");
  const double se = std::sqrt(eps);
  const double s = std::sqrt(1.0 + eps * m * m);
  return {lambda / se, se * m / (1.0 + s), -lambda / se * std::log(se * m + s)};
}

// d_n = c_n zeta^n with (n+1) c_{n+1} = 2L c_n + (n-1) c_{n-1}; c_0 = 1.
void fill_poisson(std::vector<double>& d, std::size_t n, const PoissonParams& p) {
  if (d.empty()) d.push_back(1.0);
  if (d.size() == 1 && n > 1) d.push_back(2.0 * p.L * p.zeta);
  while (d.size() < n) {
    const std::size_t k = d.size() - 1;
    const double kk = static_cast<double>(k);
    d.push_back((2.0 * p.L * p.zeta * d[k] + (kk - 1.0) * p.zeta * p.zeta * d[k - 1]) / (kk + 1.0));
  }
}

struct LatticeParams {
  double x;      // lambda / eps
  double s;      // sqrt(1 + eps m^2)
  double log_t;  // log(sqrt(eps) m + s)
  double step;   // sqrt(eps) / lambda
};

LatticeParams lattice_params(double lambda, double eps, double m) {
  if (!(lambda > 0) || !(eps > 0)) throw std::domain_error("eps_gauss_discrete: lambda and eps must be positive");
  const double se = std::sqrt(eps);
  const double s = std::sqrt(1.0 + eps * m * m);
  return {lambda / eps, s, std::log(se * m + s), se / lambda};
}

}  // namespace

double eps_poisson_mass(double lambda, double eps, double m, long n) {
  if (n < 0) return 0.0;
  const PoissonParams p = poisson_params(lambda, eps, m);
  std::vector<double> d;
  fill_poisson(d, static_cast<std::size_t>(n) + 1, p);
  return std::exp(p.log_norm) * d[static_cast<std::size_t>(n)];
}

double eps_poisson_mass_hypergeometric(double lambda, double eps, double m, int n) {
  const PoissonParams p = poisson_params(lambda, eps, m);
  // (L)_n / n! zeta^n 2F1(-n, -L; 1 - L - n; -1)
  double rising = 1.0;
  for (int k = 0; k < n; ++k) rising *= (p.L + k) / (k + 1.0) * p.zeta;
  return std::exp(p.log_norm) * rising * specfun::hyp2f1_terminating(n, -p.L, 1.0 - p.L - n, -1.0);
}

FamilyMember eps_poisson(double lambda, double eps, double m) {
  const PoissonParams p = poisson_params(lambda, eps, m);
  auto table = detail::make_table([p](std::vector<double>& d, std::size_t n) { fill_poisson(d, n, p); });
  const double norm = std::exp(p.log_norm);
  FamilyMember out;
  out.family = "eps-poisson";
  out.mean = m;
  out.lambda = lambda;
  out.dispersion = m * std::sqrt(1.0 + eps * m * m) / lambda;
  AtomSource src;
  src.atom = [=](long n) { return Atom{n / lambda, norm * table->at(static_cast<std::size_t>(n))}; };
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

double eps_gauss_discrete_mass(double lambda, double eps, double m, long j) {
  const LatticeParams p = lattice_params(lambda, eps, m);
  const double i_scaled = specfun::bessel_i_scaled(static_cast<double>(std::labs(j)), p.x);
  if (i_scaled == 0.0) return 0.0;
  return std::exp(std::log(i_scaled) + p.x * (1.0 - p.s) + static_cast<double>(j) * p.log_t);
}

FamilyMember eps_gauss_discrete(double lambda, double eps, double m) {
  const LatticeParams p = lattice_params(lambda, eps, m);
  FamilyMember out;
  out.family = "eps-gauss-discrete";
  out.mean = m;
  out.lambda = lambda;
  out.dispersion = p.s / lambda;
  AtomSource src;
  src.atom = [=](long j) { return Atom{j * p.step, eps_gauss_discrete_mass(lambda, eps, m, j)}; };
  src.start = static_cast<long>(std::round(m / p.step));
  src.index_of = [p](double u) -> std::optional<long> {
    const double j = std::round(u / p.step);
    if (std::abs(j * p.step - u) > 1e-9 * (1.0 + std::abs(u))) return std::nullopt;
    return static_cast<long>(j);
  };
  out.measure = Measure::from_series(std::move(src));
  return out;
}

std::map<long, double> eps_gauss_discrete_double_sum(double lambda, double eps, double m) {
  const LatticeParams p = lattice_params(lambda, eps, m);
  const double t = std::exp(p.log_t);
  const double rate = p.x * p.s;
  // Each Poisson(rate) level n is split binomially between steps +1 and -1.
  const double p_up = t / (2.0 * p.s);
  const double p_down = 1.0 / (2.0 * p.s * t);
  const long n_max = static_cast<long>(std::ceil(rate + 12.0 * std::sqrt(rate) + 40.0));
  std::map<long, double> sites;
  for (long n = 0; n <= n_max; ++n) {
    const double log_pois = -rate + n * std::log(rate) - std::lgamma(n + 1.0);
    for (long k = 0; k <= n; ++k) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                               k * std::log(p_up) + (n - k) * std::log(p_down);
      sites[2 * k - n] += std::exp(log_pois + log_binom);
    }
  }
  return sites;
}

}  // namespace expfam::classical
