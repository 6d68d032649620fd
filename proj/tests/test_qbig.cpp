#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "expfam/qbig.hpp"
#include "oracles.hpp"

using namespace expfam;
using namespace expfam::qbig;

namespace {

// |D w - w (u - m) / V| / (1 + |w|) for the q-derivative in m.
double q_ode_residual(const std::function<double(double)>& w, double q, double m, double u, double V) {
  const double lhs = (w(m) - w(q * m)) / ((1 - q) * m);
  return std::abs(lhs - w(m) * (u - m) / V) / (1 + std::abs(w(m)));
}

// Same with the Hahn-shifted derivative about 1.
double hahn_ode_residual(const std::function<double(double)>& w, double q, double m, double u, double V) {
  const double lhs = (w(m) - w(q * m + 1 - q)) / ((1 - q) * (m - 1));
  return std::abs(lhs - w(m) * (u - m) / V) / (1 + std::abs(w(m)));
}

double continuous_integral(const PParams& pp, double m, int power) {
  return oracle::quad_half_line([&](double u) { return std::pow(u, power) * q_laguerre_continuous(pp, m, u); }, 0.0);
}

}  // namespace

TEST_CASE("hahn_derivative") {
  CHECK(hahn_derivative([](double) { return 1.0; }, 0.5, 1.0, 2.0) == 0.0);
  CHECK(hahn_derivative([](double x) { return x; }, 0.5, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hahn_derivative([](double x) { return x * x; }, 0.5, 1.0, 2.0) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(hahn_derivative([](double x) { return x * x; }, 2.0, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK_THROWS_AS(hahn_derivative([](double x) { return x; }, 0.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("PParams") {
  const PParams pp{0.5, 1.0};
  CHECK(pp.lambda_q() == doctest::Approx(0.5));
  CHECK(pp.lambda_1() == doctest::Approx(0.5));
  CHECK(PParams{0.999999, 2.0}.lambda_q() == doctest::Approx(2.0).epsilon(1e-5));
  CHECK_THROWS(PParams{1.5, 1.0}.validate());
  CHECK_THROWS(PParams{0.5, -1.0}.validate());
}

TEST_CASE("q-Laguerre continuous: equation, mass and variance") {
  const PParams pp{0.5, 1.0};
  const auto w = [&](double u) { return [&, u](double m) { return q_laguerre_continuous(pp, m, u); }; };
  CHECK(q_ode_residual(w(2.0), 2.0, 1.0, 2.0, 1.0 / pp.lambda_q()) < 1e-10);
  for (auto [p, lam] : {std::pair{0.5, 1.0}, {0.5, 1.5}, {0.3, 2.5}, {0.7, 0.6}}) {
    const PParams q{p, lam};
    for (double m : {0.5, 1.0, 2.0}) {
      INFO("p=" << p << " lambda=" << lam << " m=" << m);
      const double mass = continuous_integral(q, m, 0);
      const double mean = continuous_integral(q, m, 1);
      const double var = continuous_integral(q, m, 2) - mean * mean;
      CHECK(std::abs(mass - 1.0) < 1e-6);
      CHECK(std::abs(mean - m) < 1e-6 * m);
      CHECK(std::abs(var - m * m / q.lambda_q()) < 1e-5 * m * m);
      for (double u : {0.3, 1.0, 4.0}) {
        const auto wu = [&](double mm) { return q_laguerre_continuous(q, mm, u); };
        CHECK(q_ode_residual(wu, 1.0 / p, m, u, m * m / q.lambda_q()) < 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(q_laguerre_continuous(pp, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(q_laguerre_continuous(pp, 1.0, 0.0), std::domain_error);
}

TEST_CASE("q-Laguerre continuous: integer lambda is the limit of nearby lambda") {
  for (double lam : {1.0, 2.0, 3.0}) {
    const PParams at{0.5, lam}, lo{0.5, lam - 1e-6}, hi{0.5, lam + 1e-6};
    for (double u : {0.2, 1.0, 3.0}) {
      const double mid = 0.5 * (q_laguerre_continuous(lo, 1.0, u) + q_laguerre_continuous(hi, 1.0, u));
      CHECK(oracle::rel_err(q_laguerre_continuous(at, 1.0, u), mid) < 1e-8);
    }
    CHECK(std::abs(continuous_integral(at, 1.3, 0) - 1.0) < 1e-6);
  }
}

TEST_CASE("q-Laguerre discrete: mass, mean, shared variance and equation") {
  for (auto [p, lam] : {std::pair{0.5, 1.0}, {0.5, 1.5}, {0.4, 2.0}}) {
    const PParams pp{p, lam};
    for (double m : {0.5, 1.0, 2.0}) {
      INFO("p=" << p << " lambda=" << lam << " m=" << m);
      const auto fm = q_laguerre_discrete(pp, m);
      const auto r = moments(fm.measure, m);
      CHECK(std::abs(r.mass - 1.0) < 1e-8);
      CHECK(std::abs(r.mean - m) < 1e-7);
      CHECK(std::abs(r.variance - m * m / pp.lambda_q()) < 1e-7);
      // the reference measure does not depend on m, so each atom mass obeys
      // the same equation as the continuous density at u = p^k
      for (long k = -3; k <= 3; ++k) {
        const double u = std::pow(p, static_cast<double>(k));
        const auto wd = [&](double mm) { return q_laguerre_discrete_mass(pp, mm, k); };
        const auto wc = [&](double mm) { return q_laguerre_continuous(pp, mm, u); };
        CHECK(q_ode_residual(wd, 1.0 / p, m, u, m * m / pp.lambda_q()) < 1e-10);
        CHECK(q_ode_residual(wc, 1.0 / p, m, u, m * m / pp.lambda_q()) < 1e-10);
      }
    }
  }
}

TEST_CASE("q = infinity construction") {
  for (double lam : {1.0, 2.5}) {
    const auto two = two_point_generator(lam);
    const auto semi = semicircle_generator(lam);
    const auto c0 = moments(two, 0.0);
    CHECK(c0.mass == doctest::Approx(1.0));
    CHECK(c0.variance == doctest::Approx(1.0 / lam));
    const auto s0 = moments(semi, 0.0);
    CHECK(std::abs(s0.mass - 1.0) < 1e-10);
    CHECK(std::abs(s0.variance - 1.0 / lam) < 1e-10);

    const auto at0 = moments(q_infinity_family(two, lam, 0.0).measure, 0.0);
    CHECK(at0.mass == doctest::Approx(c0.mass));
    CHECK(at0.variance == doctest::Approx(c0.variance));

    for (double m : {-0.4, 0.2, 0.5}) {
      const double mm = m / std::sqrt(lam);
      const auto a = moments(q_infinity_family(two, lam, mm).measure, mm);
      const auto b = moments(q_infinity_family(semi, lam, mm).measure, mm);
      const double v = q_infinity_variance(lam, 0.0, mm);
      CHECK(v == doctest::Approx(1 - lam * mm * mm));
      for (const auto& r : {a, b}) {
        CHECK(std::abs(r.mass - 1.0) < 1e-8);
        CHECK(std::abs(r.mean - mm) < 1e-8);
        CHECK(std::abs(r.variance - v / lam) < 1e-8);
      }
      CHECK(std::abs(a.variance - b.variance) < 1e-8);
    }
  }
  // an asymmetric generator picks up the T3 term: atoms at -1 and 2 with
  // masses 2/3 and 1/3 have mean 0, variance 2 and third moment 2
  const Measure skew = Measure::from_atoms({{-1.0, 2.0 / 3.0}, {2.0, 1.0 / 3.0}});
  const double lam = 0.5;
  for (double m : {-0.5, 0.3}) {
    const auto r = moments(q_infinity_family(skew, lam, m).measure, m);
    CHECK(std::abs(r.variance - q_infinity_variance(lam, 2.0, m) / lam) < 1e-12);
  }
  CHECK_THROWS_AS(q_infinity_family(two_point_generator(1.0), 1.0, 1.5), std::domain_error);
}

TEST_CASE("Wall family") {
  const double q = 0.5, m = 0.5;
  double total = 0.0;
  for (long n = 0; n < 80; ++n) total += wall_mass(q, m, n);
  CHECK(std::abs(total - 1.0) < 1e-10);
  for (double qq : {0.3, 0.5, 0.8})
    for (double mm : {0.1, 0.5, 0.9}) {
      INFO("q=" << qq << " m=" << mm);
      const auto r = moments(wall_family(qq, mm).measure, mm);
      const double V = mm * (1 - mm) * (1 - qq);
      CHECK(std::abs(r.mass - 1.0) < 1e-10);
      CHECK(std::abs(r.mean - mm) < 1e-10);
      CHECK(std::abs(r.variance - V) < 1e-8);
      for (long n : {0L, 1L, 3L, 6L}) {
        const double u = std::pow(qq, static_cast<double>(n));
        CHECK(hahn_ode_residual([&](double x) { return wall_weight(qq, x, u); }, qq, mm, u, V) < 1e-10);
      }
    }
  double prev = 0.0;
  for (double qq : {0.5, 0.2, 0.05, 0.01, 0.001}) {
    const double at_one = wall_mass(qq, 0.7, 0);
    CHECK(at_one > prev);
    prev = at_one;
  }
  CHECK(prev == doctest::Approx(0.7).epsilon(1e-3));
  CHECK_THROWS_AS(wall_family(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(wall_family(0.5, 1.2), std::domain_error);
}

TEST_CASE("Al-Salam-Carlitz family") {
  const double p = 0.5;
  double total = 0.0;
  for (long n = 0; n < 40; ++n) total += al_salam_carlitz_mass(p, 1.5, n);
  CHECK(std::abs(total - 1.0) < 1e-8);
  for (auto [pp, mm] : {std::pair{0.5, 1.5}, {0.5, 2.5}, {0.3, 1.8}, {0.7, 1.2}}) {
    INFO("p=" << pp << " m=" << mm);
    const auto r = moments(al_salam_carlitz_family(pp, mm).measure, mm);
    const double V = (1 - pp) * (mm - 1) / pp;
    CHECK(std::abs(r.mass - 1.0) < 1e-8);
    CHECK(std::abs(r.mean - mm) < 1e-8);
    CHECK(std::abs(r.variance - V) < 1e-6);
    for (long n : {0L, 1L, 2L, 4L}) {
      const double u = std::pow(pp, -static_cast<double>(n));
      CHECK(hahn_ode_residual([&](double x) { return al_salam_carlitz_weight(pp, x, u); }, 1.0 / pp, mm, u, V) <
            1e-10);
    }
  }
  CHECK_THROWS_AS(al_salam_carlitz_family(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(al_salam_carlitz_family(0.5, 0.5), std::domain_error);
}
