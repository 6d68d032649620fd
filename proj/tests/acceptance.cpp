// Acceptance criteria: one PASS/FAIL line each, nonzero exit on any FAIL.
// argv[1] is the path of the expfam CLI (criterion 10).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "expfam/classical.hpp"
#include "expfam/freefam.hpp"
#include "expfam/harness/registry.hpp"
#include "expfam/harness/suite.hpp"
#include "expfam/qbig.hpp"
#include "expfam/qfam.hpp"
#include "expfam/specfun.hpp"
#include "oracles.hpp"

using namespace expfam;
using Rational = freefam::Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failing check and a running summary.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  Outcome done() const { return {pass_, pass_ ? notes_.str() : first_failure_}; }

 private:
  bool pass_ = true;
  std::string first_failure_;
  std::ostringstream notes_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const harness::ValidationReport& suite_report() {
  static const harness::ValidationReport report = [] {
    harness::GridSpec g = harness::default_grid();
    g.counterexamples.clear();
    return harness::run_suite(g);
  }();
  return report;
}

Outcome exact_plus_constant() {
  Check c;
  const double got = classical::rational_phi(1.0, 4, classical::RationalSign::Plus);
  const double want = -std::sqrt(std::numbers::e) / 64.0;
  const double rel = oracle::rel_err(got, want);
  c.require(rel < 1e-9, "phi_4(1) = " + fmt(got) + ", relative error " + fmt(rel));
  c.note("phi_4(1) relative error " + fmt(rel));
  return c.done();
}

Outcome exact_phi0() {
  Check c;
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    const double minus = classical::rational_phi(lam, 0, classical::RationalSign::Minus);
    const double sq = classical::sqrt_family_phi(lam, 0);
    const double e1 = oracle::rel_err(minus, std::exp(-3.0 * lam / 8.0));
    const double e2 = oracle::rel_err(sq, std::exp(lam * (std::sqrt(2.0) - 2.0)));
    worst = std::max({worst, e1, e2});
    c.require(e1 < 1e-12, "rational minus phi_0 at lambda " + fmt(lam) + " off by " + fmt(e1));
    c.require(e2 < 1e-12, "sqrt phi_0 at lambda " + fmt(lam) + " off by " + fmt(e2));
  }
  c.note("worst relative error " + fmt(worst));
  return c.done();
}

Outcome positivity_dichotomy() {
  Check c;
  for (double lam : {0.25, 1.0, 4.0}) {
    const auto t = classical::rational_phi_table(lam, 40, classical::RationalSign::Minus);
    const auto neg = std::find_if(t.begin(), t.end(), [](double x) { return x < 0.0; });
    c.require(neg == t.end(), "m/(1-m) coefficient negative at lambda " + fmt(lam));
  }
  const int n = classical::first_negative_phi([](int k) { return classical::sqrt_family_phi(1.0, k); }, 60);
  c.require(n >= 0, "no negative coefficient for m sqrt(1-m) up to n = 60");
  c.note("m/(1-m): all phi_n >= 0 for n <= 40");
  if (n >= 0) c.note("m sqrt(1-m): phi_" + std::to_string(n) + "(1) = " + fmt(classical::sqrt_family_phi(1.0, n)));
  return c.done();
}

Outcome moment_suite() {
  Check c;
  const std::set<std::string> required{"eps-gaussian",         "eps-gamma",           "eps-poisson",
                                       "eps-gauss-discrete",   "rational-minus",      "q-exponential",
                                       "free-meixner",         "q-laguerre-continuous", "q-laguerre-discrete",
                                       "wall",                 "al-salam-carlitz"};
  const auto& r = suite_report();
  std::set<std::string> seen;
  double worst_mass = 0.0, worst_mean = 0.0, worst_var = 0.0;
  std::size_t points = 0;
  for (const auto& f : r.families) {
    if (!f.probability) continue;
    seen.insert(f.id);
    c.require(f.points.size() == 5, f.id + ": m-grid has " + std::to_string(f.points.size()) + " points");
    for (const auto& p : f.points) {
      ++points;
      c.require(p.error.empty(), f.id + " at m = " + fmt(p.m) + ": " + p.error);
      c.require(p.mass_residual < 1e-6, f.id + " mass residual " + fmt(p.mass_residual));
      c.require(p.mean_residual < 1e-6, f.id + " mean residual " + fmt(p.mean_residual));
      c.require(p.variance_residual < 1e-5, f.id + " variance residual " + fmt(p.variance_residual));
      worst_mass = std::max(worst_mass, p.mass_residual);
      worst_mean = std::max(worst_mean, p.mean_residual);
      worst_var = std::max(worst_var, p.variance_residual);
    }
  }
  for (const auto& id : required) c.require(seen.count(id) == 1, "family missing from the suite: " + id);
  c.note(std::to_string(seen.size()) + " families, " + std::to_string(points) + " points");
  c.note("worst residuals " + fmt(worst_mass) + ", " + fmt(worst_mean) + ", " + fmt(worst_var));
  return c.done();
}

Outcome ode_suite() {
  Check c;
  const auto& r = suite_report();
  double worst = 0.0;
  std::size_t samples = 0;
  std::set<std::string> kinds;
  for (const auto& f : r.families) {
    if (f.ode_kind == "none") continue;
    kinds.insert(f.ode_kind);
    std::size_t fam_samples = 0;
    for (const auto& p : f.points)
      for (const auto& s : p.ode) {
        ++fam_samples;
        worst = std::max(worst, s.residual);
        c.require(s.residual < 1e-10,
                  f.id + " residual " + fmt(s.residual) + " at m = " + fmt(p.m) + ", u = " + fmt(s.u));
      }
    c.require(fam_samples > 0, f.id + ": no equation samples");
    samples += fam_samples;
  }
  for (const char* k : {"derivative", "q-derivative", "hahn"})
    c.require(kinds.count(k) == 1, std::string("no family checked with the ") + k + " operator");
  c.note(std::to_string(samples) + " samples, worst residual " + fmt(worst));
  return c.done();
}

Outcome free_coherence() {
  Check c;
  double worst_mass = 0.0;
  int regimes[3] = {0, 0, 0};  // laws with zero, one and two atoms
  for (double a : {-3.0, -1.5, -0.5, 0.0, 0.5, 1.5, 3.0})
    for (double b : {-0.9, -0.5, -0.2, 0.0, 0.3, 1.0, 2.0}) {
      const auto law = freefam::free_meixner(a, b);
      double mass = oracle::quad_cosine([&](double u) { return law.density(u); }, law.ac_support.lo,
                                        law.ac_support.hi);
      for (const auto& at : law.atoms) mass += at.mass;
      const double lib = integrate_against(law.measure(), [](double) { return 1.0; });
      const double err = std::max(std::abs(mass - 1.0), std::abs(lib - 1.0));
      worst_mass = std::max(worst_mass, err);
      c.require(err < 1e-8, "free-Meixner mass off by " + fmt(err) + " at (" + fmt(a) + ", " + fmt(b) + ")");
      ++regimes[std::min<std::size_t>(law.atoms.size(), 2)];
    }
  c.require(regimes[0] > 0 && regimes[1] > 0 && regimes[2] > 0, "grid misses an atom regime");

  double worst_g2v = 0.0;
  for (double a : {-1.0, 0.0, 0.3, 1.5})
    for (double b : {-0.5, 0.0, 0.2, 0.8})
      for (double m : {-0.4, -0.1, 0.1, 0.4}) {
        const double r = freefam::g2v_residual(VarianceSpec::quadratic(1.0, a, b, {-0.5, 0.5}), m);
        worst_g2v = std::max(worst_g2v, r);
        c.require(r < 1e-10, "G2V residual " + fmt(r));
      }

  const std::vector<std::vector<Rational>> vs{
      {1, Rational(1, 3), Rational(-2, 7), 0, 0, 0, 0, 0},
      {1, Rational(-5, 2), Rational(3, 4), 0, 0, 0, 0, 0},
      {2, Rational(1, 5), Rational(1, 9), Rational(-1, 11), Rational(4, 13), 0, 0, 0},
      {1, 1, 1, 1, 1, 1, 1, 1},
  };
  for (const auto& v : vs) {
    const auto got = freefam::free_cumulants(v, 8).exact;
    const auto want = oracle::cumulants_by_reversion(v, 8);
    c.require(got == want, "free cumulants differ from the reversion series");
  }

  double worst_mom = 0.0;
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.3, 0.2}, {2.0, 0.0}, {-1.5, -0.5}, {1.0, 1.0}, {0.5, -0.9}}) {
    const auto law = freefam::free_meixner(a, b);
    const auto sys = qfam::asc_system({0.0, a, b}, 10).poly;
    for (int n = 0; n <= 8; ++n) {
      double got = oracle::quad_cosine([&](double u) { return std::pow(u, n) * law.density(u); }, law.ac_support.lo,
                                       law.ac_support.hi);
      for (const auto& at : law.atoms) got += at.mass * std::pow(at.location, n);
      const double want = qfam::moments_from_jacobi(sys, n);
      const double err = std::abs(got - want) / (1 + std::abs(want));
      worst_mom = std::max(worst_mom, err);
      c.require(err < 1e-8, "moment " + std::to_string(n) + " off by " + fmt(err));
    }
  }
  c.note("mass " + fmt(worst_mass) + ", G2V " + fmt(worst_g2v) + ", cumulants exact, moments " + fmt(worst_mom));
  return c.done();
}

Outcome q_zero_weight() {
  Check c;
  double worst = 0.0;
  int n = 0;
  for (double a : {-0.6, 0.0, 0.3, 1.2})
    for (double b : {-0.4, 0.0, 0.2, 0.9})
      for (double m : {-0.3, -0.05, 0.1, 0.25})
        for (double u : {-1.5, -0.2, 0.0, 0.7, 1.4}) {
          const double f = freefam::free_weight(VarianceSpec::quadratic(1.0, a, b, {-1.0, 1.0}), m, u);
          const double e = oracle::rel_err(qfam::q_weight({0.0, a, b}, m, u), f);
          worst = std::max(worst, e);
          ++n;
          c.require(e < 1e-15, "q = 0 weight differs by " + fmt(e));
        }
  c.note(std::to_string(n) + " points, worst relative difference " + fmt(worst));
  return c.done();
}

Outcome counterexamples() {
  Check c;
  double at = -1.0, value = 0.0;
  for (int i = 1; i <= 1000 && at < 0; ++i) {
    const double k = specfun::bessel_k_imag(i * 0.01, 1.0);
    if (k < 0.0) {
      at = i * 0.01;
      value = k;
    }
  }
  c.require(at > 0, "K_{iu}(1) >= 0 on (0, 10]");
  if (at > 0) c.note("K_{iu}(1) = " + fmt(value) + " at u = " + fmt(at));

  // \int_0^inf K_{ix}(a) cos(xy) dx = (pi/2) e^{-a cosh y}, and its
  // continuation (1/pi) \int_R K_{ix}(1) e^{xy} dx = e^{-cos y}
  double worst = 0.0;
  for (double y : {0.0, 0.4, 1.1}) {
    const double lhs =
        oracle::quad_panels([&](double x) { return specfun::bessel_k_imag(x, 1.0) * std::cos(x * y); }, 0.0, 24.0, 2.0);
    worst = std::max(worst, std::abs(lhs - std::numbers::pi / 2 * std::exp(-std::cosh(y))));
  }
  for (double y : {0.3, 0.7}) {
    const double lhs = oracle::quad_panels(
                           [&](double x) { return 2.0 * specfun::bessel_k_imag(x, 1.0) * std::cosh(x * y); }, 0.0,
                           25.0, 1.0) /
                       std::numbers::pi;
    worst = std::max(worst, std::abs(lhs - std::exp(-std::cos(y))));
  }
  c.require(worst < 1e-6, "Fourier identity off by " + fmt(worst));
  c.note("Fourier identity error " + fmt(worst));

  const double lam = 1.0;
  const auto two = qbig::two_point_generator(lam);
  const auto semi = qbig::semicircle_generator(lam);
  const auto fourth = [](const Measure& mu) { return integrate_against(mu, [](double u) { return u * u * u * u; }); };
  c.require(std::abs(fourth(two) - fourth(semi)) > 0.5, "the two generators are not distinct");
  double worst_v = 0.0;
  for (double m : {-0.4, 0.2, 0.5}) {
    const auto a = moments(qbig::q_infinity_family(two, lam, m).measure, m);
    const auto b = moments(qbig::q_infinity_family(semi, lam, m).measure, m);
    const double v = qbig::q_infinity_variance(lam, 0.0, m) / lam;
    worst_v = std::max({worst_v, std::abs(a.variance - v), std::abs(b.variance - v)});
  }
  c.require(worst_v < 1e-8, "q = infinity variance functions differ by " + fmt(worst_v));
  c.note("two generators share v(m) to " + fmt(worst_v));
  return c.done();
}

Outcome hermite_identity() {
  Check c;
  double worst = 0.0;
  // d^k/dx^k e^{-a (x-1)^2} at 0 equals e^{-a} a^{k/2} H_k(sqrt a); errors are
  // scaled by the monomial sizes since H_k(sqrt a) can vanish.
  for (double a : {0.5, 1.0, 2.0}) {
    auto f = [a](const oracle::Big& x) { return exp(-oracle::Big(a) * (x - 1) * (x - 1)); };
    for (int k = 0; k <= 10; ++k) {
      const double pre = std::exp(-a) * std::pow(a, k / 2.0);
      const double want = pre * specfun::hermite_value(k, std::sqrt(a));
      double scale = 0.0;
      const auto h = specfun::hermite(k);
      for (int j = 0; j <= k; ++j) scale += std::abs(h.c[static_cast<std::size_t>(j)]) * std::pow(std::sqrt(a), j);
      const double err = std::abs(oracle::derivative(f, 0.0, k) - want) / (pre * scale);
      worst = std::max(worst, err);
      c.require(err < 1e-8, "k = " + std::to_string(k) + " off by " + fmt(err));
    }
  }
  c.note("k <= 10, worst relative error " + fmt(worst));
  return c.done();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const std::string& cli) {
  Check c;
  if (cli.empty()) {
    c.require(false, "no CLI path given");
    return c.done();
  }
  const auto dir = std::filesystem::temp_directory_path() / ("expfam_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string out[2];
  for (int i = 0; i < 2; ++i) {
    const auto file = dir / ("run" + std::to_string(i) + ".json");
    const std::string cmd = "\"" + cli + "\" validate --out \"" + file.string() + "\" 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    c.require(rc == 0, "validate exited with status " + std::to_string(rc));
    out[i] = slurp(file);
  }
  std::filesystem::remove_all(dir);
  c.require(!out[0].empty(), "validate wrote no report");
  c.require(out[0] == out[1], "reports differ between runs");
  c.note(std::to_string(out[0].size()) + " identical bytes");
  return c.done();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"rational plus phi_4(1) = -sqrt(e)/64", exact_plus_constant},
      {"phi_0 closed forms", exact_phi0},
      {"positivity dichotomy", positivity_dichotomy},
      {"moment triple suite", moment_suite},
      {"difference-equation residual suite", ode_suite},
      {"free coherence", free_coherence},
      {"q = 0 weight equals the free weight", q_zero_weight},
      {"counterexample certification", counterexamples},
      {"Hermite derivative identity", hermite_identity},
      {"validate determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
