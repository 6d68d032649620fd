#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expfam/classical.hpp"
#include "expfam/freefam.hpp"
#include "expfam/harness/registry.hpp"
#include "expfam/harness/suite.hpp"

namespace {

using nlohmann::json;
using namespace expfam;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

harness::Params parse_params(const std::vector<std::string>& kv) {
  harness::Params p;
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + item + "'");
    p[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return p;
}

std::vector<double> parse_m_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
  if (parts.size() != 3) throw std::invalid_argument("--m-grid expects lo:hi:n");
  const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
  const int n = std::stoi(parts[2]);
  if (n < 1) throw std::invalid_argument("--m-grid needs n >= 1");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return out;
}

// "3", "-1/4" or a plain decimal such as "0.125", converted exactly.
freefam::Rational parse_rational(std::string s) {
  using freefam::Rational;
  const auto slash = s.find('/');
  if (slash != std::string::npos) return parse_rational(s.substr(0, slash)) / parse_rational(s.substr(slash + 1));
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  const auto dot = s.find('.');
  std::string digits = s;
  std::size_t decimals = 0;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    decimals = s.size() - dot - 1;
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a rational number: '" + s + "'");
  // a leading zero would make cpp_int read the digits as octal
  const auto nz = digits.find_first_not_of('0');
  Rational r{boost::multiprecision::cpp_int(nz == std::string::npos ? "0" : digits.substr(nz))};
  for (std::size_t i = 0; i < decimals; ++i) r /= 10;
  return neg ? Rational(-r) : r;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

// Rows of numbers: JSON array of objects or CSV with a header.
void emit_table(const std::string& format, const std::vector<std::string>& cols,
                const std::vector<std::vector<double>>& rows, json extra = json::object()) {
  if (format == "csv") {
    for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
    std::cout << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << g17(r[i]);
      std::cout << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    json o;
    for (std::size_t i = 0; i < cols.size(); ++i) o[cols[i]] = r[i];
    arr.push_back(o);
  }
  extra["rows"] = arr;
  std::cout << extra.dump(2) << '\n';
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int run(int argc, char** argv) {
  CLI::App app{"Exponential, q- and free variance-function families: evaluation and validation"};
  app.require_subcommand(1);
  std::string format = "json";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* list = app.add_subcommand("list", "List family and counterexample ids with their defaults");

  std::string family;
  std::vector<std::string> kv;
  double m = 0.0, u = 0.0;
  auto* eval = app.add_subcommand("eval", "Weight or density of a family at (m, u)");
  eval->add_option("family", family, "family id (see list), or arcsine")->required();
  eval->add_option("--params", kv, "parameter overrides key=value");
  eval->add_option("--m", m, "mean")->required();
  eval->add_option("--u", u, "point")->required();

  std::string m_grid;
  auto* mom = app.add_subcommand("moments", "Mass, mean and variance over an m-grid");
  mom->add_option("family", family, "family id")->required();
  mom->add_option("--params", kv, "parameter overrides key=value");
  mom->add_option("--m-grid", m_grid, "lo:hi:n (default: the family's grid)");
  add_format(mom);

  std::string generator;
  double lambda = 1.0;
  int n = 10;
  auto* coeffs = app.add_subcommand("coeffs", "Coefficient table phi_0..phi_n");
  coeffs->add_option("generator", generator, "rational-minus, rational-plus or sqrt")
      ->required()
      ->check(CLI::IsMember({"rational-minus", "rational-plus", "sqrt"}));
  coeffs->add_option("--lambda", lambda, "lambda > 0");
  coeffs->add_option("--n", n, "highest index")->check(CLI::NonNegativeNumber);
  add_format(coeffs);

  auto* free = app.add_subcommand("free", "Free Meixner laws and free cumulants");
  free->require_subcommand(1);
  double a = 0.0, b = 0.0;
  int samples = 201;
  auto* meixner = free->add_subcommand("meixner", "Density samples and atoms of the free Meixner law");
  meixner->add_option("--a", a, "a")->required();
  meixner->add_option("--b", b, "b > -1")->required();
  meixner->add_option("--samples", samples, "density sample count")->check(CLI::PositiveNumber);
  add_format(meixner);
  std::string series;
  int order = 8;
  auto* cumulants = free->add_subcommand("cumulants", "Exact free cumulants k_1..k_N of V");
  cumulants->add_option("--series", series, "V coefficients c0,c1,... (integers, p/q or decimals)")->required();
  cumulants->add_option("--order", order, "N")->check(CLI::PositiveNumber);

  int n_max = 40;
  auto* pos = app.add_subcommand("positivity", "First negative coefficient phi_n");
  pos->add_option("family", generator, "rational-minus, rational-plus or sqrt")
      ->required()
      ->check(CLI::IsMember({"rational-minus", "rational-plus", "sqrt"}));
  pos->add_option("--lambda", lambda, "lambda > 0");
  pos->add_option("--n-max", n_max, "search bound")->check(CLI::NonNegativeNumber);

  std::string grid_file, out_file, csv_file;
  bool timing = false;
  unsigned threads = 0;
  auto* val = app.add_subcommand("validate", "Run the validation suite");
  val->add_option("--grid", grid_file, "grid JSON (default: built-in grid)");
  val->add_option("--out", out_file, "report JSON path (default: stdout)");
  val->add_option("--csv", csv_file, "per-point CSV path");
  val->add_flag("--timing", timing, "record wall time in the report");
  val->add_option("--threads", threads, "worker threads (0: all cores)");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    json j;
    for (const auto& e : harness::families())
      j["families"].push_back({{"id", e.id},
                               {"summary", e.summary},
                               {"defaults", e.defaults},
                               {"m_grid", e.default_m_grid},
                               {"ode", harness::to_string(e.ode)}});
    for (const auto& c : harness::counterexamples())
      j["counterexamples"].push_back({{"id", c.id}, {"summary", c.summary}, {"defaults", c.defaults}});
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  if (eval->parsed()) {
    double w;
    harness::Params p;
    if (family == "arcsine") {
      p = harness::merge_params({{"lambda", 1.0}}, parse_params(kv));
      w = classical::arcsine_weight(p.at("lambda"), m, u);
    } else {
      const auto& e = harness::find_family(family);
      p = harness::merge_params(e.defaults, parse_params(kv));
      w = e.kernel(p, m, u);
    }
    std::cout << json{{"family", family}, {"params", p}, {"m", m}, {"u", u}, {"value", w}}.dump(2) << '\n';
    return 0;
  }

  if (mom->parsed()) {
    const auto& e = harness::find_family(family);
    const auto p = harness::merge_params(e.defaults, parse_params(kv));
    const auto grid = m_grid.empty() ? e.default_m_grid : parse_m_grid(m_grid);
    std::vector<std::vector<double>> rows;
    for (double mm : grid) {
      const FamilyMember member = e.make(p, mm);
      const MomentTriple t = classical::moment_report(member);
      rows.push_back({mm, t.mass, t.mean, t.variance, member.dispersion, t.error});
    }
    emit_table(format, {"m", "mass", "mean", "variance", "expected_variance", "error"}, rows,
               {{"family", family}, {"params", p}});
    return 0;
  }

  if (coeffs->parsed()) {
    std::vector<double> phi;
    if (generator == "sqrt") {
      for (int k = 0; k <= n; ++k) phi.push_back(classical::sqrt_family_phi(lambda, k));
    } else {
      phi = classical::rational_phi_table(
          lambda, n, generator == "rational-plus" ? classical::RationalSign::Plus : classical::RationalSign::Minus);
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < phi.size(); ++k) rows.push_back({static_cast<double>(k), phi[k]});
    emit_table(format, {"n", "phi"}, rows, {{"generator", generator}, {"lambda", lambda}});
    return 0;
  }

  if (meixner->parsed()) {
    const auto law = freefam::free_meixner(a, b);
    const double lo = law.ac_support.lo, hi = law.ac_support.hi;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < samples; ++i) {
      const double x = samples == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (samples - 1);
      rows.push_back({x, law.density(x)});
    }
    json atoms = json::array();
    for (const auto& at : law.atoms) atoms.push_back({{"location", at.location}, {"mass", at.mass}});
    if (format == "csv") {
      std::cout << "# atoms";
      for (const auto& at : law.atoms) std::cout << ' ' << g17(at.location) << ':' << g17(at.mass);
      std::cout << '\n';
    }
    emit_table(format, {"u", "density"}, rows,
               {{"a", a}, {"b", b}, {"support", {lo, hi}}, {"atoms", atoms}});
    return 0;
  }

  if (cumulants->parsed()) {
    std::vector<freefam::Rational> v;
    for (const auto& s : split_commas(series)) v.push_back(parse_rational(s));
    if (v.size() < static_cast<std::size_t>(order)) v.resize(static_cast<std::size_t>(order), freefam::Rational(0));
    const auto seq = freefam::free_cumulants(v, static_cast<std::size_t>(order));
    json arr = json::array();
    for (std::size_t i = 0; i < seq.size(); ++i)
      arr.push_back({{"n", i + 1}, {"exact", seq.exact[i].str()}, {"value", seq.k(static_cast<int>(i) + 1)}});
    std::cout << json{{"series", series}, {"cumulants", arr}}.dump(2) << '\n';
    return 0;
  }

  if (pos->parsed()) {
    std::function<double(int)> phi;
    std::vector<double> table;
    if (generator == "sqrt") {
      phi = [&](int k) { return classical::sqrt_family_phi(lambda, k); };
    } else {
      table = classical::rational_phi_table(
          lambda, n_max, generator == "rational-plus" ? classical::RationalSign::Plus : classical::RationalSign::Minus);
      phi = [&](int k) { return table[static_cast<std::size_t>(k)]; };
    }
    const int k = classical::first_negative_phi(phi, n_max);
    json j{{"family", generator}, {"lambda", lambda}, {"n_max", n_max}};
    if (k < 0) {
      j["first_negative"] = "none";
    } else {
      j["first_negative"] = k;
      j["value"] = phi(k);
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  if (val->parsed()) {
    harness::GridSpec grid;
    if (grid_file.empty()) {
      grid = harness::default_grid();
    } else {
      std::ifstream f(grid_file);
      if (!f) throw std::runtime_error("cannot read " + grid_file);
      grid = harness::grid_from_json(json::parse(f));
    }
    if (threads) grid.threads = threads;
    grid.timing = timing;
    const auto report = harness::run_suite(grid);
    const std::string text = harness::to_json(report).dump(2) + "\n";
    if (out_file.empty())
      std::cout << text;
    else
      write_file(out_file, text);
    if (!csv_file.empty()) write_file(csv_file, harness::to_csv(report));
    std::cerr << (report.pass ? "PASS" : "FAIL") << '\n';
    return report.pass ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
