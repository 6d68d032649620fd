#include "expfam/harness/report.hpp"

#include <cstdio>
#include <sstream>

namespace expfam::harness {

bool CounterexampleResult::operator==(const CounterexampleResult& o) const {
  return id == o.id && params == o.params && status == o.status && error == o.error &&
         witness.found == o.witness.found && witness.kind == o.witness.kind && witness.at == o.witness.at &&
         witness.value == o.witness.value;
}

namespace {

nlohmann::json params_json(const Params& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

Params params_from(const nlohmann::json& j) {
  Params p;
  for (const auto& [k, v] : j.items()) p[k] = v.get<double>();
  return p;
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json j;
  j["schema"] = r.schema;
  j["tolerances"] = {{"mass", r.tolerances.mass},
                     {"mean", r.tolerances.mean},
                     {"variance", r.tolerances.variance},
                     {"ode", r.tolerances.ode}};
  j["pass"] = r.pass;
  nlohmann::json fams = nlohmann::json::array();
  for (const auto& f : r.families) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : f.points) {
      nlohmann::json ode = nlohmann::json::array();
      for (const auto& s : p.ode) ode.push_back({{"u", s.u}, {"residual", s.residual}});
      pts.push_back({{"m", p.m},
                     {"mass", p.mass},
                     {"mean", p.mean},
                     {"variance", p.variance},
                     {"expected_variance", p.expected_variance},
                     {"residuals", {{"mass", p.mass_residual}, {"mean", p.mean_residual}, {"variance", p.variance_residual}}},
                     {"ode", ode},
                     {"pass", p.pass},
                     {"error", p.error}});
    }
    fams.push_back({{"id", f.id},
                    {"params", params_json(f.params)},
                    {"probability", f.probability},
                    {"ode_kind", f.ode_kind},
                    {"points", pts},
                    {"pass", f.pass}});
  }
  j["families"] = fams;
  nlohmann::json ces = nlohmann::json::array();
  for (const auto& c : r.counterexamples) {
    ces.push_back({{"id", c.id},
                   {"params", params_json(c.params)},
                   {"status", c.status},
                   {"witness",
                    {{"found", c.witness.found}, {"kind", c.witness.kind}, {"at", c.witness.at}, {"value", c.witness.value}}},
                   {"error", c.error}});
  }
  j["counterexamples"] = ces;
  if (r.wall_time_seconds) j["wall_time_seconds"] = *r.wall_time_seconds;
  return j;
}

ValidationReport report_from_json(const nlohmann::json& j) {
  ValidationReport r;
  r.schema = j.at("schema").get<int>();
  if (r.schema != 1) throw std::invalid_argument("unsupported report schema " + std::to_string(r.schema));
  const auto& t = j.at("tolerances");
  r.tolerances = {t.at("mass").get<double>(), t.at("mean").get<double>(), t.at("variance").get<double>(),
                  t.at("ode").get<double>()};
  r.pass = j.at("pass").get<bool>();
  for (const auto& fj : j.at("families")) {
    FamilyResult f;
    f.id = fj.at("id").get<std::string>();
    f.params = params_from(fj.at("params"));
    f.probability = fj.at("probability").get<bool>();
    f.ode_kind = fj.at("ode_kind").get<std::string>();
    f.pass = fj.at("pass").get<bool>();
    for (const auto& pj : fj.at("points")) {
      PointResult p;
      p.m = pj.at("m").get<double>();
      p.mass = pj.at("mass").get<double>();
      p.mean = pj.at("mean").get<double>();
      p.variance = pj.at("variance").get<double>();
      p.expected_variance = pj.at("expected_variance").get<double>();
      const auto& res = pj.at("residuals");
      p.mass_residual = res.at("mass").get<double>();
      p.mean_residual = res.at("mean").get<double>();
      p.variance_residual = res.at("variance").get<double>();
      for (const auto& s : pj.at("ode")) p.ode.push_back({s.at("u").get<double>(), s.at("residual").get<double>()});
      p.pass = pj.at("pass").get<bool>();
      p.error = pj.at("error").get<std::string>();
      f.points.push_back(std::move(p));
    }
    r.families.push_back(std::move(f));
  }
  for (const auto& cj : j.at("counterexamples")) {
    CounterexampleResult c;
    c.id = cj.at("id").get<std::string>();
    c.params = params_from(cj.at("params"));
    c.status = cj.at("status").get<std::string>();
    const auto& w = cj.at("witness");
    c.witness = {w.at("found").get<bool>(), w.at("kind").get<std::string>(), w.at("at").get<double>(),
                 w.at("value").get<double>()};
    c.error = cj.at("error").get<std::string>();
    r.counterexamples.push_back(std::move(c));
  }
  if (j.contains("wall_time_seconds")) r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  return r;
}

std::string to_csv(const ValidationReport& r) {
  std::ostringstream out;
  out << "family,m,mass,mean,variance,expected_variance,mass_residual,mean_residual,variance_residual,"
         "max_ode_residual,pass,error\n";
  for (const auto& f : r.families) {
    for (const auto& p : f.points) {
      double ode = -1.0;
      for (const auto& s : p.ode) ode = std::max(ode, s.residual);
      std::string err = p.error;
      for (char& ch : err)
        if (ch == ',' || ch == '\n') ch = ';';
      out << f.id << ',' << g17(p.m) << ',' << g17(p.mass) << ',' << g17(p.mean) << ',' << g17(p.variance) << ','
          << g17(p.expected_variance) << ',' << g17(p.mass_residual) << ',' << g17(p.mean_residual) << ','
          << g17(p.variance_residual) << ',' << g17(ode) << ',' << (p.pass ? "true" : "false") << ',' << err << '\n';
    }
  }
  return out.str();
}

}  // namespace expfam::harness
