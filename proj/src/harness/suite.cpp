#include "expfam/harness/suite.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "expfam/core/measure.hpp"

namespace expfam::harness {

namespace {

// Runs job(i) for i in [0, n) on up to `threads` workers. Results go to
// caller-owned slots, so scheduling never affects the output.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  }
}

PointResult evaluate_point(const FamilyEntry& e, const Params& p, double m, const Tolerances& tol) {
  PointResult r;
  r.m = m;
  try {
    const FamilyMember member = e.make(p, m);
    const MomentTriple mt = moments(member.measure, m);
    r.mass = mt.mass;
    r.mean = mt.mean;
    r.variance = mt.variance;
    r.expected_variance = member.dispersion;
    r.mass_residual = std::abs(mt.mass - 1.0);
    r.mean_residual = std::abs(mt.mean - m);
    r.variance_residual = std::abs(mt.variance - member.dispersion);
    bool ok = r.mass_residual < tol.mass && r.mean_residual < tol.mean && r.variance_residual < tol.variance;
    // the q- and Hahn quotients are undefined at m = 0 and m = 1 respectively
    const bool skip_ode = e.ode == OdeKind::None || (e.ode == OdeKind::QDerivative && m == 0.0) ||
                          (e.ode == OdeKind::Hahn && m == 1.0);
    if (!skip_ode) {
      for (double u : e.sample_u(p, member)) {
        const double res = ode_residual(e, p, m, u, member.dispersion);
        r.ode.push_back({u, res});
        ok = ok && res < tol.ode;
      }
    }
    r.pass = ok;
  } catch (const std::exception& ex) {
    r.pass = false;
    r.error = ex.what();
  }
  return r;
}

}  // namespace

void GridSpec::validate() const {
  for (const auto& f : families) {
    const FamilyEntry& e = find_family(f.id);
    merge_params(e.defaults, f.params);
    if (f.m_grid.empty()) throw std::invalid_argument("empty m-grid for family " + f.id);
    for (double m : f.m_grid)
      if (!std::isfinite(m)) throw std::invalid_argument("non-finite m in grid for family " + f.id);
  }
  for (const auto& c : counterexamples) merge_params(find_counterexample(c.id).defaults, c.params);
  if (!(tolerances.mass > 0 && tolerances.mean > 0 && tolerances.variance > 0 && tolerances.ode > 0))
    throw std::invalid_argument("tolerances must be positive");
}

GridSpec default_grid() {
  GridSpec g;
  for (const auto& e : families()) g.families.push_back({e.id, {}, e.default_m_grid});
  for (const auto& c : counterexamples()) g.counterexamples.push_back({c.id, {}});
  return g;
}

GridSpec grid_from_json(const nlohmann::json& j) {
  auto params_of = [](const nlohmann::json& o) {
    Params p;
    if (o.contains("params"))
      for (const auto& [k, v] : o.at("params").items()) p[k] = v.get<double>();
    return p;
  };
  GridSpec g;
  if (j.contains("families")) {
    for (const auto& f : j.at("families")) {
      const std::string id = f.at("id").get<std::string>();
      FamilyGrid fg{id, params_of(f), {}};
      fg.m_grid = f.contains("m_grid") ? f.at("m_grid").get<std::vector<double>>() : find_family(id).default_m_grid;
      g.families.push_back(std::move(fg));
    }
  } else {
    for (const auto& e : families()) g.families.push_back({e.id, {}, e.default_m_grid});
  }
  if (j.contains("counterexamples")) {
    for (const auto& c : j.at("counterexamples")) g.counterexamples.push_back({c.at("id").get<std::string>(), params_of(c)});
  } else {
    for (const auto& c : counterexamples()) g.counterexamples.push_back({c.id, {}});
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    g.tolerances.mass = t.value("mass", g.tolerances.mass);
    g.tolerances.mean = t.value("mean", g.tolerances.mean);
    g.tolerances.variance = t.value("variance", g.tolerances.variance);
    g.tolerances.ode = t.value("ode", g.tolerances.ode);
  }
  g.threads = j.value("threads", 0u);
  g.validate();
  return g;
}

nlohmann::json grid_to_json(const GridSpec& g) {
  nlohmann::json j;
  j["families"] = nlohmann::json::array();
  for (const auto& f : g.families) j["families"].push_back({{"id", f.id}, {"params", f.params}, {"m_grid", f.m_grid}});
  j["counterexamples"] = nlohmann::json::array();
  for (const auto& c : g.counterexamples) j["counterexamples"].push_back({{"id", c.id}, {"params", c.params}});
  j["tolerances"] = {{"mass", g.tolerances.mass},
                     {"mean", g.tolerances.mean},
                     {"variance", g.tolerances.variance},
                     {"ode", g.tolerances.ode}};
  j["threads"] = g.threads;
  return j;
}

ValidationReport run_suite(const GridSpec& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  grid.validate();
  ValidationReport report;
  report.tolerances = grid.tolerances;

  struct Task {
    std::size_t family;
    std::size_t point;
  };
  std::vector<Task> tasks;
  report.families.resize(grid.families.size());
  std::vector<Params> merged(grid.families.size());
  for (std::size_t i = 0; i < grid.families.size(); ++i) {
    const auto& fg = grid.families[i];
    const FamilyEntry& e = find_family(fg.id);
    merged[i] = merge_params(e.defaults, fg.params);
    FamilyResult& fr = report.families[i];
    fr.id = fg.id;
    fr.params = merged[i];
    fr.probability = e.probability;
    fr.ode_kind = to_string(e.ode);
    fr.points.resize(fg.m_grid.size());
    for (std::size_t k = 0; k < fg.m_grid.size(); ++k) tasks.push_back({i, k});
  }
  report.counterexamples.resize(grid.counterexamples.size());
  const std::size_t n_points = tasks.size();
  const std::size_t n_total = n_points + grid.counterexamples.size();

  parallel_for(n_total, grid.threads, [&](std::size_t idx) {
    if (idx < n_points) {
      const Task t = tasks[idx];
      const FamilyEntry& e = find_family(grid.families[t.family].id);
      report.families[t.family].points[t.point] =
          evaluate_point(e, merged[t.family], grid.families[t.family].m_grid[t.point], grid.tolerances);
      return;
    }
    const auto& cg = grid.counterexamples[idx - n_points];
    CounterexampleResult& cr = report.counterexamples[idx - n_points];
    cr.id = cg.id;
    try {
      const CounterexampleEntry& c = find_counterexample(cg.id);
      cr.params = merge_params(c.defaults, cg.params);
      cr.witness = c.search(cr.params);
      cr.status = cr.witness.found ? "fail-as-expected" : "unexpected-pass";
    } catch (const std::exception& ex) {
      cr.status = "error";
      cr.error = ex.what();
    }
  });

  bool pass = true;
  for (auto& fr : report.families) {
    fr.pass = true;
    for (const auto& p : fr.points) fr.pass = fr.pass && p.pass;
    pass = pass && fr.pass;
  }
  for (const auto& cr : report.counterexamples) pass = pass && cr.status == "fail-as-expected";
  report.pass = pass;
  if (grid.timing)
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace expfam::harness
