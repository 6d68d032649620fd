#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "expfam/harness/report.hpp"

namespace expfam::harness {

struct FamilyGrid {
  std::string id;
  Params params;  // overrides on top of the registry defaults
  std::vector<double> m_grid;
};

struct CounterexampleGrid {
  std::string id;
  Params params;
};

struct GridSpec {
  std::vector<FamilyGrid> families;
  std::vector<CounterexampleGrid> counterexamples;
  Tolerances tolerances;
  unsigned threads = 0;  // 0: hardware concurrency
  bool timing = false;

  bool empty() const { return families.empty() && counterexamples.empty(); }
  /// Throws std::invalid_argument on unknown ids, unknown parameter keys or
  /// empty m-grids.
  void validate() const;
};

/// Every registered family on its default m-grid plus every counterexample.
GridSpec default_grid();

/// Keys: "families" [{id, params?, m_grid?}], "counterexamples" [{id, params?}],
/// "tolerances" {mass, mean, variance, ode}?, "threads"?. A missing "families"
/// or "counterexamples" key means all registered ones; a missing m_grid means
/// the default one.
GridSpec grid_from_json(const nlohmann::json& j);
nlohmann::json grid_to_json(const GridSpec& g);

/// Points are computed in parallel into fixed slots, so the report does not
/// depend on the thread count. Per-point failures are recorded, not thrown.
ValidationReport run_suite(const GridSpec& grid);

}  // namespace expfam::harness
