#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "expfam/harness/registry.hpp"

namespace expfam::harness {

struct Tolerances {
  double mass = 1e-6;
  double mean = 1e-6;
  double variance = 1e-5;
  double ode = 1e-10;

  bool operator==(const Tolerances&) const = default;
};

struct OdeSample {
  double u = 0.0;
  double residual = 0.0;

  bool operator==(const OdeSample&) const = default;
};

struct PointResult {
  double m = 0.0;
  double mass = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double expected_variance = 0.0;
  double mass_residual = 0.0;
  double mean_residual = 0.0;
  double variance_residual = 0.0;
  std::vector<OdeSample> ode;
  bool pass = false;
  std::string error;  // empty unless the point threw

  bool operator==(const PointResult&) const = default;
};

struct FamilyResult {
  std::string id;
  Params params;
  bool probability = true;
  std::string ode_kind;
  std::vector<PointResult> points;
  bool pass = false;

  bool operator==(const FamilyResult&) const = default;
};

struct CounterexampleResult {
  std::string id;
  Params params;
  std::string status;  // "fail-as-expected" or "unexpected-pass"
  Witness witness;
  std::string error;

  bool operator==(const CounterexampleResult&) const;
};

struct ValidationReport {
  int schema = 1;
  Tolerances tolerances;
  std::vector<FamilyResult> families;
  std::vector<CounterexampleResult> counterexamples;
  bool pass = true;
  std::optional<double> wall_time_seconds;  // only when timing was requested

  bool operator==(const ValidationReport&) const = default;
};

nlohmann::json to_json(const ValidationReport& r);
ValidationReport report_from_json(const nlohmann::json& j);
/// One row per (family, m) point; numbers printed with 17 significant digits.
std::string to_csv(const ValidationReport& r);

}  // namespace expfam::harness
