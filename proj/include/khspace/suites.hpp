#pragma once

#include "khspace/report.hpp"
#include "khspace/serialize.hpp"

namespace kh {

struct ExperimentConfig {
  std::string suite = "all";
  int n = 1;
  double L = 16.0;
  int M = 128;
  json weight = json{{"op", "jbpow"}, {"s", 1.0}};
  std::vector<double> window_center;  // defaults to L/2 per axis
  double window_radius = 1.5;
  std::uint64_t seed = 1;
  int count = 100;
  int band = 8;
  double decay = 1.0;
  bool smoke = false;
  json params = json::object();
};

/// Parses and validates a config object; unknown keys are rejected.
ExperimentConfig parse_config(const json& j);

struct SuiteResult {
  std::vector<ReportRow> rows;
  bool all_pass = true;
};

/// Runs one named suite: weights, bspace, amalgam, localization, wiener_levy,
/// schatten, embedding, or all. Deterministic given the seed.
SuiteResult run_suite(const ExperimentConfig& cfg);

json summary_json(const SuiteResult& result, const ExperimentConfig& cfg);

}  // namespace kh
