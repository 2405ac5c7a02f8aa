#pragma once

// Seeded property suites. Trial t of a suite draws its randomness from
// Rng(seed).substream(t), so reports do not depend on scheduling.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace srd::suites {

struct SuiteConfig {
  std::string name;
  std::uint64_t seed = 1;
  int trials = 0;    // 0 selects the suite default
  int max_dim = 6;   // largest Hilbert-space dimension drawn at random
  std::optional<double> alpha;
  std::map<std::string, double> tolerances;  // overrides of the suite defaults
};

using Quantities = std::vector<std::pair<std::string, double>>;

struct SuiteFailure {
  int trial = 0;
  Quantities quantities;
  Quantities residuals;
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  int trials = 0;
  std::map<std::string, double> tolerances;
  std::vector<SuiteFailure> failures;
  nlohmann::json summary = nlohmann::json::object();
  double wall_time_seconds = 0.0;
  std::string tool_version;

  bool passed() const { return failures.empty(); }
};

std::vector<std::string> suite_names();
/// Default tolerances of a suite; throws UnknownSuite.
std::map<std::string, double> default_tolerances(const std::string& name);

/// Throws UnknownSuite for an unknown name and ParseError for an unknown tolerance key.
SuiteReport run_suite(const SuiteConfig& config);

nlohmann::json to_json(const SuiteReport& report);

}  // namespace srd::suites
