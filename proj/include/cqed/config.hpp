// Run configuration: a strict JSON document with documented defaults.
// Unknown keys are rejected by name, invariant violations are reported
// with their field path.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqed/atomic_data.hpp"
#include "cqed/coupling.hpp"

namespace cqed {

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;  // inclusive of stop within half a step
};

struct RunConfig {
  LineConstants line;
  SpatialModel spatial;
  MfDistribution mf_distribution;
  std::vector<double> atom_numbers{1000.0};
  GridSpec cavity_grid{-700.0, 700.0, 35.0};
  GridSpec probe_grid{-700.0, 700.0, 5.0};
  std::string output_format = "csv";  // csv | json
  bool threshold_enabled = false;
  double threshold_floor = 0.02;
  unsigned long long seed = 0;  // reserved; the core is deterministic

  void validate() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses the JSON text; an empty document gives all defaults.
RunConfig parse_config(const std::string& text);

// Canonical JSON serialization; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

}  // namespace cqed
