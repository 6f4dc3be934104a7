// Sweep orchestration and bit-stable export: ties the physics modules into
// reproducible runs. Identical inputs produce byte-identical files across
// runs and across worker counts.
#pragma once

#include <string>
#include <vector>

#include "cqed/config.hpp"

namespace cqed {

enum class Subcommand { kConstants, kCoupling, kEigenmap, kSpectrum, kOracle };

Subcommand subcommand_from_name(const std::string& name);

struct RunOptions {
  std::string out_path;     // empty writes single-artifact output to stdout
  unsigned threads = 1;
  bool threshold = false;   // forces the detector floor on
};

// Tolerance failure of the oracle battery (exit code 2 at the CLI).
struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Executes one subcommand. Artifact files are written atomically; on error
// every partially written file of this run is removed before rethrowing.
// Returns the list of files written (empty for stdout output).
std::vector<std::string> run(const RunConfig& config, Subcommand subcommand,
                             const RunOptions& options);

// Formats a double with 9 significant digits, locale-independent.
std::string format_csv_number(double value);

}  // namespace cqed
