#pragma once

// Batch front end. Exit codes: 0 success, 1 mathematical violation, 2 usage or I/O.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpgh/oracle.hpp"
#include "mpgh/scalar.hpp"

namespace mpgh::cli {

enum class OutputFormat { kJson, kCsv, kText };

struct RunConfig {
  std::string command;     // validate, hausdorff, gh, geodesic, cassorla, apps
  std::string subcommand;  // e.g. "exact" for gh
  std::vector<std::string> inputs;
  ArithmeticMode mode = ArithmeticMode::kExact;
  double tol = kDefaultTolerance;
  double budget = 1e6;
  std::uint64_t seed = 0;
  OutputFormat out = OutputFormat::kJson;
  unsigned threads = 1;
  OracleEngine engine = OracleEngine::kReduced;

  // command options
  std::string corr;                  // correspondence file
  std::string s, t;                  // index lists for hausdorff
  std::string t_values;              // geodesic sample
  std::string grid = "0,1/4,1/2,3/4,1";  // geodesic audit
  std::string n_range = "2..3";      // cassorla
  std::size_t circle = 0;            // cassorla generator: points on a unit circle, quarter-arc subset
  bool complexes = false;            // cassorla: include the complexes
  double mesh = 0.01;                // apps realize
  bool filtration = false;           // apps realize: sum over filtration levels
  unsigned long q = 0;               // apps densify
};

/// Exit code of a finished run.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and runs.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpgh::cli
