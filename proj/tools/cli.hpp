#pragma once

// Command-line front end: argument parsing and dispatch, kept separate from
// main() so the test suite can drive it in-process.

#include <optional>
#include <string>
#include <vector>

#include "spinpart/states.hpp"
#include "spinpart/wernerscan.hpp"

namespace spinpart::cli {

enum class Command { analyze, scan_werner, moment_matrix, minors, cartesian_check };
enum class OutputFormat { json, csv, human };

enum ExitCode : int {
  kOk = 0,
  kInvalidConfig = 2,
  kNumericalFailure = 3,
  kIoFailure = 4,
};

struct PartitionSelector {
  enum class Mode { all, explicit_sets, leading } mode = Mode::all;
  std::vector<std::vector<int>> sets;  // explicit_sets: A index lists
  int n_a = 0;                         // leading: A = {1..n_a}
  bool user_specified = false;
};

struct RunConfig {
  Command command = Command::analyze;
  std::optional<StateSpec> state;
  PartitionSelector partitions;
  bool symmetric = false;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> output_path;

  double tol = 1e-8;           // detection tolerance for P and PPT verdicts
  double bisect_tol = 1e-9;    // Werner threshold bisection width
  double minor_tol = 1e-10;    // negativity threshold for minor certificates
  int max_degree = 2;
  int max_order = 3;
  std::size_t word_cap = 64;
  int n_min = 2;
  int n_max = 8;
  int scan_max_qubits = kDefaultScanMaxQubits;
  bool with_ppt = true;
};

struct ParseOutcome {
  std::optional<RunConfig> config;  // empty when parsing stopped early
  int exit_code = kOk;              // meaningful when config is empty
  std::string message;              // help text or error
};

ParseOutcome parse_args(const std::vector<std::string>& args);

struct RunResult {
  int exit_code = kOk;
  std::string output;  // document written to stdout or the output file
  std::string error;
};

/// Executes the configured command. Writes to `output_path` when set, in
/// which case `output` still holds the document.
RunResult run(const RunConfig& config);

/// parse_args + run, printing to stdout/stderr. Returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace spinpart::cli
