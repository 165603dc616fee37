#pragma once

// Verification commands behind the tqd-verify CLI.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "tqd/hamiltonian.hpp"
#include "tqd/report.hpp"

namespace tqd {

enum ExitCode : int {
  kExitPass = 0,
  kExitClaimFailed = 1,
  kExitInvalidInput = 2,
};

enum class OutputFormat { json, csv };

/// Malformed or out-of-range user input (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adds `delta` to one entry of the printed matrix before any check runs.
struct MatrixPerturbation {
  std::size_t row;
  std::size_t col;
  double delta;
};

struct RunConfig {
  std::string command;
  double a = 1.0;
  double b = 2.0;
  double c = 7.0;
  std::optional<double> theta;
  std::size_t grid = 0;
  double q = 0.5;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  double eps = 1e-9;
  OutputFormat output = OutputFormat::json;
  std::optional<std::string> model_path;
  std::optional<std::string> write_model_path;
  std::optional<std::string> out_path;
  std::optional<MatrixPerturbation> perturb;
};

/// Applies key=value pairs (config file keys match the long flag names).
/// Throws InputError on unknown keys or unparsable values.
void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& settings);

/// Reads a flat key=value file (# comments) or a JSON object.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Throws InputError unless theta is in (0, pi/2), 0 < q <= 1, samples >= 1,
/// eps > 0 and the command is known.
void validate(const RunConfig& cfg);

struct CommandOutput {
  Json report;
  std::string csv;  // exclusion scans only
  int exit_code;

  /// The serialized payload in the requested format.
  std::string render(OutputFormat format) const;
};

// Sections; each returns {"result": ..., "verdicts": {...}, "warnings": [...]}.
Json hamiltonian_section(double a, double b, double c, const OperatorMatrix& printed);
Json exclusion_section(const std::vector<double>& thetas, bool scan);
Json pbr2_section();
Json ontic_section(const RunConfig& cfg);

/// theta, prep_index, outcome_index, probability rows for each theta.
std::string exclusion_csv(const std::vector<double>& thetas);

/// Validates, dispatches and wraps the selected section in the report
/// envelope. InputError propagates.
CommandOutput run_command(const RunConfig& cfg);

OperatorMatrix printed_matrix_for(const RunConfig& cfg);

}  // namespace tqd
