#pragma once

// Batch front end. Usage:
//   dicke <command> [suite] [--flag value ...] [--config FILE]
// Commands: critical-temp, phase-diagram, spectrum, partition-ratio,
// order-parameter, ed-curve, validate [default|trace-identity|kernel-sums|
// goldstone|critical-beta].
// The config file holds `key = value` lines using the long flag names
// without dashes; command-line flags take precedence over it.
// Exit codes: 0 success, 1 computational failure, 2 malformed input.

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/table.hpp"

namespace dicke {

enum class Command {
  CriticalTemp,
  PhaseDiagram,
  Spectrum,
  PartitionRatio,
  OrderParameter,
  EdCurve,
  Validate,
};

std::string_view to_string(Command command);

// Malformed configuration; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepSpec {
  std::string variable;   // g1, g2, beta, omega0 or Omega
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;          // steps + 1 points, endpoints included
  bool log = false;

  std::vector<double> points() const;
};

// "var:start:stop:steps[:log]"; for beta grids the variable is omitted.
SweepSpec parse_sweep(const std::string& text, bool with_variable = true);

struct RunConfig {
  Command command = Command::CriticalTemp;
  std::string suite = "default";
  double omega0 = 1.0;
  double Omega = 1.0;
  double g1 = 0.0;
  double g2 = 0.0;
  std::optional<double> beta;
  std::optional<SweepSpec> beta_grid;
  std::vector<SweepSpec> sweeps;
  bool at_critical = false;
  std::string output;                 // empty writes to stdout
  Format format = Format::Csv;
  long cutoff = 64;
  double pole_eps = -1.0;             // negative selects 1e-9 * max(Omega, omega0)
  std::vector<int> atom_counts{2, 4, 6, 8};
  double ed_tol = 1e-6;
  int workers = 1;
};

// `args` excludes the program name. `workers_env` is the value of
// DICKE_WORKERS, if set. Throws ConfigError.
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& file_text = std::nullopt,
                       const std::optional<std::string>& workers_env = std::nullopt);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full entry point: handles --config FILE, DICKE_WORKERS and --help.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dicke
