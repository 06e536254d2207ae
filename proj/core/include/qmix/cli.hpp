#pragma once

// Subcommand implementations behind the qmix executable. Each returns the
// process exit code and never throws.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qmix/spectra.hpp"

namespace qmix::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfig = 2,
  kIntegration = 3,
  kNoOracle = 4,
  kComparison = 5,
};

struct GlobalOptions {
  bool quiet = false;
  bool json_errors = false;  // suppress the human-readable error line
};

struct SimulateOptions {
  std::filesystem::path config;
  std::filesystem::path out;
  bool gnuplot = false;
};

struct ValidateOptions {
  std::filesystem::path config;
  std::optional<double> rel_tol;
  std::optional<double> abs_floor;
  std::optional<CompareMode> mode;
  std::optional<std::filesystem::path> spectrum;  // compare this file instead of re-running
  std::optional<std::filesystem::path> report;    // write the PeakReport JSON here
};

struct SweepOptions {
  std::filesystem::path config;
  std::string axis;
  std::string values;
  std::filesystem::path out;
  unsigned threads = 0;
};

int cmd_simulate(const SimulateOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& o, const GlobalOptions& g, std::ostream& out, std::ostream& err);

// Exit code for a library error kind.
int exit_code_for(const std::exception& e);

}  // namespace qmix::cli
