#pragma once

#include <cstddef>
#include <iosfwd>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flockvi/scenario.hpp"

namespace flockvi::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitScenario = 3,
  kExitIo = 4,
};

/// Bad flags or flag combinations.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandInvocation {
  std::string subcommand;
  std::optional<std::string> preset;
  std::optional<std::string> scenario_path;
  std::optional<std::string> integrator;
  std::optional<std::string> variant;
  std::optional<std::string> bootstrap;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> record_every;
  /// run/compare/bench: at most one override. convergence: the step grid.
  std::vector<double> h;
  std::string out_dir = "flockvi-out";
  bool svg = false;
  double horizon = 1.0;
  std::size_t reference_substeps = 100;
};

/// Parses argv and dispatches; never throws.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Loads the single scenario source and applies flag overrides.
Scenario resolve_scenario(const CommandInvocation& inv);

int cmd_run(const CommandInvocation& inv, std::ostream& out);
int cmd_compare(const CommandInvocation& inv, std::ostream& out);
int cmd_convergence(const CommandInvocation& inv, std::ostream& out);
int cmd_bench(const CommandInvocation& inv, std::ostream& out);

/// Runs `fn` and maps library exceptions onto exit codes, reporting to err.
int guarded(const std::function<int()>& fn, std::ostream& err);

}  // namespace flockvi::cli
