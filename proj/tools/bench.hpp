#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flockvi/scenario.hpp"

namespace flockvi::cli {

struct BenchRow {
  std::string integrator;
  std::size_t steps = 0;
  double seconds = 0.0;
  double setup_seconds = 0.0;  ///< factorization for the variational stepper

  double ns_per_step() const { return 1e9 * seconds / static_cast<double>(steps); }
  double steps_per_second() const { return static_cast<double>(steps) / seconds; }
};

/// Times `steps` in-place steps of each integrator on the scenario (fastest
/// of three repetitions after a warm-up):
/// variational-paper, variational-consistent, euler, rk4 (in that order).
std::vector<BenchRow> bench_integrators(const Scenario& scenario, std::size_t steps);

}  // namespace flockvi::cli
