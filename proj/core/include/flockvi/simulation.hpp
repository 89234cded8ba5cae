#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "flockvi/propagator.hpp"
#include "flockvi/scenario.hpp"

namespace flockvi {

/// Called once per step k = 0..steps with (k, q_k, q_{k+1}).
using StepObserver =
    std::function<void(std::size_t, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// Streams every step of the scenario through `observer`. One extra step
/// beyond `steps` is taken so the last step has a forward difference.
void simulate(const Scenario& scenario, const IntegratorSpec& spec, const StepObserver& observer);

/// Runs the scenario and records every record_every-th step with diagnostics.
TrajectoryRecord run(const Scenario& scenario, const IntegratorSpec& spec);
TrajectoryRecord run(const Scenario& scenario);

}  // namespace flockvi
