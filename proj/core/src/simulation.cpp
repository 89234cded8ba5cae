#include "flockvi/simulation.hpp"

namespace flockvi {

void simulate(const Scenario& scenario, const IntegratorSpec& spec, const StepObserver& observer) {
  scenario.validate();
  const FormationGraph graph = scenario.graph();
  Propagator prop(graph, scenario.dim, scenario.initial_positions, scenario.initial_velocities,
                  scenario.h, spec);
  Eigen::VectorXd q_k = prop.position();
  for (std::size_t k = 0; k <= scenario.steps; ++k) {
    prop.advance();
    observer(k, q_k, prop.position());
    q_k = prop.position();
  }
}

TrajectoryRecord run(const Scenario& scenario, const IntegratorSpec& spec) {
  TrajectoryRecord rec;
  rec.scenario = scenario;
  rec.integrator_label = spec.label();
  const FormationGraph graph = scenario.graph();
  const int dim = scenario.dim;
  const double h = scenario.h;
  rec.samples.reserve(scenario.steps / scenario.record_every + 1);
  simulate(scenario, spec, [&](std::size_t k, const Eigen::VectorXd& q_k, const Eigen::VectorXd& q_next) {
    const bool recorded = k % scenario.record_every == 0;
    if (!recorded && k != scenario.steps) return;
    const double t = static_cast<double>(k) * h;
    Sample sample{k, t, q_k,
                  evaluate_step(t, StackedPosition(dim, q_k), StackedPosition(dim, q_next), graph, h)};
    if (k == scenario.steps) rec.final_state = sample;
    if (recorded) rec.samples.push_back(std::move(sample));
  });
  return rec;
}

TrajectoryRecord run(const Scenario& scenario) { return run(scenario, IntegratorSpec::from(scenario)); }

}  // namespace flockvi
