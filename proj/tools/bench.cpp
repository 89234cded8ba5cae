#include "bench.hpp"

#include <algorithm>
#include <chrono>

#include "flockvi/integrators.hpp"

namespace flockvi::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Keeps the optimizer from discarding the stepping loops.
volatile double g_sink = 0.0;

// Shared hosts make single timings noisy; report the fastest of a few
// repetitions after a short warm-up.
constexpr int kRepetitions = 3;

template <class Stepper>
double best_time(Stepper& stepper, const Eigen::VectorXd& a0, const Eigen::VectorXd& b0, std::size_t steps) {
  double best = 0.0;
  for (int r = -1; r < kRepetitions; ++r) {
    Eigen::VectorXd a = a0;
    Eigen::VectorXd b = b0;
    const std::size_t n = r < 0 ? std::min<std::size_t>(steps, 10000) : steps;
    const auto start = Clock::now();
    for (std::size_t k = 0; k < n; ++k) stepper.step(a, b);
    const double t = seconds_since(start);
    g_sink = g_sink + a[0] + b[0];
    if (r == 0 || (r > 0 && t < best)) best = t;
  }
  return best;
}

template <class Stepper>
BenchRow time_phase(const std::string& name, Stepper stepper, const Scenario& sc, std::size_t steps) {
  return {name, steps, best_time(stepper, sc.initial_positions, sc.initial_velocities, steps), 0.0};
}

BenchRow time_variational(const Scenario& sc, Variant variant, std::size_t steps) {
  const FormationGraph graph = sc.graph();
  const auto setup_start = Clock::now();
  VariationalStepper stepper(graph, sc.dim, sc.h, variant);
  const double setup = seconds_since(setup_start);
  const Eigen::VectorXd prev = sc.initial_positions;
  const Eigen::VectorXd curr = prev + sc.h * sc.initial_velocities;
  return {"variational-" + std::string(to_string(variant)), steps, best_time(stepper, prev, curr, steps), setup};
}

}  // namespace

std::vector<BenchRow> bench_integrators(const Scenario& sc, std::size_t steps) {
  sc.validate();
  const FormationGraph graph = sc.graph();
  std::vector<BenchRow> rows;
  rows.push_back(time_variational(sc, Variant::kPaper, steps));
  rows.push_back(time_variational(sc, Variant::kConsistent, steps));
  rows.push_back(time_phase("euler", EulerStepper(graph, sc.dim, sc.h), sc, steps));
  rows.push_back(time_phase("rk4", Rk4Stepper(graph, sc.dim, sc.h), sc, steps));
  return rows;
}

}  // namespace flockvi::cli
