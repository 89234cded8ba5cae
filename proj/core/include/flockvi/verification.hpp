#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flockvi/errors.hpp"
#include "flockvi/integrators.hpp"
#include "flockvi/propagator.hpp"
#include "flockvi/scenario.hpp"

namespace flockvi {

class ConvergenceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The continuous system an integrator configuration converges to: the
/// paper-coefficient variational scheme tracks q'' = -2 Lbar q' - grad V / 2,
/// everything else the nominal model.
DynamicsCoefficients target_system(IntegratorKind kind, Variant variant);

/// Number of reference steps per scenario step; throws ConvergenceError
/// unless h_ref <= h / 10 and h is an integer multiple of h_ref.
std::size_t reference_substeps(double h, double h_ref);

/// RK4 trajectory at step h_ref, recorded at the scenario's sampling times.
TrajectoryRecord reference_solution(const Scenario& scenario, double h_ref,
                                    DynamicsCoefficients target = DynamicsCoefficients::nominal());

/// Position after scenario.steps steps.
Eigen::VectorXd terminal_position(const Scenario& scenario, const IntegratorSpec& spec);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// 95% Student-t half-width from the residual standard error.
  double half_width = 0.0;
};

/// Ordinary least squares of log(y) against log(x); needs >= 3 points.
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct ConvergenceReport {
  IntegratorKind integrator = IntegratorKind::kVariational;
  Variant variant = Variant::kPaper;
  Bootstrap bootstrap = Bootstrap::kDiscreteLegendre;
  double horizon = 0.0;
  double reference_step = 0.0;
  std::vector<double> steps;   ///< strictly decreasing
  std::vector<double> errors;  ///< terminal |q_h(T) - q_ref(T)|
  double slope = 0.0;
  double half_width = 0.0;

  std::string label() const;
  std::string to_text() const;
  std::string to_csv() const;
};

struct ConvergenceOptions {
  double horizon = 1.0;
  /// Reference step is the smallest step divided by this.
  std::size_t reference_refinement = 100;
  /// Start used by variational runs.
  Bootstrap bootstrap = Bootstrap::kDiscreteLegendre;
  /// Run the step sizes on separate threads.
  bool parallel = true;
};

/// Terminal-error convergence study against an RK4 reference of
/// target_system(integrator, variant), all runs starting from the
/// scenario's initial conditions and ending at options.horizon.
ConvergenceReport convergence_order(IntegratorKind integrator, Variant variant, const Scenario& scenario,
                                    std::span<const double> steps, const ConvergenceOptions& options = {});

/// Per-step max |discrete_el_residual| along a variational run, for the
/// interior triples k = 1 .. steps - 1.
std::vector<double> residual_audit(const Scenario& scenario, Variant variant,
                                   ResidualAssembly assembly = ResidualAssembly::kAsPrinted,
                                   Bootstrap bootstrap = Bootstrap::kForwardDifference);

/// Metrics from running two integrators side by side on one scenario.
struct LockstepComparison {
  double max_position_discrepancy = 0.0;       ///< max_k |q_a(k) - q_b(k)|
  double terminal_position_discrepancy = 0.0;  ///< at k = steps
  double max_energy_discrepancy = 0.0;         ///< max_k |E^d_a(k) - E^d_b(k)| (totals)
};

LockstepComparison compare_lockstep(const Scenario& scenario, const IntegratorSpec& a,
                                    const IntegratorSpec& b);

/// One pass of `reference` against every candidate; result i belongs to
/// candidates[i]. A candidate that produces non-finite positions gets
/// infinite discrepancies.
std::vector<LockstepComparison> compare_lockstep(const Scenario& scenario, const IntegratorSpec& reference,
                                                 std::span<const IntegratorSpec> candidates);

}  // namespace flockvi
