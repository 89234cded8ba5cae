#pragma once

#include <Eigen/Dense>

#include "flockvi/graph.hpp"
#include "flockvi/stacked.hpp"

namespace flockvi {

/// Per-step monitors. Velocities are forward differences (q_{k+1} - q_k) / h.
struct StepDiagnostics {
  double time = 0.0;
  Eigen::VectorXd per_agent_discrete_energy;  ///< E_i^d, one per agent
  double total_discrete_energy = 0.0;
  Eigen::VectorXd edge_errors;                ///< |q_i - q_j| - d_ij, graph edge order
  double velocity_disagreement = 0.0;
  Eigen::VectorXd momentum;                   ///< R^n
};

/**
 * Trapezoidal-rule discrete energy of agent i over [t_k, t_{k+1}]:
 *
 *   E_i^d = |q_{k+1}^i - q_k^i|^2 / (2h) + (h/4) sum_j (|q_k^i - q_k^j|^2 - d_ij^2)^2
 *
 * This carries an overall factor h relative to a continuous energy, and its
 * potential part equals h * sum_j V_ij (twice the per-agent share used in
 * agent_energy). Divide by h for continuous units.
 */
double discrete_energy(AgentIndex i, const StackedPosition& q_k, const StackedPosition& q_next,
                       const FormationGraph& graph, double h);

Eigen::VectorXd edge_errors(const StackedPosition& q, const FormationGraph& graph);

/// Maximum pairwise |v_i - v_j|.
double velocity_disagreement(const StackedVelocity& v);

/// (1/h) sum_i (q_{k+1}^i - q_k^i).
Eigen::VectorXd momentum(const StackedPosition& q_k, const StackedPosition& q_next, double h);

StackedVelocity forward_velocity(const StackedPosition& q_k, const StackedPosition& q_next, double h);

/// |dq/h|^2 / 2 + (V(q_k) + V(q_{k+1})) / 2 with V the total potential.
/// Same units as total_energy; used as a secondary energy readout.
double trapezoidal_energy(const StackedPosition& q_k, const StackedPosition& q_next,
                          const FormationGraph& graph, double h);

StepDiagnostics evaluate_step(double time, const StackedPosition& q_k, const StackedPosition& q_next,
                              const FormationGraph& graph, double h);

}  // namespace flockvi

namespace flockvi::kernels {

/// Sum over agents of discrete_energy, without allocating.
double total_discrete_energy(const Eigen::VectorXd& q_k, const Eigen::VectorXd& q_next, int dim,
                             const FormationGraph& graph, double h);

}  // namespace flockvi::kernels
