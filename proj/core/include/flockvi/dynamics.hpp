#pragma once

#include <Eigen/Dense>

#include "flockvi/graph.hpp"
#include "flockvi/stacked.hpp"

namespace flockvi {

using PointRef = Eigen::Ref<const Eigen::VectorXd>;

/// V_ij = 1/4 (|qi - qj|^2 - d^2)^2.
double pair_potential(PointRef qi, PointRef qj, double distance);

/// Gradient of pair_potential with respect to qi: (|qi - qj|^2 - d^2)(qi - qj).
Eigen::VectorXd pair_gradient(PointRef qi, PointRef qj, double distance);

/// Scales on the two force terms of q'' = -damping * Lbar q' - potential * grad V.
/// {1, 1} is the shape-control/flocking model; {2, 1/2} is the system the
/// paper-coefficient variational scheme actually converges to.
struct DynamicsCoefficients {
  double damping = 1.0;
  double potential = 1.0;

  static constexpr DynamicsCoefficients nominal() { return {1.0, 1.0}; }
  static constexpr DynamicsCoefficients paper_modified() { return {2.0, 0.5}; }
};

/// Stacked gradient of the total formation potential: block i is
/// sum over neighbors j of (|qi - qj|^2 - d_ij^2)(qi - qj).
Eigen::VectorXd stacked_gamma(const StackedPosition& q, const FormationGraph& graph);

/// Continuous dynamics: -potential * stacked_gamma(q) - damping * Lbar v.
Eigen::VectorXd accelerations(const StackedPosition& q, const StackedVelocity& v,
                              const FormationGraph& graph,
                              DynamicsCoefficients coeffs = DynamicsCoefficients::nominal());

/// E_i = 1/2 |v_i|^2 + 1/2 sum_{j in N_i} V_ij.
double agent_energy(AgentIndex i, const StackedPosition& q, const StackedVelocity& v,
                    const FormationGraph& graph);
double total_energy(const StackedPosition& q, const StackedVelocity& v, const FormationGraph& graph);

/// Total potential sum over edges of V_ij.
double total_potential(const StackedPosition& q, const FormationGraph& graph);

namespace kernels {

// Allocation-free building blocks on raw agent-major vectors; shapes are
// the caller's responsibility.

/// out += scale * stacked_gamma(q).
void add_gamma(const Eigen::VectorXd& q, int dim, const FormationGraph& graph, double scale,
               Eigen::VectorXd& out);

/// out += scale * Lbar x.
void add_laplacian(const Eigen::VectorXd& x, int dim, const FormationGraph& graph, double scale,
                   Eigen::VectorXd& out);

}  // namespace kernels
}  // namespace flockvi
