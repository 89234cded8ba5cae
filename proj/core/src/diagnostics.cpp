#include "flockvi/diagnostics.hpp"

#include <algorithm>

#include "flockvi/dynamics.hpp"

namespace flockvi {

double discrete_energy(AgentIndex i, const StackedPosition& q_k, const StackedPosition& q_next,
                       const FormationGraph& graph, double h) {
  if (!(h > 0.0)) throw ValidationError("step size must be positive");
  require_shape(q_k, graph, "q_k");
  require_shape(q_next, graph, "q_next");
  const double kinetic = (q_next.agent(i) - q_k.agent(i)).squaredNorm() / (2.0 * h);
  double potential = 0.0;
  for (const Neighbor& n : graph.adjacency(i)) {
    const double gamma = (q_k.agent(i) - q_k.agent(n.agent)).squaredNorm() - n.distance * n.distance;
    potential += gamma * gamma;
  }
  return kinetic + 0.25 * h * potential;
}

Eigen::VectorXd edge_errors(const StackedPosition& q, const FormationGraph& graph) {
  require_shape(q, graph, "position");
  Eigen::VectorXd out(static_cast<Eigen::Index>(graph.edge_count()));
  Eigen::Index k = 0;
  for (const Edge& e : graph.edges()) {
    out[k++] = (q.agent(e.tail) - q.agent(e.head)).norm() - e.distance;
  }
  return out;
}

double velocity_disagreement(const StackedVelocity& v) {
  double worst = 0.0;
  for (AgentIndex i = 0; i < v.agents(); ++i) {
    for (AgentIndex j = i + 1; j < v.agents(); ++j) {
      worst = std::max(worst, (v.agent(i) - v.agent(j)).norm());
    }
  }
  return worst;
}

Eigen::VectorXd momentum(const StackedPosition& q_k, const StackedPosition& q_next, double h) {
  if (!(h > 0.0)) throw ValidationError("step size must be positive");
  if (q_k.dim() != q_next.dim() || q_k.agents() != q_next.agents()) {
    throw ShapeError("momentum needs two positions of the same shape");
  }
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(q_k.dim());
  for (AgentIndex i = 0; i < q_k.agents(); ++i) sum += q_next.agent(i) - q_k.agent(i);
  return sum / h;
}

StackedVelocity forward_velocity(const StackedPosition& q_k, const StackedPosition& q_next, double h) {
  if (q_k.dim() != q_next.dim() || q_k.agents() != q_next.agents()) {
    throw ShapeError("forward difference needs two positions of the same shape");
  }
  return StackedVelocity(q_k.dim(), (q_next.coords() - q_k.coords()) / h);
}

double trapezoidal_energy(const StackedPosition& q_k, const StackedPosition& q_next,
                          const FormationGraph& graph, double h) {
  const double kinetic = 0.5 * (q_next.coords() - q_k.coords()).squaredNorm() / (h * h);
  return kinetic + 0.5 * (total_potential(q_k, graph) + total_potential(q_next, graph));
}

StepDiagnostics evaluate_step(double time, const StackedPosition& q_k, const StackedPosition& q_next,
                              const FormationGraph& graph, double h) {
  StepDiagnostics d;
  d.time = time;
  const auto s = static_cast<Eigen::Index>(graph.agent_count());
  d.per_agent_discrete_energy.resize(s);
  for (Eigen::Index i = 0; i < s; ++i) {
    d.per_agent_discrete_energy[i] = discrete_energy(static_cast<AgentIndex>(i), q_k, q_next, graph, h);
  }
  d.total_discrete_energy = d.per_agent_discrete_energy.sum();
  d.edge_errors = edge_errors(q_k, graph);
  d.velocity_disagreement = velocity_disagreement(forward_velocity(q_k, q_next, h));
  d.momentum = momentum(q_k, q_next, h);
  return d;
}

}  // namespace flockvi

namespace flockvi::kernels {

double total_discrete_energy(const Eigen::VectorXd& q_k, const Eigen::VectorXd& q_next, int dim,
                             const FormationGraph& graph, double h) {
  const double kinetic = (q_next - q_k).squaredNorm() / (2.0 * h);
  double gamma_sq = 0.0;
  for (const Edge& e : graph.edges()) {
    const auto ti = static_cast<Eigen::Index>(e.tail) * dim;
    const auto hi = static_cast<Eigen::Index>(e.head) * dim;
    const double gamma = (q_k.segment(ti, dim) - q_k.segment(hi, dim)).squaredNorm() - e.distance * e.distance;
    gamma_sq += gamma * gamma;
  }
  // Each edge appears in the sums of both of its agents.
  return kinetic + 0.5 * h * gamma_sq;
}

}  // namespace flockvi::kernels
