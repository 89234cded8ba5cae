#include "flockvi/dynamics.hpp"

namespace flockvi {

double pair_potential(PointRef qi, PointRef qj, double distance) {
  const double gamma = (qi - qj).squaredNorm() - distance * distance;
  return 0.25 * gamma * gamma;
}

Eigen::VectorXd pair_gradient(PointRef qi, PointRef qj, double distance) {
  const Eigen::VectorXd rel = qi - qj;
  return (rel.squaredNorm() - distance * distance) * rel;
}

namespace kernels {

void add_gamma(const Eigen::VectorXd& q, int dim, const FormationGraph& graph, double scale,
               Eigen::VectorXd& out) {
  // Each edge contributes +g to its tail and -g to its head, so the blocks
  // cancel pairwise.
  for (const Edge& e : graph.edges()) {
    const Eigen::Index ti = static_cast<Eigen::Index>(e.tail) * dim;
    const Eigen::Index hi = static_cast<Eigen::Index>(e.head) * dim;
    double sq = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double r = q[ti + a] - q[hi + a];
      sq += r * r;
    }
    const double gamma = scale * (sq - e.distance * e.distance);
    for (int a = 0; a < dim; ++a) {
      const double g = gamma * (q[ti + a] - q[hi + a]);
      out[ti + a] += g;
      out[hi + a] -= g;
    }
  }
}

void add_laplacian(const Eigen::VectorXd& x, int dim, const FormationGraph& graph, double scale,
                   Eigen::VectorXd& out) {
  for (const Edge& e : graph.edges()) {
    const Eigen::Index ti = static_cast<Eigen::Index>(e.tail) * dim;
    const Eigen::Index hi = static_cast<Eigen::Index>(e.head) * dim;
    for (int a = 0; a < dim; ++a) {
      const double d = scale * (x[ti + a] - x[hi + a]);
      out[ti + a] += d;
      out[hi + a] -= d;
    }
  }
}

}  // namespace kernels

Eigen::VectorXd stacked_gamma(const StackedPosition& q, const FormationGraph& graph) {
  require_shape(q, graph, "position");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(q.coords().size());
  kernels::add_gamma(q.coords(), q.dim(), graph, 1.0, out);
  return out;
}

Eigen::VectorXd accelerations(const StackedPosition& q, const StackedVelocity& v,
                              const FormationGraph& graph, DynamicsCoefficients coeffs) {
  require_shape(q, graph, "position");
  require_shape(v, graph, "velocity");
  if (q.dim() != v.dim()) throw ShapeError("position and velocity dimensions differ");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(q.coords().size());
  kernels::add_gamma(q.coords(), q.dim(), graph, -coeffs.potential, out);
  kernels::add_laplacian(v.coords(), v.dim(), graph, -coeffs.damping, out);
  return out;
}

double agent_energy(AgentIndex i, const StackedPosition& q, const StackedVelocity& v,
                    const FormationGraph& graph) {
  require_shape(q, graph, "position");
  require_shape(v, graph, "velocity");
  double potential = 0.0;
  for (const Neighbor& n : graph.adjacency(i)) {
    potential += pair_potential(q.agent(i), q.agent(n.agent), n.distance);
  }
  return 0.5 * v.agent(i).squaredNorm() + 0.5 * potential;
}

double total_energy(const StackedPosition& q, const StackedVelocity& v, const FormationGraph& graph) {
  double total = 0.0;
  for (AgentIndex i = 0; i < graph.agent_count(); ++i) total += agent_energy(i, q, v, graph);
  return total;
}

double total_potential(const StackedPosition& q, const FormationGraph& graph) {
  require_shape(q, graph, "position");
  double total = 0.0;
  for (const Edge& e : graph.edges()) {
    total += pair_potential(q.agent(e.tail), q.agent(e.head), e.distance);
  }
  return total;
}

}  // namespace flockvi
