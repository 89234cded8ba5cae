#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "flockvi/errors.hpp"

namespace flockvi {

using AgentIndex = std::size_t;

/// Undirected edge with its desired inter-agent distance. Agents are
/// 0-based; `tail < head` after graph construction.
struct Edge {
  AgentIndex tail = 0;
  AgentIndex head = 0;
  double distance = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A neighbor of an agent together with the desired distance to it.
struct Neighbor {
  AgentIndex agent = 0;
  double distance = 0.0;
};

/**
 * Static, connected, undirected formation graph.
 *
 * Immutable after construction. Edge order is the order given to build();
 * each edge is stored with tail = smaller index, which fixes the sign
 * convention of the incidence matrix (+1 at the tail, -1 at the head).
 */
class FormationGraph {
 public:
  /// Validates and builds the graph. Edges may be given in either
  /// orientation. Throws SelfLoopError, DuplicateEdgeError,
  /// AgentIndexError, NonPositiveDistanceError or DisconnectedGraphError.
  static FormationGraph build(std::size_t agent_count, std::span<const Edge> edges);

  std::size_t agent_count() const { return agent_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// s x |E| node-edge incidence matrix.
  const Eigen::MatrixXd& incidence() const { return incidence_; }
  /// s x s graph Laplacian, equal to incidence * incidence^T.
  const Eigen::MatrixXd& laplacian() const { return laplacian_; }

  /// Sorted neighbor indices of agent i. Throws AgentIndexError.
  std::vector<AgentIndex> neighbors(AgentIndex i) const;
  /// Neighbors of i with their desired distances, sorted by index.
  std::span<const Neighbor> adjacency(AgentIndex i) const;

 private:
  FormationGraph() = default;

  std::size_t agent_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  Eigen::MatrixXd incidence_;
  Eigen::MatrixXd laplacian_;
};

/// Kronecker product L (x) I_dim in the agent-major stacked layout.
Eigen::MatrixXd inflated_laplacian(const FormationGraph& graph, int dim);

}  // namespace flockvi
