#include "flockvi/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <utility>

namespace flockvi {
namespace {

std::string edge_label(const Edge& e) {
  // Reported 1-based, as agents are numbered in scenario files.
  return "(" + std::to_string(e.tail + 1) + ", " + std::to_string(e.head + 1) + ")";
}

bool is_connected(std::size_t agent_count,
                  const std::vector<std::vector<Neighbor>>& adjacency) {
  std::vector<bool> seen(agent_count, false);
  std::queue<AgentIndex> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const AgentIndex i = frontier.front();
    frontier.pop();
    for (const Neighbor& n : adjacency[i]) {
      if (!seen[n.agent]) {
        seen[n.agent] = true;
        ++reached;
        frontier.push(n.agent);
      }
    }
  }
  return reached == agent_count;
}

}  // namespace

FormationGraph FormationGraph::build(std::size_t agent_count, std::span<const Edge> edges) {
  if (agent_count == 0) {
    throw AgentIndexError("formation graph needs at least one agent");
  }

  FormationGraph g;
  g.agent_count_ = agent_count;
  g.edges_.reserve(edges.size());
  g.adjacency_.resize(agent_count);

  std::set<std::pair<AgentIndex, AgentIndex>> seen;
  for (const Edge& raw : edges) {
    Edge e{std::min(raw.tail, raw.head), std::max(raw.tail, raw.head), raw.distance};
    if (e.head >= agent_count) {
      throw AgentIndexError("edge " + edge_label(raw) + " references an agent outside 1.." +
                            std::to_string(agent_count));
    }
    if (e.tail == e.head) {
      throw SelfLoopError("edge " + edge_label(raw) + " is a self loop");
    }
    if (!(e.distance > 0.0)) {
      throw NonPositiveDistanceError("edge " + edge_label(raw) +
                                     " has non-positive desired distance");
    }
    if (!seen.emplace(e.tail, e.head).second) {
      throw DuplicateEdgeError("edge " + edge_label(e) + " appears more than once");
    }
    g.edges_.push_back(e);
    g.adjacency_[e.tail].push_back({e.head, e.distance});
    g.adjacency_[e.head].push_back({e.tail, e.distance});
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.agent < b.agent; });
  }

  if (!is_connected(agent_count, g.adjacency_)) {
    throw DisconnectedGraphError("formation graph with " + std::to_string(agent_count) +
                                 " agents is not connected");
  }

  const auto m = static_cast<Eigen::Index>(g.edges_.size());
  const auto s = static_cast<Eigen::Index>(agent_count);
  g.incidence_ = Eigen::MatrixXd::Zero(s, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Edge& e = g.edges_[static_cast<std::size_t>(k)];
    g.incidence_(static_cast<Eigen::Index>(e.tail), k) = 1.0;
    g.incidence_(static_cast<Eigen::Index>(e.head), k) = -1.0;
  }
  g.laplacian_ = g.incidence_ * g.incidence_.transpose();
  return g;
}

std::vector<AgentIndex> FormationGraph::neighbors(AgentIndex i) const {
  std::vector<AgentIndex> out;
  for (const Neighbor& n : adjacency(i)) out.push_back(n.agent);
  return out;
}

std::span<const Neighbor> FormationGraph::adjacency(AgentIndex i) const {
  if (i >= agent_count_) {
    throw AgentIndexError("agent index " + std::to_string(i) + " out of range");
  }
  return adjacency_[i];
}

Eigen::MatrixXd inflated_laplacian(const FormationGraph& graph, int dim) {
  if (dim <= 0) throw ShapeError("spatial dimension must be positive");
  const auto s = static_cast<Eigen::Index>(graph.agent_count());
  const Eigen::MatrixXd& lap = graph.laplacian();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(s * dim, s * dim);
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index j = 0; j < s; ++j) {
      out.block(i * dim, j * dim, dim, dim).diagonal().setConstant(lap(i, j));
    }
  }
  return out;
}

}  // namespace flockvi
