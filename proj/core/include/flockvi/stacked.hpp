#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "flockvi/errors.hpp"
#include "flockvi/graph.hpp"

namespace flockvi {

/**
 * Flat agent-major vector in R^(dim * agents): coordinates of agent 0,
 * then agent 1, and so on. The tag keeps positions and velocities apart.
 */
template <class Tag>
class Stacked {
 public:
  Stacked() = default;

  Stacked(int dim, Eigen::VectorXd coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ <= 0) throw ShapeError("spatial dimension must be positive");
    if (coords_.size() % dim_ != 0) {
      throw ShapeError("stacked vector of length " + std::to_string(coords_.size()) +
                       " is not a multiple of dimension " + std::to_string(dim_));
    }
  }

  static Stacked zeros(int dim, std::size_t agents) {
    return Stacked(dim, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(agents) * dim));
  }

  int dim() const { return dim_; }
  std::size_t agents() const { return dim_ == 0 ? 0 : static_cast<std::size_t>(coords_.size() / dim_); }

  const Eigen::VectorXd& coords() const { return coords_; }
  Eigen::VectorXd& coords() { return coords_; }

  auto agent(AgentIndex i) const { return coords_.segment(static_cast<Eigen::Index>(i) * dim_, dim_); }
  auto agent(AgentIndex i) { return coords_.segment(static_cast<Eigen::Index>(i) * dim_, dim_); }

  friend bool operator==(const Stacked& a, const Stacked& b) {
    return a.dim_ == b.dim_ && a.coords_.size() == b.coords_.size() && a.coords_ == b.coords_;
  }

 private:
  int dim_ = 0;
  Eigen::VectorXd coords_;
};

struct PositionTag;
struct VelocityTag;
using StackedPosition = Stacked<PositionTag>;
using StackedVelocity = Stacked<VelocityTag>;

/// Throws ShapeError unless `x` holds one `dim`-vector per agent of `graph`.
template <class Tag>
void require_shape(const Stacked<Tag>& x, const FormationGraph& graph, const char* what) {
  if (x.agents() != graph.agent_count()) {
    throw ShapeError(std::string(what) + " has " + std::to_string(x.agents()) +
                     " agents, graph has " + std::to_string(graph.agent_count()));
  }
}

}  // namespace flockvi
