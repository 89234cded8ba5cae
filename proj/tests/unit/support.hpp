#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "flockvi/flockvi.hpp"

namespace flockvi::test {

inline FormationGraph triangle_graph(double d = 10.0) {
  const Edge edges[] = {{0, 1, d}, {1, 2, d}, {0, 2, d}};
  return FormationGraph::build(3, edges);
}

inline FormationGraph single_edge(double d) {
  const Edge edges[] = {{0, 1, d}};
  return FormationGraph::build(2, edges);
}

inline Eigen::VectorXd paper_q0() {
  Eigen::VectorXd q(6);
  q << 5.03, -6.56, 2.02, 2.22, -2.33, 12.28;
  return q;
}

inline Eigen::VectorXd paper_v0() {
  Eigen::VectorXd v(6);
  v << 2.80, -2.90, 0.19, 2.07, -0.67, 1.67;
  return v;
}

/// Equilateral triangle of side d, a configuration where every edge is
/// at its desired length.
inline Eigen::VectorXd equilateral(double d, double x0 = 0.0, double y0 = 0.0) {
  Eigen::VectorXd q(6);
  q << x0, y0, x0 + d, y0, x0 + 0.5 * d, y0 + 0.5 * std::sqrt(3.0) * d;
  return q;
}

/// Triangle with sides 3, 4, 5 placed at (0,0), (3,0), (0,4): every
/// potential term vanishes exactly in floating point.
inline Scenario exact_rest_scenario(std::size_t steps) {
  Scenario sc;
  sc.dim = 2;
  sc.agent_count = 3;
  sc.edges = {{0, 1, 3.0}, {1, 2, 5.0}, {0, 2, 4.0}};
  sc.initial_positions = (Eigen::VectorXd(6) << 0, 0, 3, 0, 0, 4).finished();
  sc.initial_velocities = Eigen::VectorXd::Zero(6);
  sc.h = 0.005;
  sc.steps = steps;
  return sc;
}

/// Random connected graph: a random spanning tree plus extra edges, with
/// desired distances taken from a random reference configuration so the
/// shape is realizable.
struct RandomFormation {
  FormationGraph graph;
  int dim;
  Eigen::VectorXd shape;  ///< a configuration at the desired distances
};

inline RandomFormation random_formation(std::mt19937_64& rng, std::size_t s, int dim) {
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  Eigen::VectorXd shape(static_cast<Eigen::Index>(s) * dim);
  for (Eigen::Index k = 0; k < shape.size(); ++k) shape[k] = coord(rng);
  const auto dist = [&](std::size_t i, std::size_t j) {
    return (shape.segment(static_cast<Eigen::Index>(i) * dim, dim) -
            shape.segment(static_cast<Eigen::Index>(j) * dim, dim))
        .norm();
  };
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(s, std::vector<bool>(s, false));
  for (std::size_t i = 1; i < s; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    const std::size_t j = pick(rng);
    edges.push_back({j, i, dist(i, j)});
    used[i][j] = used[j][i] = true;
  }
  std::uniform_int_distribution<std::size_t> any(0, s - 1);
  for (std::size_t extra = 0; extra < s; ++extra) {
    const std::size_t i = any(rng), j = any(rng);
    if (i == j || used[i][j]) continue;
    edges.push_back({i, j, dist(i, j)});
    used[i][j] = used[j][i] = true;
  }
  return {FormationGraph::build(s, edges), dim, shape};
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::VectorXd x(n);
  for (Eigen::Index k = 0; k < n; ++k) x[k] = normal(rng);
  return x;
}

/// 1_s (x) w.
inline Eigen::VectorXd uniform_stack(std::size_t s, const Eigen::VectorXd& w) {
  return w.replicate(static_cast<Eigen::Index>(s), 1);
}

}  // namespace flockvi::test
