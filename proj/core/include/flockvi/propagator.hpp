#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "flockvi/integrators.hpp"

namespace flockvi {

struct Scenario;

/// Integrator choice plus the knobs that are not part of a scenario file.
struct IntegratorSpec {
  IntegratorKind kind = IntegratorKind::kVariational;
  Variant variant = Variant::kPaper;
  Bootstrap bootstrap = Bootstrap::kForwardDifference;
  /// System integrated by euler and rk4.
  DynamicsCoefficients target = DynamicsCoefficients::nominal();
  /// Internal euler/rk4 steps per recorded step h.
  std::size_t substeps = 1;

  static IntegratorSpec from(const Scenario& scenario);
  /// "variational-paper", "variational-consistent", "euler" or "rk4".
  std::string label() const;
};

/**
 * Advances positions q_0, q_1, ... at a fixed step h, whatever the
 * underlying integrator. position() after k calls to advance() is q_k.
 */
class Propagator {
 public:
  Propagator(const FormationGraph& graph, int dim, const Eigen::VectorXd& q0,
             const Eigen::VectorXd& v0, double h, const IntegratorSpec& spec);

  void advance();
  const Eigen::VectorXd& position() const;
  std::size_t step() const { return step_; }

 private:
  struct Variational {
    VariationalStepper stepper;
    Eigen::VectorXd prev;
    Eigen::VectorXd curr;
  };
  struct Euler {
    EulerStepper stepper;
    Eigen::VectorXd q;
    Eigen::VectorXd v;
    std::size_t substeps;
  };
  struct Rk4 {
    Rk4Stepper stepper;
    Eigen::VectorXd q;
    Eigen::VectorXd v;
    std::size_t substeps;
  };

  std::variant<Variational, Euler, Rk4> state_;
  std::size_t step_ = 0;
};

}  // namespace flockvi
