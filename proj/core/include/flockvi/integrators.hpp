#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "flockvi/dynamics.hpp"
#include "flockvi/graph.hpp"
#include "flockvi/stacked.hpp"

namespace flockvi {

enum class IntegratorKind { kVariational, kEuler, kRk4 };

/**
 * Coefficient assignment of the variational update
 *   (I + alpha Lbar) q_{k+1} = 2 q_k - (I - alpha Lbar) q_{k-1} - beta Gamma(q_k).
 *
 * kPaper:      alpha = h,   beta = h^2 / 2 (printed difference equation).
 * kConsistent: alpha = h/2, beta = h^2     (central differences of the
 *              continuous model).
 */
enum class Variant { kPaper, kConsistent };

/// How q_1 is obtained from (q_0, v_0).
enum class Bootstrap {
  kForwardDifference,  ///< q_1 = q_0 + h v_0
  kDiscreteLegendre,   ///< (I + alpha Lbar)(q_1 - q_0) = h v_0 - (beta / 2) Gamma(q_0)
};

std::string_view to_string(IntegratorKind kind);
std::string_view to_string(Variant variant);
std::string_view to_string(Bootstrap bootstrap);
std::optional<IntegratorKind> parse_integrator(std::string_view name);
std::optional<Variant> parse_variant(std::string_view name);
std::optional<Bootstrap> parse_bootstrap(std::string_view name);

/// Two consecutive positions (q_{k-1}, q_k) of the discrete flow.
struct DiscretePair {
  StackedPosition prev;
  StackedPosition curr;
  double h = 0.0;
};

/// First-order state for Euler and Runge-Kutta.
struct PhaseState {
  StackedPosition q;
  StackedVelocity v;
};

/**
 * Precomputed linear structure of the variational update. Since
 * I + alpha Lbar = (I_s + alpha L) (x) I_n, only the s x s matrix is
 * factored and every stacked solve runs as n solves against it.
 */
class StepperMatrices {
 public:
  static StepperMatrices precompute(const FormationGraph& graph, double h, Variant variant);

  Variant variant() const { return variant_; }
  double h() const { return h_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// I_s + alpha L.
  const Eigen::MatrixXd& system_matrix() const { return system_; }
  /// I_s - alpha L.
  const Eigen::MatrixXd& mat_b() const { return mat_b_; }

  /// x <- (I + alpha Lbar)^{-1} x for an agent-major stacked x.
  void solve_in_place(Eigen::VectorXd& x, int dim) const;
  Eigen::VectorXd solve(const Eigen::VectorXd& b, int dim) const;
  /// x <- (I + alpha Lbar)^{-1} b through the precomputed dense inverse;
  /// cheaper than the triangular solves for the small systems simulated here.
  void apply_inverse(const Eigen::VectorXd& b, Eigen::VectorXd& x, int dim) const;

 private:
  Variant variant_ = Variant::kPaper;
  double h_ = 0.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  Eigen::MatrixXd system_;
  Eigen::MatrixXd mat_b_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
  Eigen::MatrixXd inverse_;
};

StepperMatrices precompute_stepper(const FormationGraph& graph, double h, Variant variant);

/// q_prev = q0, q_curr = q0 + h v0.
DiscretePair bootstrap(const StackedPosition& q0, const StackedVelocity& v0, double h);

/// Second-order start from the discrete Legendre transform of the forced
/// discrete Lagrangian matching `matrices`.
DiscretePair bootstrap_legendre(const StackedPosition& q0, const StackedVelocity& v0,
                                const FormationGraph& graph, const StepperMatrices& matrices);

/// One step of the discrete flow: (q_{k-1}, q_k) -> (q_k, q_{k+1}).
DiscretePair vi_step(const DiscretePair& pair, const FormationGraph& graph,
                     const StepperMatrices& matrices);

PhaseState euler_step(const PhaseState& state, const FormationGraph& graph, double h,
                      DynamicsCoefficients coeffs = DynamicsCoefficients::nominal());

/// Classical fourth-order Runge-Kutta on the first-order form.
PhaseState rk4_step(const PhaseState& state, const FormationGraph& graph, double h,
                    DynamicsCoefficients coeffs = DynamicsCoefficients::nominal());

/// Which discrete Euler-Lagrange assembly discrete_el_residual evaluates.
enum class ResidualAssembly {
  /// Kinetic trapezoidal L_d, V^d_ij at q_k without an h factor, and
  /// F+/- = (l_ij / h)(relative increments), exactly as printed.
  kAsPrinted,
  /// Trapezoidal L_d including (h/2)(V(q_k) + V(q_{k+1})) and trapezoidal
  /// forces F+/- = -(1/2) Lbar (q_{k+1} - q_k). The consistent variant
  /// satisfies it identically.
  kTrapezoidal,
};

/// D1 L_d(q_k, q_{k+1}) + D2 L_d(q_{k-1}, q_k) + potential and force terms.
Eigen::VectorXd discrete_el_residual(const StackedPosition& q_prev, const StackedPosition& q_curr,
                                     const StackedPosition& q_next, const FormationGraph& graph,
                                     double h,
                                     ResidualAssembly assembly = ResidualAssembly::kAsPrinted);

/// In-place variational stepper with preallocated workspace. Works in
/// increment form, (I + alpha Lbar) dq_{k+1} = (I - alpha Lbar) dq_k - beta Gamma(q_k),
/// which is algebraically the update above with less cancellation.
class VariationalStepper {
 public:
  VariationalStepper(FormationGraph graph, int dim, double h, Variant variant);

  const StepperMatrices& matrices() const { return matrices_; }
  const FormationGraph& graph() const { return graph_; }
  int dim() const { return dim_; }

  /// (prev, curr) <- (curr, next).
  void step(Eigen::VectorXd& prev, Eigen::VectorXd& curr);

 private:
  FormationGraph graph_;
  int dim_;
  StepperMatrices matrices_;
  Eigen::VectorXd rhs_;
  Eigen::VectorXd delta_;
};

class EulerStepper {
 public:
  EulerStepper(FormationGraph graph, int dim, double h,
               DynamicsCoefficients coeffs = DynamicsCoefficients::nominal());

  void step(Eigen::VectorXd& q, Eigen::VectorXd& v);

 private:
  FormationGraph graph_;
  int dim_;
  double h_;
  DynamicsCoefficients coeffs_;
  Eigen::VectorXd acc_;
};

class Rk4Stepper {
 public:
  Rk4Stepper(FormationGraph graph, int dim, double h,
             DynamicsCoefficients coeffs = DynamicsCoefficients::nominal());

  void step(Eigen::VectorXd& q, Eigen::VectorXd& v);

 private:
  void eval(const Eigen::VectorXd& q, const Eigen::VectorXd& v, Eigen::VectorXd& a);

  FormationGraph graph_;
  int dim_;
  double h_;
  DynamicsCoefficients coeffs_;
  Eigen::VectorXd kq_[4], kv_[4], tq_, tv_;
};

}  // namespace flockvi
