#include "flockvi/integrators.hpp"

#include <string>
#include <utility>

namespace flockvi {

std::string_view to_string(IntegratorKind kind) {
  switch (kind) {
    case IntegratorKind::kVariational: return "variational";
    case IntegratorKind::kEuler: return "euler";
    case IntegratorKind::kRk4: return "rk4";
  }
  return "?";
}

std::string_view to_string(Variant variant) {
  return variant == Variant::kPaper ? "paper" : "consistent";
}

std::string_view to_string(Bootstrap bootstrap) {
  return bootstrap == Bootstrap::kForwardDifference ? "forward" : "legendre";
}

std::optional<IntegratorKind> parse_integrator(std::string_view name) {
  if (name == "variational") return IntegratorKind::kVariational;
  if (name == "euler") return IntegratorKind::kEuler;
  if (name == "rk4") return IntegratorKind::kRk4;
  return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "paper") return Variant::kPaper;
  if (name == "consistent") return Variant::kConsistent;
  return std::nullopt;
}

std::optional<Bootstrap> parse_bootstrap(std::string_view name) {
  if (name == "forward") return Bootstrap::kForwardDifference;
  if (name == "legendre") return Bootstrap::kDiscreteLegendre;
  return std::nullopt;
}

namespace {

void require_step(double h) {
  if (!(h > 0.0)) throw ValidationError("step size must be positive, got " + std::to_string(h));
}

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

// --- StepperMatrices --------------------------------------------------------

StepperMatrices StepperMatrices::precompute(const FormationGraph& graph, double h, Variant variant) {
  require_step(h);
  StepperMatrices m;
  m.variant_ = variant;
  m.h_ = h;
  if (variant == Variant::kPaper) {
    m.alpha_ = h;
    m.beta_ = 0.5 * h * h;
  } else {
    m.alpha_ = 0.5 * h;
    m.beta_ = h * h;
  }
  const auto s = static_cast<Eigen::Index>(graph.agent_count());
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(s, s);
  m.system_ = eye + m.alpha_ * graph.laplacian();
  m.mat_b_ = eye - m.alpha_ * graph.laplacian();
  // Symmetric positive definite: L is PSD and alpha > 0.
  m.factor_.compute(m.system_);
  m.inverse_ = m.factor_.solve(eye);
  return m;
}

void StepperMatrices::solve_in_place(Eigen::VectorXd& x, int dim) const {
  // Agent-major stacking makes x an s x n row-major matrix whose columns
  // are the per-axis right-hand sides.
  Eigen::Map<RowMajorMatrix> block(x.data(), system_.rows(), dim);
  factor_.solveInPlace(block);
}

Eigen::VectorXd StepperMatrices::solve(const Eigen::VectorXd& b, int dim) const {
  Eigen::VectorXd x = b;
  solve_in_place(x, dim);
  return x;
}

void StepperMatrices::apply_inverse(const Eigen::VectorXd& b, Eigen::VectorXd& x, int dim) const {
  const Eigen::Index s = inverse_.rows();
  x.resize(b.size());
  for (Eigen::Index i = 0; i < s; ++i) {
    for (int a = 0; a < dim; ++a) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < s; ++j) acc += inverse_(i, j) * b[j * dim + a];
      x[i * dim + a] = acc;
    }
  }
}

StepperMatrices precompute_stepper(const FormationGraph& graph, double h, Variant variant) {
  return StepperMatrices::precompute(graph, h, variant);
}

// --- bootstrap ---------------------------------------------------------------

DiscretePair bootstrap(const StackedPosition& q0, const StackedVelocity& v0, double h) {
  require_step(h);
  if (q0.dim() != v0.dim() || q0.agents() != v0.agents()) {
    throw ShapeError("initial position and velocity shapes differ");
  }
  return {q0, StackedPosition(q0.dim(), q0.coords() + h * v0.coords()), h};
}

DiscretePair bootstrap_legendre(const StackedPosition& q0, const StackedVelocity& v0,
                                const FormationGraph& graph, const StepperMatrices& matrices) {
  require_shape(q0, graph, "initial position");
  require_shape(v0, graph, "initial velocity");
  if (q0.dim() != v0.dim()) throw ShapeError("initial position and velocity shapes differ");
  const double h = matrices.h();
  Eigen::VectorXd delta = h * v0.coords();
  kernels::add_gamma(q0.coords(), q0.dim(), graph, -0.5 * matrices.beta(), delta);
  matrices.solve_in_place(delta, q0.dim());
  return {q0, StackedPosition(q0.dim(), q0.coords() + delta), h};
}

// --- variational step --------------------------------------------------------

namespace {

// delta <- (I + alpha Lbar)^{-1} [ (I - alpha Lbar) delta - beta Gamma(curr) ]
void increment(const Eigen::VectorXd& curr, int dim, const FormationGraph& graph,
               const StepperMatrices& m, Eigen::VectorXd& delta) {
  Eigen::VectorXd rhs = delta;
  kernels::add_laplacian(delta, dim, graph, -m.alpha(), rhs);
  kernels::add_gamma(curr, dim, graph, -m.beta(), rhs);
  m.apply_inverse(rhs, delta, dim);
}

}  // namespace

DiscretePair vi_step(const DiscretePair& pair, const FormationGraph& graph,
                     const StepperMatrices& matrices) {
  require_shape(pair.prev, graph, "q_prev");
  require_shape(pair.curr, graph, "q_curr");
  if (pair.prev.dim() != pair.curr.dim()) throw ShapeError("pair dimensions differ");
  const int dim = pair.curr.dim();
  Eigen::VectorXd delta = pair.curr.coords() - pair.prev.coords();
  increment(pair.curr.coords(), dim, graph, matrices, delta);
  return {pair.curr, StackedPosition(dim, pair.curr.coords() + delta), pair.h};
}

// --- Euler / RK4 -------------------------------------------------------------

PhaseState euler_step(const PhaseState& state, const FormationGraph& graph, double h,
                      DynamicsCoefficients coeffs) {
  require_step(h);
  const Eigen::VectorXd a = accelerations(state.q, state.v, graph, coeffs);
  const int dim = state.q.dim();
  return {StackedPosition(dim, state.q.coords() + h * state.v.coords()),
          StackedVelocity(dim, state.v.coords() + h * a)};
}

PhaseState rk4_step(const PhaseState& state, const FormationGraph& graph, double h,
                    DynamicsCoefficients coeffs) {
  require_step(h);
  const int dim = state.q.dim();
  const auto acc = [&](const Eigen::VectorXd& q, const Eigen::VectorXd& v) {
    return accelerations(StackedPosition(dim, q), StackedVelocity(dim, v), graph, coeffs);
  };
  const Eigen::VectorXd& q = state.q.coords();
  const Eigen::VectorXd& v = state.v.coords();

  const Eigen::VectorXd k1q = v;
  const Eigen::VectorXd k1v = acc(q, v);
  const Eigen::VectorXd k2q = v + 0.5 * h * k1v;
  const Eigen::VectorXd k2v = acc(q + 0.5 * h * k1q, k2q);
  const Eigen::VectorXd k3q = v + 0.5 * h * k2v;
  const Eigen::VectorXd k3v = acc(q + 0.5 * h * k2q, k3q);
  const Eigen::VectorXd k4q = v + h * k3v;
  const Eigen::VectorXd k4v = acc(q + h * k3q, k4q);

  return {StackedPosition(dim, q + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)),
          StackedVelocity(dim, v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v))};
}

// --- discrete Euler-Lagrange residual ---------------------------------------

Eigen::VectorXd discrete_el_residual(const StackedPosition& q_prev, const StackedPosition& q_curr,
                                     const StackedPosition& q_next, const FormationGraph& graph,
                                     double h, ResidualAssembly assembly) {
  require_step(h);
  require_shape(q_prev, graph, "q_prev");
  require_shape(q_curr, graph, "q_curr");
  require_shape(q_next, graph, "q_next");
  const int dim = q_curr.dim();
  if (q_prev.dim() != dim || q_next.dim() != dim) throw ShapeError("triple dimensions differ");

  const Eigen::VectorXd d_prev = q_curr.coords() - q_prev.coords();
  const Eigen::VectorXd d_next = q_next.coords() - q_curr.coords();

  // D2 L_d(q_{k-1}, q_k) + D1 L_d(q_k, q_{k+1}), kinetic part.
  Eigen::VectorXd r = (d_prev - d_next) / h;

  if (assembly == ResidualAssembly::kAsPrinted) {
    const double l_ij = -1.0;  // off-diagonal Laplacian entry of an edge
    for (AgentIndex i = 0; i < graph.agent_count(); ++i) {
      auto ri = r.segment(static_cast<Eigen::Index>(i) * dim, dim);
      const auto dpi = d_prev.segment(static_cast<Eigen::Index>(i) * dim, dim);
      const auto dni = d_next.segment(static_cast<Eigen::Index>(i) * dim, dim);
      for (const Neighbor& n : graph.adjacency(i)) {
        const auto j = static_cast<Eigen::Index>(n.agent) * dim;
        ri += pair_gradient(q_curr.agent(i), q_curr.agent(n.agent), n.distance);
        ri += (l_ij / h) * (d_prev.segment(j, dim) - dpi);   // F+
        ri += (l_ij / h) * (d_next.segment(j, dim) - dni);   // F-
      }
    }
  } else {
    kernels::add_gamma(q_curr.coords(), dim, graph, -h, r);
    kernels::add_laplacian(d_prev + d_next, dim, graph, -0.5, r);
  }
  return r;
}

// --- in-place steppers -------------------------------------------------------

VariationalStepper::VariationalStepper(FormationGraph graph, int dim, double h, Variant variant)
    : graph_(std::move(graph)),
      dim_(dim),
      matrices_(StepperMatrices::precompute(graph_, h, variant)),
      rhs_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph_.agent_count()) * dim)),
      delta_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph_.agent_count()) * dim)) {}

void VariationalStepper::step(Eigen::VectorXd& prev, Eigen::VectorXd& curr) {
  const double a = matrices_.alpha();
  const double b = matrices_.beta();
  // delta = (I - a Lbar)(curr - prev) - b Gamma(curr), built edge by edge
  // from the old increment stored in prev.
  prev = curr - prev;
  rhs_ = prev;
  kernels::add_laplacian(prev, dim_, graph_, -a, rhs_);
  kernels::add_gamma(curr, dim_, graph_, -b, rhs_);
  matrices_.apply_inverse(rhs_, delta_, dim_);
  prev = curr;
  curr += delta_;
}

EulerStepper::EulerStepper(FormationGraph graph, int dim, double h, DynamicsCoefficients coeffs)
    : graph_(std::move(graph)),
      dim_(dim),
      h_(h),
      coeffs_(coeffs),
      acc_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph_.agent_count()) * dim)) {
  require_step(h);
}

void EulerStepper::step(Eigen::VectorXd& q, Eigen::VectorXd& v) {
  acc_.setZero();
  kernels::add_gamma(q, dim_, graph_, -coeffs_.potential, acc_);
  kernels::add_laplacian(v, dim_, graph_, -coeffs_.damping, acc_);
  q += h_ * v;
  v += h_ * acc_;
}

Rk4Stepper::Rk4Stepper(FormationGraph graph, int dim, double h, DynamicsCoefficients coeffs)
    : graph_(std::move(graph)), dim_(dim), h_(h), coeffs_(coeffs) {
  require_step(h);
  const auto size = static_cast<Eigen::Index>(graph_.agent_count()) * dim;
  for (int i = 0; i < 4; ++i) {
    kq_[i] = Eigen::VectorXd::Zero(size);
    kv_[i] = Eigen::VectorXd::Zero(size);
  }
  tq_ = Eigen::VectorXd::Zero(size);
  tv_ = Eigen::VectorXd::Zero(size);
}

void Rk4Stepper::eval(const Eigen::VectorXd& q, const Eigen::VectorXd& v, Eigen::VectorXd& a) {
  a.setZero();
  kernels::add_gamma(q, dim_, graph_, -coeffs_.potential, a);
  kernels::add_laplacian(v, dim_, graph_, -coeffs_.damping, a);
}

void Rk4Stepper::step(Eigen::VectorXd& q, Eigen::VectorXd& v) {
  const double h = h_;
  kq_[0] = v;
  eval(q, v, kv_[0]);

  kq_[1] = v + 0.5 * h * kv_[0];
  tq_ = q + 0.5 * h * kq_[0];
  eval(tq_, kq_[1], kv_[1]);

  kq_[2] = v + 0.5 * h * kv_[1];
  tq_ = q + 0.5 * h * kq_[1];
  eval(tq_, kq_[2], kv_[2]);

  kq_[3] = v + h * kv_[2];
  tq_ = q + h * kq_[2];
  eval(tq_, kq_[3], kv_[3]);

  q += (h / 6.0) * (kq_[0] + 2.0 * kq_[1] + 2.0 * kq_[2] + kq_[3]);
  v += (h / 6.0) * (kv_[0] + 2.0 * kv_[1] + 2.0 * kv_[2] + kv_[3]);
}

}  // namespace flockvi
