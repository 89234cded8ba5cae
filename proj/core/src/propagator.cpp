#include "flockvi/propagator.hpp"

#include "flockvi/scenario.hpp"

namespace flockvi {

IntegratorSpec IntegratorSpec::from(const Scenario& scenario) {
  IntegratorSpec spec;
  spec.kind = scenario.integrator;
  spec.variant = scenario.variant;
  return spec;
}

std::string IntegratorSpec::label() const {
  if (kind == IntegratorKind::kVariational) {
    return "variational-" + std::string(to_string(variant));
  }
  return std::string(to_string(kind));
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Propagator::Propagator(const FormationGraph& graph, int dim, const Eigen::VectorXd& q0,
                       const Eigen::VectorXd& v0, double h, const IntegratorSpec& spec)
    : state_([&]() -> decltype(state_) {
        const StackedPosition q(dim, q0);
        const StackedVelocity v(dim, v0);
        require_shape(q, graph, "initial position");
        require_shape(v, graph, "initial velocity");
        if (spec.substeps == 0) throw ValidationError("substeps must be positive");
        const double inner = h / static_cast<double>(spec.substeps);
        switch (spec.kind) {
          case IntegratorKind::kVariational: {
            VariationalStepper stepper(graph, dim, h, spec.variant);
            DiscretePair start = spec.bootstrap == Bootstrap::kDiscreteLegendre
                                     ? bootstrap_legendre(q, v, graph, stepper.matrices())
                                     : bootstrap(q, v, h);
            return Variational{std::move(stepper), start.prev.coords(), start.curr.coords()};
          }
          case IntegratorKind::kEuler:
            return Euler{EulerStepper(graph, dim, inner, spec.target), q0, v0, spec.substeps};
          case IntegratorKind::kRk4:
            return Rk4{Rk4Stepper(graph, dim, inner, spec.target), q0, v0, spec.substeps};
        }
        throw ValidationError("unknown integrator");
      }()) {}

void Propagator::advance() {
  std::visit(Overloaded{
                 [&](Variational& s) {
                   // prev/curr already hold (q_0, q_1) before the first advance.
                   if (step_ > 0) s.stepper.step(s.prev, s.curr);
                 },
                 [](Euler& s) {
                   for (std::size_t k = 0; k < s.substeps; ++k) s.stepper.step(s.q, s.v);
                 },
                 [](Rk4& s) {
                   for (std::size_t k = 0; k < s.substeps; ++k) s.stepper.step(s.q, s.v);
                 },
             },
             state_);
  ++step_;
}

const Eigen::VectorXd& Propagator::position() const {
  return std::visit(Overloaded{
                        [&](const Variational& s) -> const Eigen::VectorXd& {
                          return step_ == 0 ? s.prev : s.curr;
                        },
                        [](const Euler& s) -> const Eigen::VectorXd& { return s.q; },
                        [](const Rk4& s) -> const Eigen::VectorXd& { return s.q; },
                    },
                    state_);
}

}  // namespace flockvi
