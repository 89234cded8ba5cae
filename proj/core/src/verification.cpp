#include "flockvi/verification.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "flockvi/csv.hpp"
#include "flockvi/diagnostics.hpp"
#include "flockvi/simulation.hpp"

namespace flockvi {

DynamicsCoefficients target_system(IntegratorKind kind, Variant variant) {
  if (kind == IntegratorKind::kVariational && variant == Variant::kPaper) {
    return DynamicsCoefficients::paper_modified();
  }
  return DynamicsCoefficients::nominal();
}

std::size_t reference_substeps(double h, double h_ref) {
  if (!(h_ref > 0.0) || h_ref > h / 10.0) {
    throw ConvergenceError("reference step must satisfy 0 < h_ref <= h / 10");
  }
  const double ratio = h / h_ref;
  const double n = std::round(ratio);
  if (std::abs(n * h_ref - h) > 1e-12) {
    throw ConvergenceError("step " + format_double(h) + " is not a multiple of reference step " +
                           format_double(h_ref));
  }
  return static_cast<std::size_t>(n);
}

TrajectoryRecord reference_solution(const Scenario& scenario, double h_ref, DynamicsCoefficients target) {
  IntegratorSpec spec;
  spec.kind = IntegratorKind::kRk4;
  spec.target = target;
  spec.substeps = reference_substeps(scenario.h, h_ref);
  TrajectoryRecord rec = run(scenario, spec);
  rec.integrator_label = "reference-rk4";
  return rec;
}

Eigen::VectorXd terminal_position(const Scenario& scenario, const IntegratorSpec& spec) {
  scenario.validate();
  Propagator prop(scenario.graph(), scenario.dim, scenario.initial_positions,
                  scenario.initial_velocities, scenario.h, spec);
  for (std::size_t k = 0; k < scenario.steps; ++k) prop.advance();
  return prop.position();
}

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw ConvergenceError("log-log fit needs at least three (x, y) pairs");
  }
  const auto n = static_cast<double>(x.size());
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double r = ly[k] - (fit.intercept + fit.slope * lx[k]);
    ssr += r * r;
  }
  const double dof = n - 2.0;
  const double se = std::sqrt(ssr / dof / sxx);
  const boost::math::students_t dist(dof);
  fit.half_width = boost::math::quantile(dist, 0.975) * se;
  return fit;
}

std::string ConvergenceReport::label() const {
  IntegratorSpec spec;
  spec.kind = integrator;
  spec.variant = variant;
  return spec.label();
}

std::string ConvergenceReport::to_text() const {
  std::ostringstream os;
  os << "convergence: " << label();
  if (integrator == IntegratorKind::kVariational) os << " (bootstrap " << to_string(bootstrap) << ")";
  os << ", T = " << horizon << ", reference rk4 h_ref = " << reference_step << "\n";
  os << "  " << std::setw(12) << "h" << "  " << std::setw(14) << "terminal error" << "\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    os << "  " << std::setw(12) << steps[k] << "  " << std::setw(14) << std::setprecision(6)
       << errors[k] << "\n";
  }
  os << "  slope " << std::setprecision(4) << slope << " +/- " << half_width << "\n";
  return os.str();
}

std::string ConvergenceReport::to_csv() const {
  std::string out = "integrator,h,error\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    out += label() + "," + format_double(steps[k]) + "," + format_double(errors[k]) + "\n";
  }
  return out;
}

ConvergenceReport convergence_order(IntegratorKind integrator, Variant variant, const Scenario& scenario,
                                    std::span<const double> steps, const ConvergenceOptions& options) {
  if (steps.size() < 3) throw ConvergenceError("convergence study needs at least three step sizes");
  if (!(options.horizon > 0.0)) throw ConvergenceError("horizon must be positive");
  if (options.reference_refinement < 10) throw ConvergenceError("reference refinement must be >= 10");

  ConvergenceReport report;
  report.integrator = integrator;
  report.variant = variant;
  report.bootstrap = options.bootstrap;
  report.horizon = options.horizon;
  report.steps.assign(steps.begin(), steps.end());
  std::sort(report.steps.begin(), report.steps.end(), std::greater<>());
  for (std::size_t k = 0; k < report.steps.size(); ++k) {
    if (!(report.steps[k] > 0.0)) throw ConvergenceError("step sizes must be positive");
    if (k && report.steps[k] == report.steps[k - 1]) throw ConvergenceError("step sizes must be distinct");
  }

  const auto steps_to = [&](double h) {
    const double n = std::round(options.horizon / h);
    if (n < 1 || std::abs(n * h - options.horizon) > 1e-9 * options.horizon) {
      throw ConvergenceError("horizon " + format_double(options.horizon) +
                             " is not a multiple of step " + format_double(h));
    }
    return static_cast<std::size_t>(n);
  };

  const DynamicsCoefficients target = target_system(integrator, variant);
  report.reference_step = report.steps.back() / static_cast<double>(options.reference_refinement);

  Scenario ref = scenario;
  ref.h = report.reference_step;
  ref.steps = steps_to(ref.h);
  IntegratorSpec ref_spec;
  ref_spec.kind = IntegratorKind::kRk4;
  ref_spec.target = target;

  const auto run_one = [&](double h) {
    Scenario sc = scenario;
    sc.h = h;
    sc.steps = steps_to(h);
    IntegratorSpec spec;
    spec.kind = integrator;
    spec.variant = variant;
    spec.bootstrap = options.bootstrap;
    return terminal_position(sc, spec);
  };

  // Validate every step size before launching work.
  for (double h : report.steps) (void)steps_to(h);

  const auto policy = options.parallel ? std::launch::async : std::launch::deferred;
  auto ref_future = std::async(policy, [&] { return terminal_position(ref, ref_spec); });
  std::vector<std::future<Eigen::VectorXd>> runs;
  for (double h : report.steps) runs.push_back(std::async(policy, run_one, h));

  const Eigen::VectorXd q_ref = ref_future.get();
  for (auto& f : runs) report.errors.push_back((f.get() - q_ref).norm());

  for (double e : report.errors) {
    if (e == 0.0) throw ConvergenceError("zero error: the study is degenerate for this scenario");
  }
  const LogLogFit fit = fit_loglog(report.steps, report.errors);
  report.slope = fit.slope;
  report.half_width = fit.half_width;
  return report;
}

std::vector<double> residual_audit(const Scenario& scenario, Variant variant, ResidualAssembly assembly,
                                   Bootstrap bootstrap) {
  IntegratorSpec spec;
  spec.kind = IntegratorKind::kVariational;
  spec.variant = variant;
  spec.bootstrap = bootstrap;
  const FormationGraph graph = scenario.graph();
  const int dim = scenario.dim;

  std::vector<double> out;
  if (scenario.steps >= 2) out.reserve(scenario.steps - 1);
  Eigen::VectorXd q_prev;
  Scenario sc = scenario;
  if (sc.steps > 0) sc.steps -= 1;  // simulate() looks one step ahead
  simulate(sc, spec, [&](std::size_t k, const Eigen::VectorXd& q_k, const Eigen::VectorXd& q_next) {
    if (k >= 1) {
      const Eigen::VectorXd r = discrete_el_residual(StackedPosition(dim, q_prev), StackedPosition(dim, q_k),
                                                     StackedPosition(dim, q_next), graph, scenario.h,
                                                     assembly);
      out.push_back(r.cwiseAbs().maxCoeff());
    }
    q_prev = q_k;
  });
  return out;
}

std::vector<LockstepComparison> compare_lockstep(const Scenario& scenario, const IntegratorSpec& reference,
                                                 std::span<const IntegratorSpec> candidates) {
  scenario.validate();
  const FormationGraph graph = scenario.graph();
  const int dim = scenario.dim;
  const double h = scenario.h;
  const auto make = [&](const IntegratorSpec& spec) {
    return Propagator(graph, dim, scenario.initial_positions, scenario.initial_velocities, h, spec);
  };

  Propagator ref = make(reference);
  std::vector<Propagator> props;
  for (const IntegratorSpec& spec : candidates) props.push_back(make(spec));
  std::vector<LockstepComparison> out(candidates.size());
  std::vector<bool> diverged(candidates.size(), false);
  std::vector<Eigen::VectorXd> q(candidates.size(), scenario.initial_positions);
  Eigen::VectorXd q_ref = scenario.initial_positions;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= scenario.steps; ++k) {
    ref.advance();
    const double e_ref = kernels::total_discrete_energy(q_ref, ref.position(), dim, graph, h);
    for (std::size_t c = 0; c < props.size(); ++c) {
      if (diverged[c]) continue;
      props[c].advance();
      const double gap = (q[c] - q_ref).norm();
      const double e = kernels::total_discrete_energy(q[c], props[c].position(), dim, graph, h);
      LockstepComparison& m = out[c];
      if (!std::isfinite(gap) || !std::isfinite(e)) {
        m = {kInf, kInf, kInf};
        diverged[c] = true;
        continue;
      }
      m.max_position_discrepancy = std::max(m.max_position_discrepancy, gap);
      m.max_energy_discrepancy = std::max(m.max_energy_discrepancy, std::abs(e - e_ref));
      if (k == scenario.steps) m.terminal_position_discrepancy = gap;
      q[c] = props[c].position();
    }
    q_ref = ref.position();
  }
  return out;
}

LockstepComparison compare_lockstep(const Scenario& scenario, const IntegratorSpec& a,
                                    const IntegratorSpec& b) {
  const IntegratorSpec candidates[] = {b};
  return compare_lockstep(scenario, a, candidates).front();
}

}  // namespace flockvi
