// Acceptance suite: one PASS/FAIL line per criterion. The cost criterion
// only warns, since it depends on the host.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "flockvi/flockvi.hpp"

namespace {

using namespace flockvi;
using Clock = std::chrono::steady_clock;

enum class Outcome { kPass, kFail, kWarn };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

Verdict verdict(bool ok, const std::string& detail) { return {ok ? Outcome::kPass : Outcome::kFail, detail}; }

IntegratorSpec spec_of(IntegratorKind kind, Variant variant = Variant::kPaper) {
  IntegratorSpec s;
  s.kind = kind;
  s.variant = variant;
  return s;
}

// 1. Shape convergence on the coarse preset.
Verdict shape_convergence() {
  const Scenario sc = preset(kPresetTriangleCoarse);
  const auto t0 = Clock::now();
  const TrajectoryRecord rec = run(sc);
  const double seconds = seconds_since(t0);
  const StepDiagnostics& fin = rec.final_state.diagnostics;
  const double edge = fin.edge_errors.cwiseAbs().maxCoeff();
  const double dis = fin.velocity_disagreement;
  return verdict(edge < 0.01 && dis < 0.01 && seconds < 1.0,
                 rec.integrator_label + ": max |edge err| " + fmt(edge) + ", disagreement " + fmt(dis) +
                     ", runtime " + fmt(seconds) + " s (limits 0.01, 0.01, 1 s)");
}

// 2. Momentum conservation over 1e5 variational steps.
Verdict momentum_conservation() {
  Scenario sc = preset(kPresetTriangleCoarse);
  sc.steps = 100000;
  const Eigen::Vector2d sum_v0 = sc.initial_velocities.reshaped(2, 3).rowwise().sum();
  const Eigen::Vector2d expected = sum_v0 / 3.0;
  bool ok = true;
  std::ostringstream detail;
  for (Variant variant : {Variant::kPaper, Variant::kConsistent}) {
    double drift = 0.0;
    Eigen::VectorXd p_prev;
    Eigen::VectorXd last_velocity;
    Scenario run_sc = sc;
    run_sc.steps -= 1;  // the observer sees q_{k+1}, so this covers 1e5 increments
    simulate(run_sc, spec_of(IntegratorKind::kVariational, variant),
             [&](std::size_t, const Eigen::VectorXd& q, const Eigen::VectorXd& next) {
               const Eigen::VectorXd v = (next - q) / sc.h;
               const Eigen::VectorXd p = v.reshaped(2, 3).rowwise().sum();
               if (p_prev.size()) drift = std::max(drift, (p - p_prev).norm());
               p_prev = p;
               last_velocity = v;
             });
    double consensus = 0.0;
    for (int i = 0; i < 3; ++i) consensus = std::max(consensus, (last_velocity.segment<2>(2 * i) - expected).norm());
    const double rel = drift / sum_v0.norm();
    ok = ok && rel < 1e-10 && consensus < 1e-3;
    detail << to_string(variant) << ": max stepwise drift/|sum v0| " << fmt(rel) << ", |v_i - (0.77333, 0.28)| "
           << fmt(consensus) << "; ";
  }
  detail << "limits 1e-10, 1e-3";
  return verdict(ok, detail.str());
}

// 3. Convergence orders on the stated grid.
Verdict convergence_orders() {
  const Scenario sc = preset(kPresetTriangleCoarse);
  const std::vector<double> grid = {0.02, 0.01, 0.005, 0.0025};
  const ConvergenceOptions options;  // T = 1, Legendre start, reference h_min / 100
  struct Row {
    IntegratorKind kind;
    Variant variant;
    double order;
    double tol;
  };
  const Row rows[] = {{IntegratorKind::kEuler, Variant::kPaper, 1.0, 0.2},
                      {IntegratorKind::kVariational, Variant::kConsistent, 2.0, 0.2},
                      {IntegratorKind::kVariational, Variant::kPaper, 2.0, 0.2},
                      {IntegratorKind::kRk4, Variant::kPaper, 4.0, 0.4}};
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  for (const Row& r : rows) {
    const ConvergenceReport rep = convergence_order(r.kind, r.variant, sc, grid, options);
    const bool hit = std::abs(rep.slope - r.order) <= r.tol;
    ok = ok && hit;
    detail << rep.label() << " " << fmt(rep.slope) << (hit ? "" : " (want " + fmt(r.order) + "+/-" + fmt(r.tol) + ")")
           << " errors[";
    for (std::size_t k = 0; k < rep.errors.size(); ++k) detail << (k ? " " : "") << fmt(rep.errors[k]);
    detail << "]; ";
  }
  const double seconds = seconds_since(t0);
  ok = ok && seconds < 30.0;
  detail << "runtime " << fmt(seconds) << " s";
  return verdict(ok, detail.str());
}

// 4. Euler against the variational integrator at the two preset steps.
Verdict euler_divergence() {
  const Scenario coarse = preset(kPresetTriangleCoarse);
  IntegratorSpec reference = spec_of(IntegratorKind::kRk4);
  reference.substeps = 100;
  const IntegratorSpec candidates[] = {spec_of(IntegratorKind::kEuler),
                                       spec_of(IntegratorKind::kVariational, Variant::kConsistent)};
  const auto vs_ref = compare_lockstep(coarse, reference, candidates);
  const double factor = vs_ref[0].terminal_position_discrepancy / vs_ref[1].terminal_position_discrepancy;

  const Scenario fine = preset(kPresetTriangleFine);
  const LockstepComparison fine_gap = compare_lockstep(fine, spec_of(IntegratorKind::kVariational, Variant::kConsistent),
                                                       spec_of(IntegratorKind::kEuler));
  const bool ok = factor > 10.0 && fine_gap.max_position_discrepancy < 0.1;
  return verdict(ok, "h=0.005 terminal error euler " + fmt(vs_ref[0].terminal_position_discrepancy) +
                         " vs variational-consistent " + fmt(vs_ref[1].terminal_position_discrepancy) + " (factor " +
                         fmt(factor) + ", want > 10); h=5e-5 max |q_euler - q_vi| " +
                         fmt(fine_gap.max_position_discrepancy) + " (want < 0.1)");
}

// 5. Energy decay and Euler's energy error.
Verdict energy_behavior() {
  const Scenario sc = preset(kPresetTriangleCoarse);
  bool ok = true;
  std::ostringstream detail;
  for (Variant variant : {Variant::kPaper, Variant::kConsistent}) {
    std::vector<double> energy;
    simulate(sc, spec_of(IntegratorKind::kVariational, variant),
             [&](std::size_t, const Eigen::VectorXd& q, const Eigen::VectorXd& next) {
               energy.push_back(kernels::total_discrete_energy(q, next, sc.dim, sc.graph(), sc.h));
             });
    const std::size_t start = sc.steps / 100;
    double worst_rise = 0.0;
    std::size_t violations = 0;
    for (std::size_t k = start + 1; k < energy.size(); ++k) {
      const double rise = energy[k] - energy[k - 1];
      worst_rise = std::max(worst_rise, rise);
      if (rise > 1e-9) ++violations;
    }
    const double ratio = energy.back() / energy.front();
    ok = ok && violations == 0 && ratio < 1e-4;
    detail << "variational-" << to_string(variant) << ": max per-step rise " << fmt(worst_rise) << " in "
           << violations << " steps, final/initial " << fmt(ratio) << "; ";
  }

  IntegratorSpec reference = spec_of(IntegratorKind::kRk4);
  reference.substeps = 100;
  const IntegratorSpec candidates[] = {spec_of(IntegratorKind::kEuler),
                                       spec_of(IntegratorKind::kVariational, Variant::kConsistent)};
  const auto vs_ref = compare_lockstep(sc, reference, candidates);
  const double factor = vs_ref[0].max_energy_discrepancy / vs_ref[1].max_energy_discrepancy;
  ok = ok && factor > 10.0;
  detail << "energy-curve deviation from reference: euler " << fmt(vs_ref[0].max_energy_discrepancy)
         << " vs variational-consistent " << fmt(vs_ref[1].max_energy_discrepancy) << " (factor " << fmt(factor)
         << ", want > 10)";
  return verdict(ok, detail.str());
}

// 6. Algebraic identities on randomized formations.
Verdict algebraic_identities() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_real_distribution<double> step(1e-3, 0.05);
  std::normal_distribution<double> normal(0.0, 1.0);
  double fixed = 0.0, translation = 0.0, equivariance = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t s = 2 + static_cast<std::size_t>(trial % 7);
    const int dim = 1 + trial % 3;
    const auto n = static_cast<Eigen::Index>(s) * dim;
    Eigen::VectorXd shape(n);
    for (Eigen::Index k = 0; k < n; ++k) shape[k] = coord(rng);
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < s; ++i) {
      const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
      const double d = (shape.segment(static_cast<Eigen::Index>(i) * dim, dim) -
                        shape.segment(static_cast<Eigen::Index>(j) * dim, dim))
                           .norm();
      edges.push_back({j, i, d});
    }
    const FormationGraph g = FormationGraph::build(s, edges);
    const double h = step(rng);
    Eigen::VectorXd w(dim), c(dim), noise(n), vel(n);
    for (int a = 0; a < dim; ++a) {
      w[a] = normal(rng);
      c[a] = 3.0 * normal(rng);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      noise[k] = 0.5 * normal(rng);
      vel[k] = normal(rng);
    }
    const Eigen::VectorXd drift = w.replicate(static_cast<Eigen::Index>(s), 1);
    const Eigen::VectorXd shift = c.replicate(static_cast<Eigen::Index>(s), 1);
    for (Variant variant : {Variant::kPaper, Variant::kConsistent}) {
      const StepperMatrices m = precompute_stepper(g, h, variant);
      const StackedPosition q(dim, shape);
      fixed = std::max(fixed, (vi_step({q, q, h}, g, m).curr.coords() - shape).cwiseAbs().maxCoeff());

      const StackedPosition moved(dim, shape + h * drift);
      const Eigen::VectorXd lin = 2.0 * moved.coords() - shape;
      translation = std::max(translation, (vi_step({q, moved, h}, g, m).curr.coords() - lin).cwiseAbs().maxCoeff());

      const Eigen::VectorXd prev = shape + noise, curr = prev + h * vel;
      const auto a = vi_step({StackedPosition(dim, prev), StackedPosition(dim, curr), h}, g, m);
      const auto b = vi_step({StackedPosition(dim, prev + shift), StackedPosition(dim, curr + shift), h}, g, m);
      equivariance = std::max(equivariance, (b.curr.coords() - a.curr.coords() - shift).cwiseAbs().maxCoeff());
    }
  }

  double grad = 0.0;
  std::uniform_real_distribution<double> u(-10.0, 10.0), dist(0.5, 12.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::Vector2d qi(u(rng), u(rng)), qj(u(rng), u(rng));
    const double d = dist(rng);
    const Eigen::VectorXd analytic = pair_gradient(qi, qj, d);
    Eigen::Vector2d fd;
    for (int a = 0; a < 2; ++a) {
      const double e = 1e-5 * std::max(1.0, std::abs(qi[a]));
      Eigen::Vector2d plus = qi, minus = qi;
      plus[a] += e;
      minus[a] -= e;
      fd[a] = (pair_potential(plus, qj, d) - pair_potential(minus, qj, d)) / (2 * e);
    }
    grad = std::max(grad, (fd - analytic).norm() / std::max(1.0, analytic.norm()));
  }
  return verdict(fixed < 1e-12 && translation < 1e-12 && equivariance < 1e-12 && grad < 1e-6,
                 "fixed point " + fmt(fixed) + ", rigid translation " + fmt(translation) + ", translation equivariance " +
                     fmt(equivariance) + " (limit 1e-12); pair_gradient vs finite differences " + fmt(grad) +
                     " (limit 1e-6)");
}

// 7. Per-step cost.
Verdict cost() {
  const auto rows = cli::bench_integrators(preset(kPresetTriangleCoarse), 1000000);
  const double vi = std::max(rows[0].ns_per_step(), rows[1].ns_per_step());
  const double euler = rows[2].ns_per_step(), rk4 = rows[3].ns_per_step();
  const bool ok = vi <= 2.0 * euler && vi <= 0.5 * rk4;
  return {ok ? Outcome::kPass : Outcome::kWarn,
          "ns/step variational " + fmt(vi) + ", euler " + fmt(euler) + ", rk4 " + fmt(rk4) + " (ratios " +
              fmt(vi / euler) + " <= 2, " + fmt(vi / rk4) + " <= 0.5)"};
}

// 8. Round trips and determinism.
Verdict round_trips() {
  Scenario sc = preset(kPresetTriangleCoarse);
  sc.initial_positions[0] = 0.1 + 0.2;
  sc.initial_velocities[5] = 1.0 / 3.0;
  const bool json_ok = load_scenario(serialize_scenario(sc)) == sc;

  sc = preset(kPresetTriangleCoarse);
  sc.steps = 1000;
  sc.record_every = 3;
  const TrajectoryRecord rec = run(sc);
  std::ostringstream first, second;
  write_csv(rec, first);
  write_csv(run(sc), second);
  std::istringstream in(first.str());
  const CsvTable table = read_csv(in);
  bool csv_ok = table.rows.size() == rec.samples.size();
  for (std::size_t r = 0; csv_ok && r < table.rows.size(); ++r) {
    csv_ok = table.rows[r][0] == rec.samples[r].time;
    for (Eigen::Index k = 0; csv_ok && k < rec.samples[r].positions.size(); ++k) {
      csv_ok = table.rows[r][1 + static_cast<std::size_t>(k)] == rec.samples[r].positions[k];
    }
  }
  const bool same = first.str() == second.str();
  return verdict(json_ok && csv_ok && same, std::string("scenario JSON ") + (json_ok ? "exact" : "differs") +
                                                ", trajectory CSV " + (csv_ok ? "exact" : "differs") +
                                                ", repeated runs " + (same ? "identical" : "differ"));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const Criterion criteria[] = {
      {"1 shape convergence", shape_convergence},   {"2 momentum conservation", momentum_conservation},
      {"3 convergence orders", convergence_orders}, {"4 euler divergence", euler_divergence},
      {"5 energy behavior", energy_behavior},       {"6 algebraic identities", algebraic_identities},
      {"7 cost", cost},                             {"8 round trips", round_trips},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {Outcome::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = v.outcome == Outcome::kPass ? "PASS" : v.outcome == Outcome::kWarn ? "WARN" : "FAIL";
    if (v.outcome == Outcome::kFail) ++failures;
    std::cout << tag << "  " << c.name << ": " << v.detail << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
