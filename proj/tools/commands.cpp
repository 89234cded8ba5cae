#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "flockvi/csv.hpp"
#include "flockvi/simulation.hpp"
#include "flockvi/svg.hpp"
#include "flockvi/verification.hpp"

namespace flockvi::cli {
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<double> kDefaultGrid = {0.02, 0.01, 0.005, 0.0025};

Bootstrap bootstrap_or(const CommandInvocation& inv, Bootstrap fallback) {
  if (!inv.bootstrap) return fallback;
  auto b = parse_bootstrap(*inv.bootstrap);
  if (!b) throw UsageError("--bootstrap must be 'forward' or 'legendre'");
  return *b;
}

fs::path prepare_out(const CommandInvocation& inv) {
  fs::path dir(inv.out_dir);
  fs::create_directories(dir);
  return dir;
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
  writer(file);
  file.flush();
  if (!file) throw std::ios_base::failure("write to '" + path.string() + "' failed");
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, [&](std::ostream& os) { os << text; });
}

std::vector<Series> trajectory_series(const TrajectoryRecord& rec) {
  const Scenario& sc = rec.scenario;
  std::vector<Series> series;
  for (std::size_t i = 0; i < sc.agent_count; ++i) {
    Series s{"agent " + std::to_string(i + 1), {}};
    const auto base = static_cast<Eigen::Index>(i) * sc.dim;
    for (const Sample& smp : rec.samples) {
      if (sc.dim >= 2) {
        s.points.emplace_back(smp.positions[base], smp.positions[base + 1]);
      } else {
        s.points.emplace_back(smp.time, smp.positions[base]);
      }
    }
    series.push_back(std::move(s));
  }
  return series;
}

Series total_energy_series(const TrajectoryRecord& rec, const std::string& name) {
  Series s{name, {}};
  for (const Sample& smp : rec.samples) {
    s.points.emplace_back(smp.time, smp.diagnostics.total_discrete_energy / rec.scenario.h);
  }
  return s;
}

std::vector<Series> energy_series(const TrajectoryRecord& rec) {
  std::vector<Series> series;
  for (std::size_t i = 0; i < rec.scenario.agent_count; ++i) {
    Series s{"E" + std::to_string(i + 1) + "^d / h", {}};
    for (const Sample& smp : rec.samples) {
      s.points.emplace_back(smp.time, smp.diagnostics.per_agent_discrete_energy[static_cast<Eigen::Index>(i)] /
                                          rec.scenario.h);
    }
    series.push_back(std::move(s));
  }
  series.push_back(total_energy_series(rec, "total"));
  return series;
}

void write_svg(const fs::path& path, const std::vector<Series>& series, const PlotStyle& style) {
  write_file(path, [&](std::ostream& os) { emit_svg(series, style, os); });
}

PlotStyle trajectory_style(const std::string& title) {
  PlotStyle style;
  style.title = title;
  style.x_label = "x";
  style.y_label = "y";
  style.mark_start = true;
  style.equal_aspect = true;
  return style;
}

PlotStyle energy_style(const std::string& title) {
  PlotStyle style;
  style.title = title;
  style.x_label = "t";
  style.y_label = "discrete energy / h";
  style.log_y = true;
  return style;
}

std::string describe(const Scenario& sc) {
  std::ostringstream os;
  os << "scenario     agents " << sc.agent_count << ", dim " << sc.dim << ", edges " << sc.edges.size()
     << ", h " << sc.h << ", steps " << sc.steps << ", T " << sc.horizon() << "\n";
  return os.str();
}

std::string run_summary(const TrajectoryRecord& rec, const IntegratorSpec& spec, double seconds) {
  const Scenario& sc = rec.scenario;
  std::ostringstream os;
  os << describe(sc);
  os << "integrator   " << spec.label();
  if (spec.kind == IntegratorKind::kVariational) os << " (bootstrap " << to_string(spec.bootstrap) << ")";
  os << "\n";
  const StepDiagnostics& fin = rec.final_state.diagnostics;
  os << "final edge errors (|q_ij| - d_ij) at t = " << rec.final_state.time << "\n";
  for (std::size_t e = 0; e < sc.edges.size(); ++e) {
    os << "  edge " << sc.edges[e].tail + 1 << "-" << sc.edges[e].head + 1 << "  " << std::setw(14)
       << std::setprecision(6) << fin.edge_errors[static_cast<Eigen::Index>(e)] << "\n";
  }
  os << "final velocity disagreement  " << std::setprecision(6) << fin.velocity_disagreement << "\n";
  os << "final momentum              ";
  for (Eigen::Index a = 0; a < fin.momentum.size(); ++a) os << " " << fin.momentum[a];
  os << "\n";
  const double e0 = rec.samples.front().diagnostics.total_discrete_energy;
  os << "energy ratio (final/initial) " << fin.total_discrete_energy / e0 << "\n";
  os << "wall time                    " << seconds << " s\n";
  os << "steps/sec                    " << static_cast<double>(sc.steps) / std::max(seconds, 1e-12) << "\n";
  return os.str();
}

}  // namespace

Scenario resolve_scenario(const CommandInvocation& inv) {
  if (inv.preset.has_value() == inv.scenario_path.has_value()) {
    throw UsageError("give exactly one of --preset or --scenario");
  }
  Scenario sc = inv.preset ? preset(*inv.preset) : load_scenario_file(*inv.scenario_path);
  if (inv.integrator) {
    auto kind = parse_integrator(*inv.integrator);
    if (!kind) throw UsageError("--integrator must be variational, euler or rk4");
    sc.integrator = *kind;
  }
  if (inv.variant) {
    auto variant = parse_variant(*inv.variant);
    if (!variant) throw UsageError("--variant must be paper or consistent");
    sc.variant = *variant;
  }
  if (inv.subcommand != "convergence") {
    if (inv.h.size() > 1) throw UsageError("--h takes a single value for " + inv.subcommand);
    if (!inv.h.empty()) sc.h = inv.h.front();
  }
  if (inv.steps) sc.steps = *inv.steps;
  if (inv.record_every) sc.record_every = *inv.record_every;
  sc.validate();
  return sc;
}

int cmd_run(const CommandInvocation& inv, std::ostream& out) {
  const Scenario sc = resolve_scenario(inv);
  IntegratorSpec spec = IntegratorSpec::from(sc);
  spec.bootstrap = bootstrap_or(inv, Bootstrap::kForwardDifference);
  const fs::path dir = prepare_out(inv);

  const auto start = Clock::now();
  const TrajectoryRecord rec = run(sc, spec);
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

  const std::string name(to_string(spec.kind));
  write_file(dir / ("trajectory_" + name + ".csv"), [&](std::ostream& os) { write_csv(rec, os); });
  write_file(dir / ("energy_" + name + ".csv"), [&](std::ostream& os) { write_energy_csv(rec, os); });
  if (inv.svg) {
    write_svg(dir / ("plot_trajectory_" + name + ".svg"), trajectory_series(rec),
              trajectory_style("trajectories, " + spec.label()));
    write_svg(dir / ("plot_energy_" + name + ".svg"), energy_series(rec),
              energy_style("discrete energy, " + spec.label()));
  }
  const std::string summary = run_summary(rec, spec, seconds);
  write_text(dir / "report.txt", summary);
  out << summary;
  return kExitOk;
}

int cmd_compare(const CommandInvocation& inv, std::ostream& out) {
  const Scenario sc = resolve_scenario(inv);
  IntegratorSpec vi;
  vi.kind = IntegratorKind::kVariational;
  vi.variant = sc.variant;
  vi.bootstrap = bootstrap_or(inv, Bootstrap::kForwardDifference);
  IntegratorSpec euler;
  euler.kind = IntegratorKind::kEuler;
  IntegratorSpec reference;
  reference.kind = IntegratorKind::kRk4;
  if (inv.reference_substeps < 1) throw UsageError("--ref-substeps must be positive");
  reference.substeps = inv.reference_substeps;

  const fs::path dir = prepare_out(inv);
  const TrajectoryRecord rec_vi = run(sc, vi);
  const TrajectoryRecord rec_eu = run(sc, euler);
  const IntegratorSpec candidates[] = {vi, euler};
  const auto vs_ref = compare_lockstep(sc, reference, candidates);
  const LockstepComparison vi_vs_euler = compare_lockstep(sc, vi, euler);

  for (const auto* rec : {&rec_vi, &rec_eu}) {
    const std::string name = rec == &rec_vi ? "variational" : "euler";
    write_file(dir / ("trajectory_" + name + ".csv"), [&](std::ostream& os) { write_csv(*rec, os); });
    write_file(dir / ("energy_" + name + ".csv"), [&](std::ostream& os) { write_energy_csv(*rec, os); });
  }
  if (inv.svg) {
    write_svg(dir / "plot_trajectory_variational.svg", trajectory_series(rec_vi),
              trajectory_style("trajectories, " + vi.label()));
    write_svg(dir / "plot_trajectory_euler.svg", trajectory_series(rec_eu), trajectory_style("trajectories, euler"));
    const std::vector<Series> energies = {total_energy_series(rec_vi, vi.label()),
                                          total_energy_series(rec_eu, "euler")};
    write_svg(dir / "plot_energy.svg", energies, energy_style("total discrete energy"));
  }

  std::ostringstream os;
  os << describe(sc);
  os << "reference    rk4, " << reference.substeps << " substeps per step\n\n";
  os << std::left << std::setw(24) << "integrator" << std::right << std::setw(16) << "max |dq| ref"
     << std::setw(16) << "terminal |dq|" << std::setw(16) << "max |dE^d| ref" << "\n";
  const std::string labels[] = {vi.label(), euler.label()};
  for (std::size_t c = 0; c < 2; ++c) {
    os << std::left << std::setw(24) << labels[c] << std::right << std::setprecision(6) << std::setw(16)
       << vs_ref[c].max_position_discrepancy << std::setw(16) << vs_ref[c].terminal_position_discrepancy
       << std::setw(16) << vs_ref[c].max_energy_discrepancy << "\n";
  }
  os << "\n" << vi.label() << " vs euler: max |dq| " << vi_vs_euler.max_position_discrepancy
     << ", max |dE^d| " << vi_vs_euler.max_energy_discrepancy << "\n";
  write_text(dir / "report.txt", os.str());
  out << os.str();
  return kExitOk;
}

int cmd_convergence(const CommandInvocation& inv, std::ostream& out) {
  if (!inv.h.empty() && inv.h.size() < 3) throw UsageError("convergence needs at least three --h values");
  const Scenario sc = resolve_scenario(inv);
  const std::vector<double> grid = inv.h.empty() ? kDefaultGrid : inv.h;

  ConvergenceOptions options;
  options.horizon = inv.horizon;
  options.bootstrap = bootstrap_or(inv, Bootstrap::kDiscreteLegendre);
  options.reference_refinement = inv.reference_substeps;

  std::vector<IntegratorKind> kinds;
  if (inv.integrator) {
    kinds.push_back(sc.integrator);
  } else {
    kinds = {IntegratorKind::kEuler, IntegratorKind::kVariational};
  }

  const fs::path dir = prepare_out(inv);
  std::string text = describe(sc);
  std::string csv;
  for (IntegratorKind kind : kinds) {
    const ConvergenceReport report = convergence_order(kind, sc.variant, sc, grid, options);
    text += "\n" + report.to_text();
    const std::string body = report.to_csv();
    csv += csv.empty() ? body : body.substr(body.find('\n') + 1);
  }
  write_text(dir / "convergence.csv", csv);
  write_text(dir / "report.txt", text);
  out << text;
  return kExitOk;
}

int cmd_bench(const CommandInvocation& inv, std::ostream& out) {
  const std::size_t steps = inv.steps.value_or(1000000);
  if (steps == 0) throw UsageError("--steps must be positive for bench");
  const Scenario sc = resolve_scenario(inv);
  const auto rows = bench_integrators(sc, steps);

  std::ostringstream os;
  os << describe(sc);
  os << "steps per integrator  " << steps << "\n\n";
  os << std::left << std::setw(26) << "integrator" << std::right << std::setw(12) << "ns/step" << std::setw(16)
     << "steps/sec" << std::setw(14) << "setup (us)" << "\n";
  for (const BenchRow& r : rows) {
    os << std::left << std::setw(26) << r.integrator << std::right << std::fixed << std::setprecision(2)
       << std::setw(12) << r.ns_per_step() << std::setw(16) << std::setprecision(0) << r.steps_per_second()
       << std::setw(14) << std::setprecision(3) << r.setup_seconds * 1e6 << "\n";
  }
  os.unsetf(std::ios::floatfield);
  const double vi = rows[0].ns_per_step();
  os << "\nvariational / euler  " << std::setprecision(3) << vi / rows[2].ns_per_step() << "\n";
  os << "variational / rk4    " << vi / rows[3].ns_per_step() << "\n";

  const fs::path dir = prepare_out(inv);
  write_text(dir / "report.txt", os.str());
  out << os.str();
  return kExitOk;
}

int guarded(const std::function<int()>& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownPresetError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "scenario error: " << e.what() << "\n";
    return kExitScenario;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Formation-control simulations with a forced variational integrator"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  CommandInvocation inv;
  std::string preset_name, scenario_path, integrator, variant, bootstrap;
  std::size_t steps = 0, record_every = 0;
  double h_single = 0.0;

  const auto common = [&](CLI::App* sub, bool grid) {
    sub->add_option("--preset", preset_name, "built-in scenario name");
    sub->add_option("--scenario", scenario_path, "scenario JSON file");
    sub->add_option("--integrator", integrator, "variational | euler | rk4");
    sub->add_option("--variant", variant, "paper | consistent (variational only)");
    sub->add_option("--bootstrap", bootstrap, "forward | legendre (variational start)");
    sub->add_option("--steps", steps, "number of steps");
    sub->add_option("--record-every", record_every, "record every k-th step");
    if (grid) {
      sub->add_option("--h", inv.h, "step sizes (repeat or comma-separate)")->delimiter(',');
    } else {
      sub->add_option("--h", h_single, "step size override");
    }
    sub->add_option("--out", inv.out_dir, "output directory")->capture_default_str();
    sub->add_flag("--svg", inv.svg, "also write SVG plots");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "simulate one scenario");
  common(run_cmd, false);
  CLI::App* compare_cmd = app.add_subcommand("compare", "variational vs explicit Euler");
  common(compare_cmd, false);
  compare_cmd->add_option("--ref-substeps", inv.reference_substeps, "RK4 reference steps per step")
      ->capture_default_str();
  CLI::App* conv_cmd = app.add_subcommand("convergence", "terminal-error convergence orders");
  common(conv_cmd, true);
  conv_cmd->add_option("--horizon", inv.horizon, "common final time T")->capture_default_str();
  conv_cmd->add_option("--ref-substeps", inv.reference_substeps, "reference refinement of the smallest h")
      ->capture_default_str();
  CLI::App* bench_cmd = app.add_subcommand("bench", "per-step cost of each integrator");
  common(bench_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  inv.subcommand = active->get_name();
  const auto given = [&](const char* flag) { return active->count(flag) > 0; };
  if (given("--preset")) inv.preset = preset_name;
  if (given("--scenario")) inv.scenario_path = scenario_path;
  if (given("--integrator")) inv.integrator = integrator;
  if (given("--variant")) inv.variant = variant;
  if (given("--bootstrap")) inv.bootstrap = bootstrap;
  if (given("--steps")) inv.steps = steps;
  if (given("--record-every")) inv.record_every = record_every;
  if (given("--h") && inv.subcommand != "convergence") inv.h = {h_single};

  return guarded(
      [&] {
        if (inv.subcommand == "run") return cmd_run(inv, out);
        if (inv.subcommand == "compare") return cmd_compare(inv, out);
        if (inv.subcommand == "convergence") return cmd_convergence(inv, out);
        return cmd_bench(inv, out);
      },
      err);
}

}  // namespace flockvi::cli
