#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "flockvi/diagnostics.hpp"
#include "flockvi/errors.hpp"
#include "flockvi/graph.hpp"
#include "flockvi/integrators.hpp"
#include "flockvi/stacked.hpp"

namespace flockvi {

/// Malformed scenario document; carries the 1-based line and column.
class ScenarioParseError : public ValidationError {
 public:
  ScenarioParseError(const std::string& message, std::size_t line, std::size_t column)
      : ValidationError(message), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A well-formed document with an invalid or unknown field.
class ScenarioFieldError : public ValidationError {
 public:
  ScenarioFieldError(std::string field, const std::string& message)
      : ValidationError(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class UnknownPresetError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// One simulation experiment. Edges are 0-based in memory and 1-based in
/// documents.
struct Scenario {
  int dim = 2;
  std::size_t agent_count = 0;
  std::vector<Edge> edges;
  Eigen::VectorXd initial_positions;
  Eigen::VectorXd initial_velocities;
  double h = 0.0;
  std::size_t steps = 0;
  IntegratorKind integrator = IntegratorKind::kVariational;
  Variant variant = Variant::kPaper;
  std::size_t record_every = 1;

  /// Throws ScenarioFieldError or a graph validation error.
  void validate() const;
  FormationGraph graph() const;
  StackedPosition q0() const { return StackedPosition(dim, initial_positions); }
  StackedVelocity v0() const { return StackedVelocity(dim, initial_velocities); }
  double horizon() const { return h * static_cast<double>(steps); }

  friend bool operator==(const Scenario& a, const Scenario& b);
};

/// Parses and validates a JSON scenario document. Unknown keys are errors.
Scenario load_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

/// JSON document that load_scenario maps back to the same Scenario.
std::string serialize_scenario(const Scenario& scenario);

inline constexpr std::string_view kPresetTriangleCoarse = "paper-triangle-h005";
inline constexpr std::string_view kPresetTriangleFine = "paper-triangle-h00005";

std::vector<std::string> preset_names();
/// Throws UnknownPresetError listing the available names.
Scenario preset(std::string_view name);

/// A recorded step: positions q_k and diagnostics over [t_k, t_{k+1}].
struct Sample {
  std::size_t step = 0;
  double time = 0.0;
  Eigen::VectorXd positions;
  StepDiagnostics diagnostics;
};

struct TrajectoryRecord {
  Scenario scenario;
  std::string integrator_label;
  /// Steps 0, r, 2r, ... with r = scenario.record_every.
  std::vector<Sample> samples;
  /// Always step `scenario.steps`, recorded or not.
  Sample final_state;
};

}  // namespace flockvi
