#include "flockvi/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace flockvi {
namespace {

using nlohmann::json;

const std::set<std::string, std::less<>> kFields = {
    "dim", "agent_count", "edges", "initial_positions", "initial_velocities",
    "h", "steps", "integrator", "variant", "record_every"};

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw ScenarioFieldError(field, message);
}

const json& require(const json& doc, const std::string& field) {
  auto it = doc.find(field);
  if (it == doc.end()) field_error(field, "missing required field");
  return *it;
}

std::uint64_t as_count(const json& value, const std::string& field) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) field_error(field, "must be non-negative");
  field_error(field, "must be an integer");
}

double as_number(const json& value, const std::string& field) {
  if (!value.is_number()) field_error(field, "must be a number");
  return value.get<double>();
}

Eigen::VectorXd as_vector(const json& value, const std::string& field) {
  if (!value.is_array()) field_error(field, "must be an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(value.size()));
  for (std::size_t k = 0; k < value.size(); ++k) {
    out[static_cast<Eigen::Index>(k)] = as_number(value[k], field);
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t k = 0; k + 1 < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

}  // namespace

void Scenario::validate() const {
  if (dim <= 0) field_error("dim", "must be a positive integer");
  if (agent_count == 0) field_error("agent_count", "must be a positive integer");
  if (!(h > 0.0) || !std::isfinite(h)) field_error("h", "must be a positive finite number");
  if (record_every == 0) field_error("record_every", "must be a positive integer");
  const auto expected = static_cast<Eigen::Index>(agent_count) * dim;
  if (initial_positions.size() != expected) {
    field_error("initial_positions", "expected " + std::to_string(expected) + " values, got " +
                                         std::to_string(initial_positions.size()));
  }
  if (initial_velocities.size() != expected) {
    field_error("initial_velocities", "expected " + std::to_string(expected) + " values, got " +
                                          std::to_string(initial_velocities.size()));
  }
  if (!initial_positions.allFinite()) field_error("initial_positions", "values must be finite");
  if (!initial_velocities.allFinite()) field_error("initial_velocities", "values must be finite");
  (void)graph();
}

FormationGraph Scenario::graph() const { return FormationGraph::build(agent_count, edges); }

bool operator==(const Scenario& a, const Scenario& b) {
  return a.dim == b.dim && a.agent_count == b.agent_count && a.edges == b.edges &&
         a.initial_positions.size() == b.initial_positions.size() &&
         a.initial_positions == b.initial_positions &&
         a.initial_velocities.size() == b.initial_velocities.size() &&
         a.initial_velocities == b.initial_velocities && a.h == b.h && a.steps == b.steps &&
         a.integrator == b.integrator && a.variant == b.variant && a.record_every == b.record_every;
}

Scenario load_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ScenarioParseError("scenario parse error at line " + std::to_string(line) + ", column " +
                                 std::to_string(column) + ": " + e.what(),
                             line, column);
  }
  if (!doc.is_object()) throw ScenarioParseError("scenario document must be a JSON object", 1, 1);

  for (const auto& [key, value] : doc.items()) {
    if (!kFields.contains(key)) field_error(key, "unknown field");
  }

  Scenario sc;
  const std::uint64_t dim = as_count(require(doc, "dim"), "dim");
  if (dim == 0 || dim > 64) field_error("dim", "must be between 1 and 64");
  sc.dim = static_cast<int>(dim);
  sc.agent_count = as_count(require(doc, "agent_count"), "agent_count");

  const json& edges = require(doc, "edges");
  if (!edges.is_array()) field_error("edges", "must be an array of [i, j, d] triples");
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 3) field_error("edges", "each edge must be [i, j, d]");
    const std::uint64_t i = as_count(e[0], "edges");
    const std::uint64_t j = as_count(e[1], "edges");
    if (i == 0 || j == 0) field_error("edges", "agent indices are 1-based");
    sc.edges.push_back({static_cast<AgentIndex>(i - 1), static_cast<AgentIndex>(j - 1),
                        as_number(e[2], "edges")});
  }

  sc.initial_positions = as_vector(require(doc, "initial_positions"), "initial_positions");
  sc.initial_velocities = as_vector(require(doc, "initial_velocities"), "initial_velocities");
  sc.h = as_number(require(doc, "h"), "h");
  sc.steps = as_count(require(doc, "steps"), "steps");

  if (auto it = doc.find("integrator"); it != doc.end()) {
    if (!it->is_string()) field_error("integrator", "must be a string");
    auto kind = parse_integrator(it->get<std::string>());
    if (!kind) field_error("integrator", "expected one of variational, euler, rk4");
    sc.integrator = *kind;
  }
  if (auto it = doc.find("variant"); it != doc.end()) {
    if (!it->is_string()) field_error("variant", "must be a string");
    auto variant = parse_variant(it->get<std::string>());
    if (!variant) field_error("variant", "expected one of paper, consistent");
    sc.variant = *variant;
  }
  if (auto it = doc.find("record_every"); it != doc.end()) {
    sc.record_every = as_count(*it, "record_every");
  }

  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& sc) {
  json doc;
  doc["dim"] = sc.dim;
  doc["agent_count"] = sc.agent_count;
  json edges = json::array();
  for (const Edge& e : sc.edges) edges.push_back(json::array({e.tail + 1, e.head + 1, e.distance}));
  doc["edges"] = edges;
  doc["initial_positions"] = vector_json(sc.initial_positions);
  doc["initial_velocities"] = vector_json(sc.initial_velocities);
  doc["h"] = sc.h;
  doc["steps"] = sc.steps;
  doc["integrator"] = std::string(to_string(sc.integrator));
  doc["variant"] = std::string(to_string(sc.variant));
  doc["record_every"] = sc.record_every;
  return doc.dump(2) + "\n";
}

std::vector<std::string> preset_names() {
  return {std::string(kPresetTriangleCoarse), std::string(kPresetTriangleFine)};
}

Scenario preset(std::string_view name) {
  Scenario sc;
  sc.dim = 2;
  sc.agent_count = 3;
  sc.edges = {{0, 1, 10.0}, {1, 2, 10.0}, {0, 2, 10.0}};
  sc.initial_positions = (Eigen::VectorXd(6) << 5.03, -6.56, 2.02, 2.22, -2.33, 12.28).finished();
  sc.initial_velocities = (Eigen::VectorXd(6) << 2.80, -2.90, 0.19, 2.07, -0.67, 1.67).finished();
  sc.integrator = IntegratorKind::kVariational;
  sc.variant = Variant::kPaper;

  // Both presets run to T = 30.
  if (name == kPresetTriangleCoarse) {
    sc.h = 0.005;
    sc.steps = 6000;
    sc.record_every = 1;
  } else if (name == kPresetTriangleFine) {
    sc.h = 0.00005;
    sc.steps = 600000;
    sc.record_every = 100;
  } else {
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw UnknownPresetError("unknown preset '" + std::string(name) + "'; available: " + names);
  }
  return sc;
}

}  // namespace flockvi
