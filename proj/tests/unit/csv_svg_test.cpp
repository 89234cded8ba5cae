#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

namespace flockvi {
namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(FLOCKVI_GOLDEN_DIR) + "/" + name + ".header");
  std::string line;
  std::getline(in, line);
  EXPECT_FALSE(line.empty()) << name;
  return line;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

Scenario small_run(std::size_t steps, std::size_t record_every) {
  Scenario sc = preset(kPresetTriangleCoarse);
  sc.steps = steps;
  sc.record_every = record_every;
  return sc;
}

std::string csv_of(const TrajectoryRecord& rec) {
  std::ostringstream os;
  const std::size_t bytes = write_csv(rec, os);
  EXPECT_EQ(bytes, os.str().size());
  return os.str();
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double x : {0.0, -0.0, 1.0, 0.1, 0.1 + 0.2, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5e-5,
                   std::nextafter(1.0, 2.0)}) {
    const std::string s = format_double(x);
    EXPECT_EQ(std::stod(s), x) << s;
  }
  EXPECT_EQ(format_double(0.005), "0.005");
  EXPECT_EQ(format_double(12.28), "12.28");
}

struct GoldenCase {
  const char* name;
  int dim;
  std::size_t agents;
  std::vector<Edge> edges;
};

TEST(Csv, HeadersMatchGoldenFiles) {
  const std::vector<GoldenCase> cases = {
      {"triangle_2d", 2, 3, {{0, 1, 10}, {1, 2, 10}, {0, 2, 10}}},
      {"square_3d", 3, 4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}, {0, 2, 1.5}}},
      {"pair_1d", 1, 2, {{0, 1, 2}}},
      {"pair_4d", 4, 2, {{0, 1, 1}}},
  };
  for (const GoldenCase& c : cases) {
    Scenario sc;
    sc.dim = c.dim;
    sc.agent_count = c.agents;
    sc.edges = c.edges;
    sc.h = 0.1;
    sc.initial_positions = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(c.agents) * c.dim, 0.0, 3.0);
    sc.initial_velocities = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c.agents) * c.dim);
    const TrajectoryRecord rec = run(sc);
    std::ostringstream traj, energy;
    write_csv(rec, traj);
    write_energy_csv(rec, energy);
    EXPECT_EQ(first_line(traj.str()), golden(std::string("trajectory_") + c.name)) << c.name;
    EXPECT_EQ(first_line(energy.str()), golden(std::string("energy_") + c.name)) << c.name;
  }
}

TEST(Csv, RowCounts) {
  const std::string empty = csv_of(run(small_run(0, 1)));
  EXPECT_EQ(count(empty, "\n"), 2u);
  const std::string strided = csv_of(run(small_run(100, 10)));
  EXPECT_EQ(count(strided, "\n"), 12u);
}

TEST(Csv, RoundTripIsBitExact) {
  const TrajectoryRecord rec = run(small_run(200, 7));
  std::istringstream in(csv_of(rec));
  const CsvTable table = read_csv(in);
  ASSERT_EQ(table.rows.size(), rec.samples.size());
  EXPECT_EQ(table.header, trajectory_columns(rec.scenario));
  for (std::size_t r = 0; r < rec.samples.size(); ++r) {
    const Sample& s = rec.samples[r];
    const auto& row = table.rows[r];
    EXPECT_EQ(row[0], s.time);
    for (Eigen::Index k = 0; k < 6; ++k) EXPECT_EQ(row[1 + static_cast<std::size_t>(k)], s.positions[k]);
    EXPECT_EQ(row[10], s.diagnostics.total_discrete_energy);
    EXPECT_EQ(row[18], s.diagnostics.velocity_disagreement);
    EXPECT_EQ(row[19], s.diagnostics.momentum[0]);
  }
  // Re-emitting the parsed numbers reproduces the text.
  std::ostringstream again;
  again << table.header[0];
  for (std::size_t c = 1; c < table.header.size(); ++c) again << ',' << table.header[c];
  again << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) again << (c ? "," : "") << format_double(row[c]);
    again << '\n';
  }
  EXPECT_EQ(again.str(), csv_of(rec));
}

TEST(Csv, DeterministicAcrossRuns) {
  EXPECT_EQ(csv_of(run(small_run(300, 1))), csv_of(run(small_run(300, 1))));
}

TEST(Csv, ReadRejectsRaggedRows) {
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(read_csv(ragged), ValidationError);
  std::istringstream text("a,b\n1,x\n");
  EXPECT_THROW(read_csv(text), ValidationError);
}

TEST(Csv, SinkFailureThrows) {
  std::ostringstream bad;
  bad.setstate(std::ios::badbit);
  EXPECT_THROW(write_csv(run(small_run(1, 1)), bad), std::ios_base::failure);
}

TEST(Svg, SingleSeriesHasOnePolyline) {
  const Series s{"only", {{0.0, 1.0}, {1.0, 2.0}}};
  std::ostringstream os;
  const std::size_t bytes = emit_svg(std::span(&s, 1), PlotStyle{}, os);
  const std::string doc = os.str();
  EXPECT_EQ(bytes, doc.size());
  EXPECT_EQ(count(doc, "<polyline"), 1u);
  EXPECT_NE(doc.find("<svg"), std::string::npos);
  EXPECT_NE(doc.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(doc, "class=\"cross\""), 0u);
}

TEST(Svg, TriangleTrajectoriesHaveCrosses) {
  const TrajectoryRecord rec = run(small_run(400, 4));
  std::vector<Series> series;
  for (AgentIndex i = 0; i < 3; ++i) {
    Series s{"agent " + std::to_string(i + 1), {}};
    for (const Sample& smp : rec.samples) {
      s.points.emplace_back(smp.positions[2 * static_cast<Eigen::Index>(i)],
                            smp.positions[2 * static_cast<Eigen::Index>(i) + 1]);
    }
    series.push_back(std::move(s));
  }
  PlotStyle style;
  style.mark_start = true;
  style.equal_aspect = true;
  style.title = "trajectories";
  std::ostringstream os;
  emit_svg(series, style, os);
  const std::string doc = os.str();
  EXPECT_EQ(count(doc, "<polyline"), 3u);
  EXPECT_EQ(count(doc, "class=\"cross\""), 3u);
  EXPECT_NE(doc.find("agent 3"), std::string::npos);
  EXPECT_NE(doc.find("trajectories"), std::string::npos);
}

TEST(Svg, EmptyInputRejected) {
  std::ostringstream os;
  EXPECT_THROW(emit_svg(std::span<const Series>{}, PlotStyle{}, os), ValidationError);
  const Series hollow{"none", {}};
  EXPECT_THROW(emit_svg(std::span(&hollow, 1), PlotStyle{}, os), ValidationError);
}

TEST(Svg, EscapesText) {
  const Series s{"a<b & c", {{0.0, 1.0}, {1.0, 3.0}}};
  PlotStyle style;
  style.log_y = true;
  std::ostringstream os;
  emit_svg(std::span(&s, 1), style, os);
  EXPECT_EQ(os.str().find("a<b"), std::string::npos);
  EXPECT_NE(os.str().find("a&lt;b &amp; c"), std::string::npos);
}

}  // namespace
}  // namespace flockvi
