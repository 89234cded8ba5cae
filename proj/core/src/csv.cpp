#include "flockvi/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>

namespace flockvi {
namespace {

std::string axis_name(int axis, int dim) {
  if (dim <= 3) return std::string(1, "xyz"[axis]);
  return std::to_string(axis + 1);
}

std::string join_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  line += '\n';
  return line;
}

class RowWriter {
 public:
  explicit RowWriter(std::ostream& sink) : sink_(sink) {}

  void line(const std::string& text) {
    sink_.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!sink_) throw std::ios_base::failure("CSV sink write failed");
    bytes_ += text.size();
  }
  std::size_t bytes() const { return bytes_; }

 private:
  std::ostream& sink_;
  std::size_t bytes_ = 0;
};

void append(std::string& row, double value) {
  if (!row.empty()) row += ',';
  row += format_double(value);
}

void append_energy(std::string& row, const Sample& s, double h) {
  const auto& e = s.diagnostics.per_agent_discrete_energy;
  for (Eigen::Index i = 0; i < e.size(); ++i) append(row, e[i]);
  append(row, s.diagnostics.total_discrete_energy);
  for (Eigen::Index i = 0; i < e.size(); ++i) append(row, e[i] / h);
  append(row, s.diagnostics.total_discrete_energy / h);
}

void energy_names(const Scenario& sc, std::vector<std::string>& cols) {
  for (std::size_t i = 1; i <= sc.agent_count; ++i) cols.push_back("Ed_" + std::to_string(i));
  cols.push_back("Ed_total");
  for (std::size_t i = 1; i <= sc.agent_count; ++i) cols.push_back("Ed_over_h_" + std::to_string(i));
  cols.push_back("Ed_over_h_total");
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

std::vector<std::string> trajectory_columns(const Scenario& sc) {
  std::vector<std::string> cols{"t"};
  for (std::size_t i = 1; i <= sc.agent_count; ++i) {
    for (int a = 0; a < sc.dim; ++a) cols.push_back("q" + std::to_string(i) + "_" + axis_name(a, sc.dim));
  }
  energy_names(sc, cols);
  for (const Edge& e : sc.edges) {
    const auto lo = std::min(e.tail, e.head) + 1;
    const auto hi = std::max(e.tail, e.head) + 1;
    cols.push_back("edge_err_" + std::to_string(lo) + "_" + std::to_string(hi));
  }
  cols.push_back("disagreement");
  for (int a = 0; a < sc.dim; ++a) cols.push_back("momentum_" + axis_name(a, sc.dim));
  return cols;
}

std::vector<std::string> energy_columns(const Scenario& sc) {
  std::vector<std::string> cols{"t"};
  energy_names(sc, cols);
  return cols;
}

std::size_t write_csv(const TrajectoryRecord& record, std::ostream& sink) {
  RowWriter out(sink);
  out.line(join_row(trajectory_columns(record.scenario)));
  for (const Sample& s : record.samples) {
    std::string row;
    append(row, s.time);
    for (Eigen::Index k = 0; k < s.positions.size(); ++k) append(row, s.positions[k]);
    append_energy(row, s, record.scenario.h);
    for (Eigen::Index k = 0; k < s.diagnostics.edge_errors.size(); ++k) append(row, s.diagnostics.edge_errors[k]);
    append(row, s.diagnostics.velocity_disagreement);
    for (Eigen::Index k = 0; k < s.diagnostics.momentum.size(); ++k) append(row, s.diagnostics.momentum[k]);
    row += '\n';
    out.line(row);
  }
  return out.bytes();
}

std::size_t write_energy_csv(const TrajectoryRecord& record, std::ostream& sink) {
  RowWriter out(sink);
  out.line(join_row(energy_columns(record.scenario)));
  for (const Sample& s : record.samples) {
    std::string row;
    append(row, s.time);
    append_energy(row, s, record.scenario.h);
    row += '\n';
    out.line(row);
  }
  return out.bytes();
}

CsvTable read_csv(std::istream& source) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ValidationError("CSV line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(table.header.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const char* first = cells[k].data();
      const char* last = first + cells[k].size();
      const auto result = std::from_chars(first, last, row[k]);
      if (result.ec != std::errc{} || result.ptr != last) {
        throw ValidationError("CSV line " + std::to_string(line_no) + ": bad number '" + cells[k] + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace flockvi
