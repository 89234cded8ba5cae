#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "flockvi/scenario.hpp"

namespace flockvi {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Column names of the trajectory CSV for a scenario shape.
std::vector<std::string> trajectory_columns(const Scenario& scenario);
std::vector<std::string> energy_columns(const Scenario& scenario);

/// Header row plus one row per sample. Returns bytes written; throws
/// std::ios_base::failure if the sink fails.
std::size_t write_csv(const TrajectoryRecord& record, std::ostream& sink);

/// Time plus per-agent and total discrete energy, raw and divided by h.
std::size_t write_energy_csv(const TrajectoryRecord& record, std::ostream& sink);

/// Numeric CSV as written above.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Throws ValidationError on ragged rows or unparsable numbers.
CsvTable read_csv(std::istream& source);

}  // namespace flockvi
