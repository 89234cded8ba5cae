#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace flockvi {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct PlotStyle {
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Draw a cross at the first point of every series (initial positions).
  bool mark_start = false;
  /// Logarithmic y axis; non-positive values are dropped.
  bool log_y = false;
  /// Same scale on both axes, for trajectory plots.
  bool equal_aspect = false;
  int width = 640;
  int height = 480;
};

/// Writes a standalone SVG 1.1 line plot: one polyline per series, axes
/// with tick labels, and a legend. Throws ValidationError if there is
/// nothing to draw. Returns bytes written.
std::size_t emit_svg(std::span<const Series> series, const PlotStyle& style, std::ostream& sink);

}  // namespace flockvi
