#include "flockvi/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "flockvi/errors.hpp"

namespace flockvi {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-300) {
      const double d = std::max(1.0, std::abs(lo)) * 0.5;
      lo -= d;
      hi += d;
    }
  }
};

// 1-2-5 ticks covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (raw <= step) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::string tick_label(double v, bool exponent) {
  std::ostringstream os;
  if (exponent) {
    os << "1e" << static_cast<int>(std::lround(v));
  } else {
    os.precision(6);
    os << v;
  }
  return os.str();
}

}  // namespace

std::size_t emit_svg(std::span<const Series> series, const PlotStyle& style, std::ostream& sink) {
  const auto transform_y = [&](double y) { return style.log_y ? std::log10(y) : y; };
  const auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!style.log_y || y > 0.0);
  };

  Range xr, yr;
  std::size_t drawable = 0;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      xr.add(x);
      yr.add(transform_y(y));
      ++drawable;
    }
  }
  if (series.empty() || drawable == 0) throw ValidationError("emit_svg: no data to plot");
  xr.pad();
  yr.pad();

  const double left = 70, right = 150, top = 40, bottom = 55;
  double plot_w = style.width - left - right;
  double plot_h = style.height - top - bottom;
  if (style.equal_aspect) {
    const double scale = std::min(plot_w / (xr.hi - xr.lo), plot_h / (yr.hi - yr.lo));
    const double cx = 0.5 * (xr.lo + xr.hi), cy = 0.5 * (yr.lo + yr.hi);
    xr = {cx - 0.5 * plot_w / scale, cx + 0.5 * plot_w / scale};
    yr = {cy - 0.5 * plot_h / scale, cy + 0.5 * plot_h / scale};
  }
  const auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.width
     << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width << ' ' << style.height
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    os << "<text x=\"" << left + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(style.title) << "</text>\n";
  }

  // Axes frame and ticks.
  os << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
     << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\"/>\n";
  const auto xticks = nice_ticks(xr.lo, xr.hi);
  const auto yticks = nice_ticks(yr.lo, yr.hi);
  for (double t : xticks) {
    os << "<line x1=\"" << px(t) << "\" y1=\"" << top + plot_h << "\" x2=\"" << px(t) << "\" y2=\""
       << top + plot_h + 5 << "\"/>\n";
  }
  for (double t : yticks) {
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
       << "\"/>\n";
  }
  os << "</g>\n<g class=\"tick-labels\" fill=\"black\">\n";
  for (double t : xticks) {
    os << "<text x=\"" << px(t) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">"
       << tick_label(t, false) << "</text>\n";
  }
  const bool integral_decades =
      style.log_y && std::all_of(yticks.begin(), yticks.end(), [](double t) { return t == std::round(t); });
  for (double t : yticks) {
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">"
       << (style.log_y && !integral_decades ? tick_label(std::pow(10.0, t), false)
                                            : tick_label(t, style.log_y))
       << "</text>\n";
  }
  os << "</g>\n";
  if (!style.x_label.empty()) {
    os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << style.height - 12
       << "\" text-anchor=\"middle\">" << escape(style.x_label) << "</text>\n";
  }
  if (!style.y_label.empty()) {
    os << "<text transform=\"translate(16," << top + plot_h / 2
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(style.y_label) << "</text>\n";
  }

  // Data.
  os << "<g class=\"series\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::ostringstream pts;
    pts.precision(7);
    std::size_t n = 0;
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      pts << (n++ ? " " : "") << px(x) << ',' << py(transform_y(y));
    }
    if (n == 0) continue;
    os << "<polyline stroke=\"" << color << "\" points=\"" << pts.str() << "\"/>\n";
  }
  os << "</g>\n";

  if (style.mark_start) {
    os << "<g class=\"start-markers\" stroke-width=\"2\">\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
      const Series& s = series[k];
      auto first = std::find_if(s.points.begin(), s.points.end(),
                                [&](const auto& p) { return usable(p.first, p.second); });
      if (first == s.points.end()) continue;
      const double cx = px(first->first), cy = py(transform_y(first->second));
      const char* color = kPalette[k % std::size(kPalette)];
      os << "<path class=\"cross\" stroke=\"" << color << "\" d=\"M" << cx - 5 << ',' << cy - 5 << " L"
         << cx + 5 << ',' << cy + 5 << " M" << cx - 5 << ',' << cy + 5 << " L" << cx + 5 << ','
         << cy - 5 << "\"/>\n";
    }
    os << "</g>\n";
  }

  // Legend.
  os << "<g class=\"legend\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double y = top + 10 + 18.0 * static_cast<double>(k);
    const double x = left + plot_w + 12;
    os << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 22 << "\" y2=\"" << y
       << "\" stroke=\"" << kPalette[k % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << x + 28 << "\" y=\"" << y + 4 << "\">" << escape(series[k].name) << "</text>\n";
  }
  os << "</g>\n</svg>\n";

  const std::string doc = os.str();
  sink.write(doc.data(), static_cast<std::streamsize>(doc.size()));
  if (!sink) throw std::ios_base::failure("SVG sink write failed");
  return doc.size();
}

}  // namespace flockvi
