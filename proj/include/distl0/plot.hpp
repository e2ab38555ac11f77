#pragma once

// Minimal SVG 1.1 line charts.

#include <span>
#include <string>
#include <vector>

namespace distl0 {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "t";
  std::string y_label;
  bool log_y = false;
  int width = 720;
  int height = 450;
};

/// One polyline per series plus a legend. Non-finite points, and
/// non-positive ones on a log axis, are left out. Throws InvalidParams when
/// no series has a plottable point or x and y lengths differ.
std::string render_svg(std::span<const Series> series, const PlotOptions& options);

}  // namespace distl0
