#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ptk::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Axes {
  std::string x_label;
  std::string y_label;
  std::string title;
};

/// Self-contained SVG 1.1 line chart: linear axes, one polyline per series
/// and a legend. Throws InvalidInput when there is no series or a series is
/// empty. Output depends only on the input.
std::string emit_svg(const std::vector<Series>& series, const Axes& axes);

}  // namespace ptk::cli
