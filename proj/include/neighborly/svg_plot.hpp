#pragma once

#include <string>
#include <utility>
#include <vector>

namespace neighborly {

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
  std::string color = "#1f77b4";
};

/// Minimal standalone SVG line plot: axes with ticks, labels, one polyline
/// per series and a legend.
std::string line_plot_svg(const std::vector<PlotSeries>& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label);

}  // namespace neighborly
