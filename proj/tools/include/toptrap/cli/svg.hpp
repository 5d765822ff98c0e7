#pragma once

#include <string>
#include <vector>

namespace toptrap::cli {

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;
  std::vector<std::string> annotations;
  int width = 720;
  int height = 480;
};

/// Standalone SVG document (no external references) with one polyline per
/// series, axis ticks, labels and a legend.
std::string render_svg(const ChartSpec& chart);

std::string xml_escape(const std::string& s);

}  // namespace toptrap::cli
