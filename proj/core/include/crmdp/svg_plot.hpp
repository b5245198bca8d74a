#pragma once

#include <optional>
#include <string>
#include <vector>

namespace crmdp {

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::optional<double> reference_y;  // dashed horizontal guide
};

std::string render_svg(const LinePlot& plot);

/// Averages consecutive values into at most `max_points` buckets; returns
/// (bucket centre index, mean) pairs.
PlotSeries downsample(std::string label, std::string color, const std::vector<double>& values,
                      std::size_t max_points);

}  // namespace crmdp
