#pragma once

#include <string>
#include <vector>

namespace bwave::tools {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Polyline chart in a fixed 800x600 viewBox with linear axes and tick labels.
std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series);

}  // namespace bwave::tools
