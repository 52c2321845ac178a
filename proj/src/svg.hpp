#pragma once

#include <string>
#include <vector>

namespace negw::svg {

struct Series {
  std::string label;
  std::vector<double> values;
  bool dots = false;  // scatter instead of polyline
};

/// Line plot of equally spaced samples; one color per series, legend top-left.
std::string line_plot(const std::string& title, const std::vector<Series>& series);

}  // namespace negw::svg
