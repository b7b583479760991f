#pragma once

#include <string>
#include <vector>

namespace netadopt {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal line plot: axes, ticks, legend, one polyline per series.
std::string line_plot_svg(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<Series>& series, int width = 860,
                          int height = 540);

}  // namespace netadopt
