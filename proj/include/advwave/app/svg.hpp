// Minimal line plots: axes box, min/max tick labels, one polyline per series.
#pragma once

#include <string>
#include <vector>

namespace advwave::app {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Throws IoError when the file cannot be written.
void write_svg(const std::string& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const std::vector<Series>& series);

}  // namespace advwave::app
