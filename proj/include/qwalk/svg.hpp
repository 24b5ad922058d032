#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qwalk {

// Minimal self-contained SVG 1.1 line/scatter plots; no external resources.

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#000000";
    bool line = true;     // polyline, otherwise scatter markers
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

std::string render_svg(const PlotSpec& plot);

}  // namespace qwalk
