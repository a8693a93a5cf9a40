#pragma once

#include <string>
#include <vector>

namespace sanas {

// Hand-rolled standalone SVG emitters; no external renderer dependencies.

struct SvgSeries {
    std::string label;
    std::string color;   // e.g. "#1f77b4"
    bool connect = false;  // draw a polyline through the (sorted-by-x) points
    std::vector<std::pair<double, double>> points;
};

std::string svg_scatter(const std::vector<SvgSeries>& series, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::string& header_comment = "");

// values indexed [row][col], colored white -> dark blue over [0, max].
std::string svg_heatmap(const std::vector<std::vector<double>>& values,
                        const std::vector<std::string>& row_labels,
                        const std::vector<std::string>& col_labels, const std::string& title,
                        const std::string& header_comment = "");

} // namespace sanas
