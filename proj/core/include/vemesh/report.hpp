#pragma once

#include <string>
#include <vector>

namespace vemesh {

/// Write rows as CSV; the first row is the header.
void write_csv(const std::string& path, const std::vector<std::string>& rows);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool line = true;  // false draws markers only (scatter)
};

struct ReferenceTriangle {
    double x0, y0;   // corner anchor (data coordinates)
    double factor;   // horizontal extent multiplier
    double slope;    // log-log slope indicated by the hypotenuse
    std::string label;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<PlotSeries> series;
    std::vector<ReferenceTriangle> triangles;
};

/// Standalone SVG line/scatter chart with decade ticks on log axes and
/// reference slope triangles.
void write_svg_plot(const std::string& path, const PlotSpec& spec);

}  // namespace vemesh
