#include "vemesh/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vemesh {

void write_csv(const std::string& path, const std::vector<std::string>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (const std::string& row : rows) out << row << "\n";
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                         "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

struct AxisMap {
    bool log;
    double lo, hi;
    double pix_lo, pix_hi;

    double operator()(double v) const {
        const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

std::string fmt_tick(double v) {
    std::ostringstream ss;
    if (std::abs(v) >= 1e4 || (std::abs(v) < 1e-3 && v != 0.0)) {
        ss << "1e" << static_cast<int>(std::round(std::log10(std::abs(v))));
    } else {
        ss << v;
    }
    return ss.str();
}

}  // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const PlotSeries& s : spec.series) {
        for (double v : s.x) {
            if (spec.log_x && v <= 0.0) continue;
            x_min = std::min(x_min, v);
            x_max = std::max(x_max, v);
        }
        for (double v : s.y) {
            if (spec.log_y && v <= 0.0) continue;
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (!(x_min < x_max)) x_max = x_min + 1.0;
    if (!(y_min < y_max)) y_max = y_min + 1.0;

    AxisMap xmap{spec.log_x,
                 spec.log_x ? std::floor(std::log10(x_min)) : x_min - 0.05 * (x_max - x_min),
                 spec.log_x ? std::ceil(std::log10(x_max)) : x_max + 0.05 * (x_max - x_min),
                 kMarginLeft, kWidth - kMarginRight};
    AxisMap ymap{spec.log_y,
                 spec.log_y ? std::floor(std::log10(y_min)) : y_min - 0.05 * (y_max - y_min),
                 spec.log_y ? std::ceil(std::log10(y_max)) : y_max + 0.05 * (y_max - y_min),
                 kHeight - kMarginBottom, kMarginTop};
    if (xmap.lo == xmap.hi) xmap.hi += 1.0;
    if (ymap.lo == ymap.hi) ymap.hi += 1.0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << spec.title << "</text>\n";

    // frame
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << kWidth - kMarginLeft - kMarginRight << "\" height=\""
        << kHeight - kMarginTop - kMarginBottom
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    auto tick_positions = [](const AxisMap& map) {
        std::vector<double> ticks;
        if (map.log) {
            for (double d = map.lo; d <= map.hi + 1e-9; d += 1.0) ticks.push_back(std::pow(10.0, d));
        } else {
            const double span = map.hi - map.lo;
            const double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
            const double mult = span / step > 8.0 ? 2.0 : 1.0;
            for (double v = std::ceil(map.lo / (step * mult)) * step * mult; v <= map.hi;
                 v += step * mult)
                ticks.push_back(v);
        }
        return ticks;
    };

    for (double tx : tick_positions(xmap)) {
        const double px = xmap(tx);
        svg << "<line x1=\"" << px << "\" y1=\"" << kHeight - kMarginBottom << "\" x2=\"" << px
            << "\" y2=\"" << kHeight - kMarginBottom + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px << "\" y=\"" << kHeight - kMarginBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(tx) << "</text>\n";
    }
    for (double ty : tick_positions(ymap)) {
        const double py = ymap(ty);
        svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(ty) << "</text>\n";
    }

    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << spec.x_label << "</text>\n";
    svg << "<text x=\"18\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kHeight / 2 << ")\">" << spec.y_label << "</text>\n";

    std::size_t color_idx = 0;
    for (const PlotSeries& s : spec.series) {
        const char* color = kColors[color_idx % (sizeof kColors / sizeof kColors[0])];
        if (s.line) {
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.6\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                svg << xmap(s.x[i]) << "," << ymap(s.y[i]) << " ";
            svg << "\"/>\n";
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            svg << "<circle cx=\"" << xmap(s.x[i]) << "\" cy=\"" << ymap(s.y[i])
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        svg << "<text x=\"" << kWidth - kMarginRight - 8 << "\" y=\""
            << kMarginTop + 16 + 15 * static_cast<double>(color_idx)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << color << "\">" << s.label << "</text>\n";
        ++color_idx;
    }

    // log-log reference slope triangles
    for (const ReferenceTriangle& tri : spec.triangles) {
        const double x1 = tri.x0 * tri.factor;
        const double y1 = tri.y0 * std::pow(tri.factor, tri.slope);
        const double ax = xmap(tri.x0), ay = ymap(tri.y0);
        const double bx = xmap(x1), by = ymap(tri.y0);
        const double cx = xmap(x1), cy = ymap(y1);
        svg << "<polygon points=\"" << ax << "," << ay << " " << bx << "," << by << " " << cx
            << "," << cy << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << (bx + cx) / 2 + 6 << "\" y=\"" << (by + cy) / 2
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">" << tri.label
            << "</text>\n";
    }

    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << svg.str();
}

}  // namespace vemesh
