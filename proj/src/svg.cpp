#include "sanas/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sanas {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 40, kTop = 48, kBottom = 64;

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Axis {
    double lo = 0, hi = 1;
    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!(hi > lo)) hi = lo + 1;
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    double frac(double v) const { return (v - lo) / (hi - lo); }
};

void emit_frame(std::ostringstream& os, const Axis& ax, const Axis& ay, const std::string& title,
                const std::string& x_label, const std::string& y_label) {
    os << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << (kWidth - kLeft - kRight)
       << "' height='" << (kHeight - kTop - kBottom)
       << "' fill='none' stroke='#444' stroke-width='1'/>\n";
    os << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='16'>"
       << escape_xml(title) << "</text>\n";
    os << "<text x='" << kWidth / 2 << "' y='" << (kHeight - 16)
       << "' text-anchor='middle' font-size='13'>" << escape_xml(x_label) << "</text>\n";
    os << "<text x='20' y='" << kHeight / 2 << "' text-anchor='middle' font-size='13' transform='rotate(-90 20 "
       << kHeight / 2 << ")'>" << escape_xml(y_label) << "</text>\n";
    for (int t = 0; t <= 4; ++t) {
        const double f = t / 4.0;
        const double px = kLeft + f * (kWidth - kLeft - kRight);
        const double py = kHeight - kBottom - f * (kHeight - kTop - kBottom);
        os << "<text x='" << px << "' y='" << (kHeight - kBottom + 18)
           << "' text-anchor='middle' font-size='11'>" << fmt(ax.lo + f * (ax.hi - ax.lo)) << "</text>\n";
        os << "<text x='" << (kLeft - 8) << "' y='" << (py + 4)
           << "' text-anchor='end' font-size='11'>" << fmt(ay.lo + f * (ay.hi - ay.lo)) << "</text>\n";
    }
}

} // namespace

std::string svg_scatter(const std::vector<SvgSeries>& series, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::string& header_comment) {
    Axis ax, ay;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!any) {
                ax.lo = ax.hi = x;
                ay.lo = ay.hi = y;
                any = true;
            }
            ax.expand(x);
            ay.expand(y);
        }
    ax.finish();
    ay.finish();

    std::ostringstream os;
    os << "<?xml version='1.0' encoding='UTF-8'?>\n";
    if (!header_comment.empty()) os << "<!-- " << escape_xml(header_comment) << " -->\n";
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
       << "' viewBox='0 0 " << kWidth << " " << kHeight << "' font-family='sans-serif'>\n";
    emit_frame(os, ax, ay, title, x_label, y_label);

    auto px = [&](double x) { return kLeft + ax.frac(x) * (kWidth - kLeft - kRight); };
    auto py = [&](double y) { return kHeight - kBottom - ay.frac(y) * (kHeight - kTop - kBottom); };

    double legend_y = kTop + 14;
    for (const auto& s : series) {
        if (s.connect && s.points.size() > 1) {
            auto pts = s.points;
            std::sort(pts.begin(), pts.end());
            os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
            for (const auto& [x, y] : pts) os << fmt(px(x)) << "," << fmt(py(y)) << " ";
            os << "'/>\n";
        }
        for (const auto& [x, y] : s.points)
            os << "<circle cx='" << fmt(px(x)) << "' cy='" << fmt(py(y)) << "' r='3' fill='"
               << s.color << "' fill-opacity='0.75'/>\n";
        os << "<circle cx='" << (kWidth - kRight - 130) << "' cy='" << (legend_y - 4)
           << "' r='4' fill='" << s.color << "'/>\n";
        os << "<text x='" << (kWidth - kRight - 120) << "' y='" << legend_y << "' font-size='12'>"
           << escape_xml(s.label) << "</text>\n";
        legend_y += 18;
    }
    os << "</svg>\n";
    return os.str();
}

std::string svg_heatmap(const std::vector<std::vector<double>>& values,
                        const std::vector<std::string>& row_labels,
                        const std::vector<std::string>& col_labels, const std::string& title,
                        const std::string& header_comment) {
    const std::size_t rows = values.size();
    std::size_t cols = 0;
    double vmax = 0.0;
    for (const auto& r : values) {
        cols = std::max(cols, r.size());
        for (double v : r) vmax = std::max(vmax, v);
    }
    if (vmax <= 0) vmax = 1.0;

    const double cell = 26, label_w = 120, label_h = 70, title_h = 36;
    const double w = label_w + cell * static_cast<double>(cols) + 20;
    const double h = title_h + cell * static_cast<double>(rows) + label_h;

    std::ostringstream os;
    os << "<?xml version='1.0' encoding='UTF-8'?>\n";
    if (!header_comment.empty()) os << "<!-- " << escape_xml(header_comment) << " -->\n";
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
       << "' viewBox='0 0 " << w << " " << h << "' font-family='sans-serif' font-size='11'>\n";
    os << "<text x='" << w / 2 << "' y='22' text-anchor='middle' font-size='15'>"
       << escape_xml(title) << "</text>\n";
    for (std::size_t i = 0; i < rows; ++i) {
        const double y = title_h + cell * static_cast<double>(i);
        if (i < row_labels.size())
            os << "<text x='" << (label_w - 6) << "' y='" << (y + cell / 2 + 4)
               << "' text-anchor='end'>" << escape_xml(row_labels[i]) << "</text>\n";
        for (std::size_t j = 0; j < values[i].size(); ++j) {
            const double x = label_w + cell * static_cast<double>(j);
            const double f = std::clamp(values[i][j] / vmax, 0.0, 1.0);
            const int r = static_cast<int>(std::lround(255 - 224 * f));
            const int g = static_cast<int>(std::lround(255 - 180 * f));
            os << "<rect x='" << x << "' y='" << y << "' width='" << cell << "' height='" << cell
               << "' fill='rgb(" << r << "," << g << ",255)' stroke='#ccc'/>\n";
        }
    }
    for (std::size_t j = 0; j < cols && j < col_labels.size(); ++j) {
        const double x = label_w + cell * static_cast<double>(j) + cell / 2;
        const double y = title_h + cell * static_cast<double>(rows) + 14;
        os << "<text x='" << x << "' y='" << y << "' text-anchor='end' transform='rotate(-45 " << x
           << " " << y << ")'>" << escape_xml(col_labels[j]) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace sanas
