#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "../metrics.hpp"

// Small dependency-free SVG emitters: line/step plots and a heatmap grid.
namespace gaode::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct Axes {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    bool step = false;
    std::optional<std::pair<double, double>> y_range;
};

inline std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

namespace detail {

struct Scale {
    double lo;
    double hi;
    bool log;
    double px0;
    double px1;

    double operator()(double v) const
    {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        const double t = b > a ? (x - a) / (b - a) : 0.5;
        return px0 + t * (px1 - px0);
    }
};

inline std::string num(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

} // namespace detail

inline std::string line_plot(const std::vector<Series>& series, const Axes& axes)
{
    constexpr double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 50;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if ((axes.log_x && !(x > 0)) || (axes.log_y && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y))
                continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (axes.y_range) {
        ymin = axes.y_range->first;
        ymax = axes.y_range->second;
    }
    if (!std::isfinite(xmin)) {
        xmin = axes.log_x ? 1 : 0;
        xmax = xmin + 1;
    }
    if (!std::isfinite(ymin)) {
        ymin = axes.log_y ? 1 : 0;
        ymax = ymin + 1;
    }
    if (xmax == xmin)
        xmax = axes.log_x ? xmin * 10 : xmin + 1;
    if (ymax == ymin)
        ymax = axes.log_y ? ymin * 10 : ymin + 1;

    const detail::Scale sx{xmin, xmax, axes.log_x, left, width - right};
    const detail::Scale sy{ymin, ymax, axes.log_y, height - bottom, top};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(axes.title)
       << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
       << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks at the ends and middle
    for (double t : {0.0, 0.5, 1.0}) {
        const double xv = axes.log_x ? std::pow(10.0, std::log10(xmin) + t * (std::log10(xmax) - std::log10(xmin)))
                                     : xmin + t * (xmax - xmin);
        const double yv = axes.log_y ? std::pow(10.0, std::log10(ymin) + t * (std::log10(ymax) - std::log10(ymin)))
                                     : ymin + t * (ymax - ymin);
        os << "<text x=\"" << sx(xv) << "\" y=\"" << height - bottom + 15 << "\" text-anchor=\"middle\">"
           << detail::num(xv) << "</text>\n";
        os << "<text x=\"" << left - 5 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << detail::num(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
       << escape(axes.x_label) << "</text>\n";
    os << "<text x=\"15\" y=\"" << (top + height - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
       << (top + height - bottom) / 2 << ")\">" << escape(axes.y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = palette[k % palette.size()];
        std::ostringstream path;
        bool first = true;
        double prev_y = 0;
        for (auto [x, y] : s.points) {
            if ((axes.log_x && !(x > 0)) || (axes.log_y && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y)) {
                first = true;
                continue;
            }
            const double px = sx(x);
            const double py = sy(y);
            if (first)
                path << "M" << px << "," << py;
            else if (axes.step)
                path << " L" << px << "," << prev_y << " L" << px << "," << py;
            else
                path << " L" << px << "," << py;
            first = false;
            prev_y = py;
        }
        os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
        if (!axes.step)
            for (auto [x, y] : s.points)
                if (!((axes.log_x && !(x > 0)) || (axes.log_y && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y)))
                    os << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" fill=\"" << colour << "\"/>\n";
        const double ly = top + 15 + 16 * static_cast<double>(k);
        os << "<line x1=\"" << width - right + 10 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 30 << "\" y2=\""
           << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << width - right + 35 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

/// Grid heatmap: F on the horizontal axis, CR on the vertical axis (CR = 1 at the top).
inline std::string heatmap(const Histogram2D& h, const std::string& title)
{
    constexpr double cell = 32, left = 60, top = 40;
    const double side = cell * static_cast<double>(h.bins);
    std::uint64_t peak = 1;
    for (auto c : h.counts)
        peak = std::max(peak, c);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + side + 30 << "\" height=\"" << top + side + 50
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << left + side / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
       << "</text>\n";
    for (std::size_t a = 0; a < h.bins; ++a) {
        for (std::size_t b = 0; b < h.bins; ++b) {
            const double t = static_cast<double>(h(a, b)) / static_cast<double>(peak);
            const int shade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
            const double x = left + cell * static_cast<double>(a);
            const double y = top + cell * static_cast<double>(h.bins - 1 - b);
            os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
               << "\" fill=\"rgb(" << shade << "," << shade << "," << shade << ")\" stroke=\"#ccc\"><title>" << h(a, b)
               << "</title></rect>\n";
        }
    }
    for (std::size_t k = 0; k <= h.bins; k += std::max<std::size_t>(1, h.bins / 5)) {
        const double v = static_cast<double>(k) / static_cast<double>(h.bins);
        os << "<text x=\"" << left + cell * static_cast<double>(k) << "\" y=\"" << top + side + 15
           << "\" text-anchor=\"middle\">" << detail::num(v) << "</text>\n";
        os << "<text x=\"" << left - 5 << "\" y=\"" << top + side - cell * static_cast<double>(k) + 4
           << "\" text-anchor=\"end\">" << detail::num(v) << "</text>\n";
    }
    os << "<text x=\"" << left + side / 2 << "\" y=\"" << top + side + 35 << "\" text-anchor=\"middle\">F</text>\n";
    os << "<text x=\"20\" y=\"" << top + side / 2 << "\" text-anchor=\"middle\">CR</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace gaode::svg
