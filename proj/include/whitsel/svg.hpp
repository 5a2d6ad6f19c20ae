#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "whitsel/errors.hpp"
#include "whitsel/format.hpp"

namespace whitsel {

/// One polyline for svg_line_plot.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
};

namespace detail {

inline std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace detail

/**
 * Dependency-free line plot: axes, four ticks per axis, one polyline per
 * series, legend, optional marker circle (e.g. the chosen lambda). log_x
 * plots x in log10. Not meant to be pixel-stable art — tests check
 * structure, not bytes.
 */
inline std::string svg_line_plot(const std::string& title, const std::string& x_label,
                                 const std::string& y_label, std::span<const SvgSeries> series,
                                 std::optional<std::array<double, 2>> marker = std::nullopt,
                                 bool log_x = false) {
    constexpr double width = 900, height = 540;
    constexpr double ml = 80, mr = 30, mt = 50, mb = 60;
    auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    auto grow = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return;
        if (first) {
            xmin = xmax = x;
            ymin = ymax = y;
            first = false;
            return;
        }
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const SvgSeries& s : series) {
        if (s.x.size() != s.y.size()) {
            throw DimensionMismatch("svg series '" + s.label + "' has mismatched x/y lengths");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) grow(tx(s.x[i]), s.y[i]);
    }
    if (marker) grow(tx((*marker)[0]), (*marker)[1]);
    if (first) throw InvalidArgument("svg_line_plot: no finite data");
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt_tick(width) +
           "\" height=\"" + detail::fmt_tick(height) + "\" font-family=\"monospace\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + detail::fmt_tick(width / 2) + "\" y=\"28\" text-anchor=\"middle\">" +
           title + "</text>\n";
    // axes
    svg += "<line x1=\"" + detail::fmt_tick(ml) + "\" y1=\"" + detail::fmt_tick(height - mb) +
           "\" x2=\"" + detail::fmt_tick(width - mr) + "\" y2=\"" +
           detail::fmt_tick(height - mb) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail::fmt_tick(ml) + "\" y1=\"" + detail::fmt_tick(mt) + "\" x2=\"" +
           detail::fmt_tick(ml) + "\" y2=\"" + detail::fmt_tick(height - mb) +
           "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 4.0;
        const double fy = ymin + (ymax - ymin) * k / 4.0;
        const double gx = ml + (width - ml - mr) * k / 4.0;
        const double gy = height - mb - (height - mt - mb) * k / 4.0;
        svg += "<text x=\"" + detail::fmt_tick(gx) + "\" y=\"" + detail::fmt_tick(height - mb + 20) +
               "\" text-anchor=\"middle\" font-size=\"12\">" + detail::fmt_tick(fx) + "</text>\n";
        svg += "<text x=\"" + detail::fmt_tick(ml - 8) + "\" y=\"" + detail::fmt_tick(gy + 4) +
               "\" text-anchor=\"end\" font-size=\"12\">" + detail::fmt_tick(fy) + "</text>\n";
    }
    svg += "<text x=\"" + detail::fmt_tick((ml + width - mr) / 2) + "\" y=\"" +
           detail::fmt_tick(height - 14) + "\" text-anchor=\"middle\" font-size=\"13\">" +
           x_label + (log_x ? " (log10)" : "") + "</text>\n";
    svg += "<text x=\"20\" y=\"" + detail::fmt_tick((mt + height - mb) / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 " +
           detail::fmt_tick((mt + height - mb) / 2) + ")\">" + y_label + "</text>\n";
    double legend_y = mt + 10;
    for (const SvgSeries& s : series) {
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(tx(s.x[i])) || !std::isfinite(s.y[i])) continue;
            pts += detail::fmt_tick(px(s.x[i])) + "," + detail::fmt_tick(py(s.y[i])) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.2\" points=\"" +
               pts + "\"/>\n";
        svg += "<text x=\"" + detail::fmt_tick(width - mr - 10) + "\" y=\"" +
               detail::fmt_tick(legend_y) + "\" text-anchor=\"end\" font-size=\"12\" fill=\"" +
               s.color + "\">" + s.label + "</text>\n";
        legend_y += 16;
    }
    if (marker) {
        svg += "<circle cx=\"" + detail::fmt_tick(px((*marker)[0])) + "\" cy=\"" +
               detail::fmt_tick(py((*marker)[1])) +
               "\" r=\"5\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace whitsel
