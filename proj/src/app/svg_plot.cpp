// SPDX-License-Identifier: Apache-2.0
#include "afescale/app/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "afescale/app/csv.hpp"

namespace afescale::app {

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;  // legend gutter
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string tick_label(double v) {
    // Trim format_number noise for axis labels.
    const double rounded = std::abs(v) < 1e-12 ? 0.0 : v;
    return format_number(rounded);
}

} // namespace

std::string render_line_chart(const std::vector<PlotSeries>& series,
                              const PlotOptions& options) {
    if (series.empty()) throw std::domain_error("plot needs at least one series");

    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw std::domain_error("series x/y lengths differ");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double x = options.log_x ? std::log10(s.x[i]) : s.x[i];
            if (!std::isfinite(x) || !std::isfinite(s.y[i])) continue;
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    }
    if (!(x_max > x_min)) x_max = x_min + 1.0;
    if (!(y_max > y_min)) y_max = y_min + 1.0;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto map_x = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto map_y = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + format_number(kWidth) +
           " " + format_number(kHeight) + "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + format_number(kLeft + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           options.title + "</text>\n";

    // Frame and ticks.
    svg += "<rect x=\"" + format_number(kLeft) + "\" y=\"" + format_number(kTop) + "\" width=\"" +
           format_number(plot_w) + "\" height=\"" + format_number(plot_h) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";
    constexpr int ticks = 6;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / ticks;
        const double px = map_x(fx);
        svg += "<line x1=\"" + format_number(px) + "\" y1=\"" + format_number(kTop) + "\" x2=\"" +
               format_number(px) + "\" y2=\"" + format_number(kTop + plot_h) +
               "\" stroke=\"#ddd\"/>\n";
        const double label = options.log_x ? std::pow(10.0, fx) : fx;
        svg += "<text x=\"" + format_number(px) + "\" y=\"" + format_number(kTop + plot_h + 18) +
               "\" text-anchor=\"middle\">" + tick_label(label) + "</text>\n";

        const double fy = y_min + (y_max - y_min) * i / ticks;
        const double py = map_y(fy);
        svg += "<line x1=\"" + format_number(kLeft) + "\" y1=\"" + format_number(py) + "\" x2=\"" +
               format_number(kLeft + plot_w) + "\" y2=\"" + format_number(py) +
               "\" stroke=\"#ddd\"/>\n";
        svg += "<text x=\"" + format_number(kLeft - 8) + "\" y=\"" + format_number(py + 4) +
               "\" text-anchor=\"end\">" + tick_label(fy) + "</text>\n";
    }
    svg += "<text x=\"" + format_number(kLeft + plot_w / 2) + "\" y=\"" +
           format_number(kHeight - 14) + "\" text-anchor=\"middle\">" + options.x_label +
           "</text>\n";
    svg += "<text x=\"20\" y=\"" + format_number(kTop + plot_h / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           format_number(kTop + plot_h / 2) + ")\">" + options.y_label + "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            const double x = options.log_x ? std::log10(series[s].x[i]) : series[s].x[i];
            if (!std::isfinite(x) || !std::isfinite(series[s].y[i])) continue;
            points += format_number(map_x(x)) + "," + format_number(map_y(series[s].y[i])) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.8\"";
        if (series[s].dashed) svg += " stroke-dasharray=\"7,4\"";
        svg += " points=\"" + points + "\"/>\n";

        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(s);
        svg += "<line x1=\"" + format_number(kLeft + plot_w + 12) + "\" y1=\"" +
               format_number(ly - 4) + "\" x2=\"" + format_number(kLeft + plot_w + 40) +
               "\" y2=\"" + format_number(ly - 4) + "\" stroke=\"";
        svg += color;
        svg += series[s].dashed ? "\" stroke-dasharray=\"7,4\"/>\n" : "\"/>\n";
        svg += "<text x=\"" + format_number(kLeft + plot_w + 46) + "\" y=\"" + format_number(ly) +
               "\">" + series[s].name + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace afescale::app
