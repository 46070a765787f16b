// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_APP_SVG_PLOT_HPP
#define AFESCALE_APP_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace afescale::app {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
};

/// Static vector line chart. CSV remains the contract of record; this is a
/// quick-look companion only.
std::string render_line_chart(const std::vector<PlotSeries>& series, const PlotOptions& options);

} // namespace afescale::app

#endif
