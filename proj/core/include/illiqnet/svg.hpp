#pragma once

#include <optional>
#include <string>
#include <vector>

namespace illiqnet {

/// Deterministic SVG line/scatter charts for the report stage. No styling
/// knobs beyond what the four report figures need; coordinates are written
/// with fixed precision so regenerating an unchanged report is byte-stable.

struct SvgSeries {
    std::string label;
    std::string color = "#1f6fb2";
    std::vector<std::pair<double, double>> points;
    bool line = true;      // false = scatter
    double marker = 2.5;   // scatter radius
};

struct SvgBand {
    double x0, x1;
    std::string color = "#f4c7c3";
};

struct SvgChart {
    std::string title;
    std::string x_label, y_label;
    int width = 920, height = 380;
    std::vector<SvgSeries> series;
    std::vector<SvgBand> bands;  // background day-range highlights
    /// Tick label per x position (sparse), e.g. dates every n days.
    std::vector<std::pair<double, std::string>> x_ticks;
    std::optional<double> y_min, y_max;
};

std::string render_svg(const SvgChart& chart);

}  // namespace illiqnet
