#include "illiqnet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "illiqnet/csv.hpp"

namespace illiqnet {

namespace {

std::string num(double v) { return format_double(v, 2); }

struct Frame {
    double x0, y0, x1, y1;          // pixel frame
    double xmin, xmax, ymin, ymax;  // data range

    double px(double x) const {
        double t = xmax > xmin ? (x - xmin) / (xmax - xmin) : 0.5;
        return x0 + t * (x1 - x0);
    }
    double py(double y) const {
        double t = ymax > ymin ? (y - ymin) / (ymax - ymin) : 0.5;
        return y1 - t * (y1 - y0);
    }
};

std::vector<double> nice_ticks(double lo, double hi, int target) {
    std::vector<double> out;
    if (!(hi > lo)) return {lo};
    double raw = (hi - lo) / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step) out.push_back(v);
    return out;
}

}  // namespace

std::string render_svg(const SvgChart& chart) {
    const double ml = 62, mr = 16, mt = 34, mb = 46;
    Frame f;
    f.x0 = ml;
    f.y0 = mt;
    f.x1 = chart.width - mr;
    f.y1 = chart.height - mb;

    f.xmin = 1e300;
    f.xmax = -1e300;
    f.ymin = 1e300;
    f.ymax = -1e300;
    for (const auto& s : chart.series) {
        for (auto [x, y] : s.points) {
            f.xmin = std::min(f.xmin, x);
            f.xmax = std::max(f.xmax, x);
            f.ymin = std::min(f.ymin, y);
            f.ymax = std::max(f.ymax, y);
        }
    }
    if (f.xmin > f.xmax) {
        f.xmin = 0;
        f.xmax = 1;
        f.ymin = 0;
        f.ymax = 1;
    }
    if (chart.y_min) f.ymin = *chart.y_min;
    if (chart.y_max) f.ymax = *chart.y_max;
    if (f.ymax <= f.ymin) f.ymax = f.ymin + 1;
    double pad = (f.ymax - f.ymin) * 0.06;
    if (!chart.y_min) f.ymin -= pad;
    if (!chart.y_max) f.ymax += pad;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\""
        << chart.height << "\" viewBox=\"0 0 " << chart.width << " " << chart.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num((f.x0 + f.x1) / 2) << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << chart.title << "</text>\n";

    for (const auto& band : chart.bands) {
        double a = std::max(f.px(band.x0), f.x0), b = std::min(f.px(band.x1), f.x1);
        if (b <= a) continue;
        out << "<rect x=\"" << num(a) << "\" y=\"" << num(f.y0) << "\" width=\"" << num(b - a)
            << "\" height=\"" << num(f.y1 - f.y0) << "\" fill=\"" << band.color
            << "\" opacity=\"0.45\"/>\n";
    }

    // axes + y grid
    out << "<line x1=\"" << num(f.x0) << "\" y1=\"" << num(f.y1) << "\" x2=\"" << num(f.x1)
        << "\" y2=\"" << num(f.y1) << "\" stroke=\"#404040\"/>\n";
    out << "<line x1=\"" << num(f.x0) << "\" y1=\"" << num(f.y0) << "\" x2=\"" << num(f.x0)
        << "\" y2=\"" << num(f.y1) << "\" stroke=\"#404040\"/>\n";
    for (double v : nice_ticks(f.ymin, f.ymax, 6)) {
        double y = f.py(v);
        out << "<line x1=\"" << num(f.x0) << "\" y1=\"" << num(y) << "\" x2=\"" << num(f.x1)
            << "\" y2=\"" << num(y) << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << num(f.x0 - 6) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_full(std::round(v * 1e6) / 1e6) << "</text>\n";
    }
    for (const auto& [x, label] : chart.x_ticks) {
        double px = f.px(x);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(f.y1) << "\" x2=\"" << num(px)
            << "\" y2=\"" << num(f.y1 + 4) << "\" stroke=\"#404040\"/>\n";
        out << "<text x=\"" << num(px) << "\" y=\"" << num(f.y1 + 17)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << label
            << "</text>\n";
    }
    out << "<text x=\"" << num((f.x0 + f.x1) / 2) << "\" y=\"" << num(double(chart.height) - 8)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << chart.x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << num((f.y0 + f.y1) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << num((f.y0 + f.y1) / 2) << ")\">" << chart.y_label
        << "</text>\n";

    double legend_x = f.x0 + 10, legend_y = f.y0 + 14;
    for (const auto& s : chart.series) {
        if (s.line) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            for (auto [x, y] : s.points) out << num(f.px(x)) << ',' << num(f.py(y)) << ' ';
            out << "\"/>\n";
        } else {
            for (auto [x, y] : s.points)
                out << "<circle cx=\"" << num(f.px(x)) << "\" cy=\"" << num(f.py(y)) << "\" r=\""
                    << num(s.marker) << "\" fill=\"" << s.color << "\" fill-opacity=\"0.8\"/>\n";
        }
        if (!s.label.empty()) {
            out << "<rect x=\"" << num(legend_x) << "\" y=\"" << num(legend_y - 9)
                << "\" width=\"10\" height=\"10\" fill=\"" << s.color << "\"/>\n";
            out << "<text x=\"" << num(legend_x + 14) << "\" y=\"" << num(legend_y)
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
            legend_y += 16;
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace illiqnet
