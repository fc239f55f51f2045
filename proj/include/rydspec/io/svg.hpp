#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rydspec/errors.hpp"
#include "rydspec/io/format.hpp"

namespace rydspec::io {

namespace detail {

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    for (char& ch : buf) {
        if (ch == '\0')
            break;
        if (ch == ',')
            ch = '.';
    }
    return buf;
}

} // namespace detail

// Minimal static line plot; no timestamps or random ids, so identical data
// yields identical bytes.  Multiple series are drawn in distinct strokes.
inline void write_line_plot(std::ostream& os, std::span<const double> x,
                            const std::vector<std::span<const double>>& series,
                            const std::string& x_label, const std::string& y_label,
                            const std::string& title = "") {
    if (x.empty() || series.empty())
        throw DomainError("write_line_plot: nothing to plot");
    for (const auto& s : series)
        if (s.size() != x.size())
            throw DomainError("write_line_plot: series length mismatch");

    const double w = 800, h = 500, ml = 70, mr = 20, mt = title.empty() ? 20 : 40, mb = 55;
    double xmin = x[0], xmax = x[0];
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    double ymin = series[0][0], ymax = series[0][0];
    for (const auto& s : series)
        for (double v : s) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (xmax == xmin)
        xmax = xmin + 1.0;
    if (ymax == ymin)
        ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (w - ml - mr); };
    const auto py = [&](double v) { return h - mb - (v - ymin) / (ymax - ymin) * (h - mt - mb); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h
       << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";

    // Axes box and ticks.
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (w - ml - mr)
       << "\" height=\"" << (h - mt - mb) << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int nticks = 5;
    for (int t = 0; t < nticks; ++t) {
        const double fx = xmin + (xmax - xmin) * t / (nticks - 1);
        const double fy = ymin + (ymax - ymin) * t / (nticks - 1);
        os << "<line x1=\"" << px(fx) << "\" y1=\"" << (h - mb) << "\" x2=\"" << px(fx)
           << "\" y2=\"" << (h - mb + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px(fx) << "\" y=\"" << (h - mb + 20)
           << "\" text-anchor=\"middle\">" << detail::tick_label(fx) << "</text>\n";
        os << "<line x1=\"" << (ml - 5) << "\" y1=\"" << py(fy) << "\" x2=\"" << ml << "\" y2=\""
           << py(fy) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << (ml - 8) << "\" y=\"" << (py(fy) + 4)
           << "\" text-anchor=\"end\">" << detail::tick_label(fy) << "</text>\n";
    }

    static const char* strokes[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << strokes[s % 8]
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i)
                os << ' ';
            os << fmt_double(px(x[i])) << ',' << fmt_double(py(series[s][i]));
        }
        os << "\"/>\n";
    }

    os << "<text x=\"" << (ml + (w - ml - mr) / 2) << "\" y=\"" << (h - 12)
       << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
    os << "<text x=\"18\" y=\"" << (mt + (h - mt - mb) / 2)
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (mt + (h - mt - mb) / 2)
       << ")\">" << y_label << "</text>\n";
    if (!title.empty())
        os << "<text x=\"" << (w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
           << title << "</text>\n";
    os << "</svg>\n";
}

inline void write_line_plot(std::ostream& os, std::span<const double> x,
                            std::span<const double> y, const std::string& x_label,
                            const std::string& y_label, const std::string& title = "") {
    write_line_plot(os, x, std::vector<std::span<const double>>{y}, x_label, y_label, title);
}

} // namespace rydspec::io
