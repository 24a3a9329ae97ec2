#pragma once

// Standalone SVG line plot of loss curves: one polyline per series, a circle
// marker and a standard-error whisker per point, axis labels and a legend
// naming each series by its horizon N.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bucb/csv.hpp"
#include "bucb/errors.hpp"

namespace bucb {

struct PlotSeries {
    std::string label;
    std::vector<CurveRow> rows;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
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

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

inline std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

/// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
inline double nice_step(double range, int target) {
    const double raw = range / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
    return step * mag;
}

inline constexpr std::string_view kPalette[] = {"#1f4fd8", "#d62728", "#2ca02c", "#ff7f0e",
                                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace detail

inline std::string render_svg_plot(std::span<const PlotSeries> series) {
    constexpr double width = 800, height = 520;
    constexpr double left = 80, right = 180, top = 30, bottom = 70;
    const double pw = width - left - right, ph = height - top - bottom;

    double xmin = INFINITY, xmax = -INFINITY, ymax = 0.0;
    for (const auto& s : series) {
        for (const auto& r : s.rows) {
            xmin = std::min(xmin, r.d);
            xmax = std::max(xmax, r.d);
            ymax = std::max(ymax, r.l_hat + r.std_error);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (xmax - xmin <= 0.0) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    const double ystep = detail::nice_step(ymax > 0.0 ? ymax * 1.1 : 1.0, 5);
    ymax = ymax > 0.0 ? std::ceil(ymax * 1.1 / ystep) * ystep : 1.0;
    const double ymin = 0.0;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"13\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes and ticks
    os << "<g stroke=\"black\" stroke-width=\"1\">\n"
       << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
       << "\"/>\n"
       << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n"
       << "</g>\n";
    const double xstep = detail::nice_step(xmax - xmin, 8);
    os << "<g fill=\"black\">\n";
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9 * xstep; x += xstep) {
        const double X = px(x);
        os << "<line x1=\"" << detail::num(X) << "\" y1=\"" << top + ph << "\" x2=\"" << detail::num(X)
           << "\" y2=\"" << top + ph + 5 << "\" stroke=\"black\"/>"
           << "<text x=\"" << detail::num(X) << "\" y=\"" << top + ph + 20 << "\" text-anchor=\"middle\">"
           << detail::tick_label(std::fabs(x) < 1e-12 ? 0.0 : x) << "</text>\n";
    }
    for (double y = ymin; y <= ymax + 1e-9 * ystep; y += ystep) {
        const double Y = py(y);
        os << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::num(Y) << "\" x2=\"" << left << "\" y2=\""
           << detail::num(Y) << "\" stroke=\"black\"/>"
           << "<line x1=\"" << left << "\" y1=\"" << detail::num(Y) << "\" x2=\"" << left + pw << "\" y2=\""
           << detail::num(Y) << "\" stroke=\"#dddddd\"/>"
           << "<text x=\"" << left - 9 << "\" y=\"" << detail::num(Y + 4) << "\" text-anchor=\"end\">"
           << detail::tick_label(y) << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">d</text>\n"
       << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
       << top + ph / 2 << ")\">scaled loss l(d)</text>\n"
       << "</g>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const std::string_view color = detail::kPalette[i % std::size(detail::kPalette)];
        os << "<g class=\"series\" stroke=\"" << color << "\" fill=\"" << color << "\">\n";
        os << "<polyline fill=\"none\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < s.rows.size(); ++j) {
            os << (j ? " " : "") << detail::num(px(s.rows[j].d)) << ',' << detail::num(py(s.rows[j].l_hat));
        }
        os << "\"/>\n";
        for (const auto& r : s.rows) {
            const double X = px(r.d);
            os << "<line class=\"whisker\" x1=\"" << detail::num(X) << "\" y1=\""
               << detail::num(py(std::max(ymin, r.l_hat - r.std_error))) << "\" x2=\"" << detail::num(X)
               << "\" y2=\"" << detail::num(py(r.l_hat + r.std_error)) << "\"/>"
               << "<circle cx=\"" << detail::num(X) << "\" cy=\"" << detail::num(py(r.l_hat)) << "\" r=\"2.5\"/>\n";
        }
        os << "</g>\n";
    }

    os << "<g class=\"legend\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const std::string_view color = detail::kPalette[i % std::size(detail::kPalette)];
        const double y = top + 15 + 22.0 * static_cast<double>(i);
        os << "<line x1=\"" << left + pw + 20 << "\" y1=\"" << y << "\" x2=\"" << left + pw + 50 << "\" y2=\"" << y
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>"
           << "<text x=\"" << left + pw + 58 << "\" y=\"" << y + 4 << "\">" << detail::xml_escape(series[i].label)
           << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

/// Legend label of a CSV series: its horizon N.
inline std::string series_label(const std::vector<CurveRow>& rows) {
    if (rows.empty()) return "N=?";
    return "N=" + std::to_string(rows.front().N);
}

/// Reads each CSV (one series per file) and writes the plot to `out_path`.
inline void emit_plot(std::span<const std::filesystem::path> curve_csvs, const std::filesystem::path& out_path) {
    std::vector<PlotSeries> series;
    for (const auto& path : curve_csvs) {
        std::vector<CurveRow> rows;
        try {
            rows = read_curve_csv(path);
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" (line")),
                             e.line());
        }
        series.push_back({series_label(rows), std::move(rows)});
    }
    write_text_file(out_path, render_svg_plot(series));
}

}  // namespace bucb
