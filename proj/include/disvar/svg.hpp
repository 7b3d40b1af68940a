#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "disvar/csv.hpp"
#include "disvar/errors.hpp"

namespace disvar {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

/// One plotted series: values indexed 0..T-1 on the x axis, with an optional
/// shaded band between `lower` and `upper` (same length as `values` or empty).
struct SvgSeries {
    std::string label;
    std::vector<double> values;
    std::vector<double> lower;
    std::vector<double> upper;
    std::string color = "#1f6f8b";
};

namespace svgdetail {

struct Frame {
    double width = 800.0, height = 480.0;
    double left = 64.0, right = 24.0, top = 56.0, bottom = 44.0;

    [[nodiscard]] double plot_w() const { return width - left - right; }
    [[nodiscard]] double plot_h() const { return height - top - bottom; }
};

inline std::string num(double v) {
    // two decimals are plenty for pixel coordinates
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline void open_svg(std::string& out, const Frame& f, const std::string& title,
                     const std::string& subtitle) {
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(f.width) + "\" height=\"" +
           num(f.height) + "\" viewBox=\"0 0 " + num(f.width) + " " + num(f.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"" + num(f.width / 2) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" "
           "fill=\"#222222\">" +
           xml_escape(title) + "</text>\n";
    if (!subtitle.empty()) {
        out += "<text x=\"" + num(f.width / 2) +
               "\" y=\"40\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#666666\">" +
               xml_escape(subtitle) + "</text>\n";
    }
}

inline void axes(std::string& out, const Frame& f, double ymin, double ymax,
                 const std::string& x_left_label, const std::string& x_right_label) {
    const double x0 = f.left, x1 = f.width - f.right;
    const double y0 = f.top, y1 = f.height - f.bottom;
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x1) + "\" y2=\"" +
           num(y1) + "\" stroke=\"#333333\"/>\n";
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" +
           num(y1) + "\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(y0 + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">" +
           xml_escape(format_double(ymax)) + "</text>\n";
    out += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(y1 + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">" +
           xml_escape(format_double(ymin)) + "</text>\n";
    out += "<text x=\"" + num(x0) + "\" y=\"" + num(y1 + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#333333\">" +
           xml_escape(x_left_label) + "</text>\n";
    out += "<text x=\"" + num(x1) + "\" y=\"" + num(y1 + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#333333\">" +
           xml_escape(x_right_label) + "</text>\n";
}

inline void zero_line(std::string& out, const Frame& f, double ymin, double ymax) {
    if (ymin < 0.0 && ymax > 0.0) {
        const double y = f.top + (ymax - 0.0) / (ymax - ymin) * f.plot_h();
        out += "<line x1=\"" + num(f.left) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(f.width - f.right) + "\" y2=\"" + num(y) +
               "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    }
}

} // namespace svgdetail

/// Horizon-indexed line chart with optional shaded bands; used for IRF plots.
inline std::string line_chart(const std::string& title, const std::string& subtitle,
                              const std::vector<SvgSeries>& series,
                              const std::string& x_left_label,
                              const std::string& x_right_label) {
    if (series.empty()) throw ValidationError("line chart needs at least one series");
    std::size_t T = series.front().values.size();
    if (T < 2) throw ValidationError("line chart needs at least two points");
    double ymin = 0.0, ymax = 0.0;
    for (const auto& s : series) {
        if (s.values.size() != T) throw ValidationError("line chart series length mismatch");
        if (!s.lower.empty() && (s.lower.size() != T || s.upper.size() != T)) {
            throw ValidationError("line chart band length mismatch");
        }
        for (std::size_t t = 0; t < T; ++t) {
            ymin = std::min(ymin, s.values[t]);
            ymax = std::max(ymax, s.values[t]);
            if (!s.lower.empty()) {
                ymin = std::min(ymin, s.lower[t]);
                ymax = std::max(ymax, s.upper[t]);
            }
        }
    }
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    svgdetail::Frame f;
    const auto px = [&](std::size_t t) {
        return f.left + static_cast<double>(t) / static_cast<double>(T - 1) * f.plot_w();
    };
    const auto py = [&](double v) { return f.top + (ymax - v) / (ymax - ymin) * f.plot_h(); };

    std::string out;
    svgdetail::open_svg(out, f, title, subtitle);
    svgdetail::axes(out, f, ymin, ymax, x_left_label, x_right_label);
    svgdetail::zero_line(out, f, ymin, ymax);

    for (const auto& s : series) {
        if (!s.lower.empty()) {
            std::string pts;
            for (std::size_t t = 0; t < T; ++t) {
                pts += svgdetail::num(px(t)) + "," + svgdetail::num(py(s.upper[t])) + " ";
            }
            for (std::size_t t = T; t-- > 0;) {
                pts += svgdetail::num(px(t)) + "," + svgdetail::num(py(s.lower[t])) + " ";
            }
            out += "<polygon points=\"" + pts + "\" fill=\"" + s.color +
                   "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
        }
    }
    double legend_y = svgdetail::Frame{}.top + 8.0;
    for (const auto& s : series) {
        std::string pts;
        for (std::size_t t = 0; t < T; ++t) {
            pts += svgdetail::num(px(t)) + "," + svgdetail::num(py(s.values[t])) + " ";
        }
        out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"2\"/>\n";
        out += "<rect x=\"" + svgdetail::num(f.left + 10) + "\" y=\"" +
               svgdetail::num(legend_y - 8) + "\" width=\"14\" height=\"4\" fill=\"" + s.color +
               "\"/>\n";
        out += "<text x=\"" + svgdetail::num(f.left + 30) + "\" y=\"" + svgdetail::num(legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">" +
               xml_escape(s.label) + "</text>\n";
        legend_y += 16.0;
    }
    out += "</svg>\n";
    return out;
}

/// Centered bar chart over integer lags -K..K; used for cross-correlograms.
inline std::string bar_chart(const std::string& title, const std::string& subtitle,
                             const std::vector<double>& heights, int min_lag) {
    if (heights.empty()) throw ValidationError("bar chart needs at least one bar");
    double ymin = std::min(0.0, *std::min_element(heights.begin(), heights.end()));
    double ymax = std::max(0.0, *std::max_element(heights.begin(), heights.end()));
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    svgdetail::Frame f;
    const std::size_t B = heights.size();
    const double slot = f.plot_w() / static_cast<double>(B);
    const double bar_w = 0.6 * slot;
    const auto py = [&](double v) { return f.top + (ymax - v) / (ymax - ymin) * f.plot_h(); };

    std::string out;
    svgdetail::open_svg(out, f, title, subtitle);
    svgdetail::axes(out, f, ymin, ymax, std::to_string(min_lag),
                    std::to_string(min_lag + static_cast<int>(B) - 1));
    svgdetail::zero_line(out, f, ymin, ymax);

    const double y_zero = py(std::clamp(0.0, ymin, ymax));
    for (std::size_t b = 0; b < B; ++b) {
        const double cx = f.left + (static_cast<double>(b) + 0.5) * slot;
        const double yv = py(heights[b]);
        const double top = std::min(yv, y_zero);
        const double h = std::abs(yv - y_zero);
        out += "<rect x=\"" + svgdetail::num(cx - bar_w / 2) + "\" y=\"" + svgdetail::num(top) +
               "\" width=\"" + svgdetail::num(bar_w) + "\" height=\"" + svgdetail::num(h) +
               "\" fill=\"#1f6f8b\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace disvar
