#pragma once

#include "legsheaf/front.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace legsheaf {

namespace detail {

inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    // Avoid the signed zero so output is stable across math librarie s.
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

} // namespace detail

// Deterministic SVG of a front: one polyline per strand (heights sampled at
// `samples` points), crossing markers, and downward co-orientation ticks.
// Requires the sheet classes (fronts freshly built from a formal type).
inline std::string emit_svg(const front_diagram& d, const rational& eps, std::size_t samples) {
    if (samples < 16) fail(errc::invalid_argument, "need at least 16 samples");
    if (d.sheet_classes.size() != d.strands)
        fail(errc::invalid_argument, "front carries no sheet classes; rebuild it from a formal type");

    const double two_pi = 2.0 * std::numbers::pi;
    const double width = 800.0, height = 420.0, margin = 40.0;

    std::vector<std::vector<double>> ys(d.strands, std::vector<double>(samples + 1));
    double ymin = 0.0, ymax = 0.0;
    for (std::size_t s = 0; s < d.strands; ++s)
        for (std::size_t k = 0; k <= samples; ++k) {
            double theta = two_pi * static_cast<double>(k) / static_cast<double>(samples);
            double v = d.sheet_classes[s].evaluate_re(eps, theta);
            ys[s][k] = v;
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (ymax - ymin < 1e-12) {
        ymax += 1.0;
        ymin -= 1.0;
    }
    auto sx = [&](double theta) { return margin + (width - 2 * margin) * theta / two_pi; };
    auto sy = [&](double v) { return height - margin - (height - 2 * margin) * (v - ymin) / (ymax - ymin); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           detail::fmt_coord(width) + "\" height=\"" + detail::fmt_coord(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<line x1=\"" + detail::fmt_coord(sx(0)) + "\" y1=\"" + detail::fmt_coord(height - margin) +
           "\" x2=\"" + detail::fmt_coord(sx(two_pi)) + "\" y2=\"" + detail::fmt_coord(height - margin) +
           "\" stroke=\"#999\" stroke-width=\"1\"/>\n";

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    for (std::size_t s = 0; s < d.strands; ++s) {
        out += "<polyline fill=\"none\" stroke=\"";
        out += palette[s % 8];
        out += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k <= samples; ++k) {
            double theta = two_pi * static_cast<double>(k) / static_cast<double>(samples);
            if (k) out += " ";
            out += detail::fmt_coord(sx(theta)) + "," + detail::fmt_coord(sy(ys[s][k]));
        }
        out += "\"/>\n";
        // Downward co-orientation ticks.
        for (std::size_t k = samples / 16; k < samples; k += samples / 8) {
            double theta = two_pi * static_cast<double>(k) / static_cast<double>(samples);
            double x = sx(theta), y = sy(ys[s][k]);
            out += "<line x1=\"" + detail::fmt_coord(x) + "\" y1=\"" + detail::fmt_coord(y) + "\" x2=\"" +
                   detail::fmt_coord(x) + "\" y2=\"" + detail::fmt_coord(y + 7.0) + "\" stroke=\"";
            out += palette[s % 8];
            out += "\" stroke-width=\"1\"/>\n";
        }
    }
    for (const auto& fc : d.crossings) {
        double theta = fc.angle.radians();
        double v = d.sheet_classes[fc.lower_west].evaluate_re(eps, theta);
        out += "<circle cx=\"" + detail::fmt_coord(sx(theta)) + "\" cy=\"" + detail::fmt_coord(sy(v)) +
               "\" r=\"3.5\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace legsheaf
