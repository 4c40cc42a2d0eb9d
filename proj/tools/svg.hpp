#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "polyquant/oracle.hpp"

namespace polyquant::io {

namespace detail {

inline std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace detail

/// Static picture of the unit circle, the polygon, the quantizer points and
/// the Voronoi breakpoints on the boundary. [-1.1, 1.1]^2 maps onto the
/// size x size pixel square with y pointing up.
inline std::string render_svg(const RegularPolygon& p, const QuantizerSet& q, const std::vector<BoundaryCell>& cells,
                              int size) {
    using detail::fixed;
    const double scale = size / 2.2;
    const auto px = [&](double x) { return fixed((x + 1.1) * scale); };
    const auto py = [&](double y) { return fixed((1.1 - y) * scale); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(size) + "\" height=\"" +
         std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) + ' ' + std::to_string(size) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<circle cx=\"" + px(0) + "\" cy=\"" + py(0) + "\" r=\"" + fixed(scale) +
         "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";

    s += "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (const auto& v : p.vertices()) s += px(v.x) + ',' + py(v.y) + ' ';
    s.back() = '"';
    s += "/>\n";

    // Ticks at interior breakpoints along the inward normal; every interior
    // breakpoint starts exactly one arc.
    const double tick = 0.04;
    for (const auto& cell : cells) {
        for (const auto& arc : cell.arcs) {
            if (arc.t_lo <= 0.0) continue;
            const Point2 d = p.vertex(arc.side + 1) - p.vertex(arc.side);
            const double len = norm(d);
            const Point2 inward{-d.y / len, d.x / len};
            const Point2 at = p.side_point_unchecked(arc.side, arc.t_lo);
            const Point2 lo = at - tick * inward;
            const Point2 hi = at + tick * inward;
            s += "<line x1=\"" + px(lo.x) + "\" y1=\"" + py(lo.y) + "\" x2=\"" + px(hi.x) + "\" y2=\"" + py(hi.y) +
                 "\" stroke=\"#1f77b4\" stroke-width=\"1\"/>\n";
        }
    }

    for (const auto& pt : q.points) {
        s += "<circle cx=\"" + px(pt.x) + "\" cy=\"" + py(pt.y) + "\" r=\"" + fixed(std::max(1.5, size / 250.0)) +
             "\" fill=\"#d62728\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace polyquant::io
