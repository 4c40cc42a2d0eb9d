#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyquant/geometry.hpp"
#include "polyquant/quantizer.hpp"

// Optimal sets of n = m k means for the uniform distribution on the boundary
// of the regular m-gon: m corner points, one inside each angle, plus k - 1
// points on each side. The corner point's Voronoi boundary cuts both adjacent
// sides at distance r from the vertex.

namespace polyquant {

namespace detail {

inline double half_side(int m) { return std::sin(std::numbers::pi / m); }

inline void require_multiplier(int k, int min_k = 1) {
    if (k < min_k) {
        throw std::invalid_argument("k must be at least " + std::to_string(min_k) + ", got " + std::to_string(k));
    }
}

// r in [lo, l/2]; a few ulps of slack above l/2 so that the k = 1 radius,
// which equals sin(pi/m) up to rounding, is accepted.
inline void require_radius(int m, double r, bool allow_zero) {
    const double hi = half_side(m);
    const bool lo_ok = allow_zero ? r >= 0.0 : r > 0.0;
    if (!(lo_ok && r <= hi * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()))) {
        throw std::invalid_argument("vertex radius " + std::to_string(r) + " outside the admissible range for m = " +
                                    std::to_string(m));
    }
}

}  // namespace detail

/// Trim distance r* that zeroes dV/dr:
/// r* = 4 sin(pi/m) / (2 (k - 1) sqrt(3 cos^2(pi/m) + 1) + 4).
inline double vertex_radius(int m, int k) {
    require_sides(m);
    detail::require_multiplier(k);
    const double s = std::sin(std::numbers::pi / m);
    const double c = std::cos(std::numbers::pi / m);
    return 4.0 * s / (2.0 * (k - 1) * std::sqrt(3.0 * c * c + 1.0) + 4.0);
}

/// Conditional means of the two length-r pieces adjacent to each vertex.
inline std::vector<Point2> corner_points(const RegularPolygon& p, double r) {
    const int m = p.sides();
    detail::require_radius(m, r, false);
    const double csc = 1.0 / std::sin(std::numbers::pi / m);
    const double c2 = std::cos(2.0 * std::numbers::pi / m);

    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(m));
    out.push_back({1.0 - 0.5 * r * std::sin(std::numbers::pi / m), 0.0});
    for (int j = 2; j <= m; ++j) {
        const double angle = 2.0 * std::numbers::pi * (j - 1) / m;
        out.push_back({0.25 * std::cos(angle) * (r * (c2 - 1.0) * csc + 4.0),
                       std::sin(angle) * (0.25 * r * (c2 - 1.0) * csc + 1.0)});
    }
    return out;
}

/// k - 1 equally spaced means on each side's trimmed piece [r/l, 1 - r/l].
inline std::vector<std::vector<Point2>> side_points(const RegularPolygon& p, int k, double r) {
    const int m = p.sides();
    detail::require_multiplier(k);
    detail::require_radius(m, r, false);
    std::vector<std::vector<Point2>> out(static_cast<std::size_t>(m));
    if (k == 1) return out;

    const double ell = p.side_length();
    const double t0 = r / ell;
    const double width = 1.0 - 2.0 * r / ell;
    for (int j = 1; j <= m; ++j) {
        auto& side = out[static_cast<std::size_t>(j - 1)];
        side.reserve(static_cast<std::size_t>(k - 1));
        for (int i = 1; i <= k - 1; ++i) {
            const double t = t0 + (2.0 * i - 1.0) / (2.0 * (k - 1)) * width;
            side.push_back(p.side_point_unchecked(j, t));
        }
    }
    return out;
}

inline QuantizerSet optimal_mk_set(int m, int k) {
    const RegularPolygon p(m);
    detail::require_multiplier(k);
    const double r = vertex_radius(m, k);

    QuantizerSet q;
    q.points = corner_points(p, r);
    for (auto& side : side_points(p, k, r)) {
        q.points.insert(q.points.end(), side.begin(), side.end());
    }
    q.meta = {m, m * k, k, r, Method::closed_form};
    return q;
}

/// Distortion carried by all m corner cells at trim r:
/// (1/24) r^3 (3 cos(2 pi/m) + 5) csc(pi/m).
inline double corner_error(int m, double r) {
    require_sides(m);
    detail::require_radius(m, r, true);
    const double csc = 1.0 / std::sin(std::numbers::pi / m);
    return r * r * r * (3.0 * std::cos(2.0 * std::numbers::pi / m) + 5.0) * csc / 24.0;
}

/// Distortion carried by the m (k-1)-point side sets at trim r:
/// csc(pi/m) (sin(pi/m) - r)^3 / (3 (k - 1)^2).
inline double side_error(int m, int k, double r) {
    require_sides(m);
    detail::require_multiplier(k, 2);
    detail::require_radius(m, r, true);
    const double s = std::sin(std::numbers::pi / m);
    const double gap = s - r;
    const double km1 = k - 1.0;
    return gap * gap * gap / (3.0 * km1 * km1 * s);
}

/// Distortion of the symmetric configuration as a function of the trim r.
inline double total_error_of_r(int m, int k, double r) {
    require_sides(m);
    detail::require_multiplier(k, 2);
    detail::require_radius(m, r, true);
    const double s = std::sin(std::numbers::pi / m);
    const double gap = s - r;
    const double km1 = k - 1.0;
    return (r * r * r * (3.0 * std::cos(2.0 * std::numbers::pi / m) + 5.0) + 8.0 / (km1 * km1) * gap * gap * gap) /
           (24.0 * s);
}

/// V_{mk} = 2 sin^2(pi/m) (3 cos(2pi/m) + 5) / (3 ((k - 1) sqrt(6 cos(2pi/m) + 10) + 4)^2).
inline double optimal_error_value(int m, int k) {
    require_sides(m);
    detail::require_multiplier(k);
    const double s = std::sin(std::numbers::pi / m);
    const double c2 = std::cos(2.0 * std::numbers::pi / m);
    const double root = std::sqrt(6.0 * c2 + 10.0);
    const double denom = k * root - root + 4.0;
    return 2.0 * s * s * (3.0 * c2 + 5.0) / (3.0 * denom * denom);
}

inline DistortionReport optimal_error(int m, int k) {
    DistortionReport rep;
    rep.total = optimal_error_value(m, k);
    const double r = vertex_radius(m, k);
    rep.corner_part = corner_error(m, r);
    rep.side_part = k >= 2 ? side_error(m, k, r) : 0.0;
    rep.method = Method::closed_form;
    rep.params = {m, m * k, k, r};
    return rep;
}

}  // namespace polyquant
