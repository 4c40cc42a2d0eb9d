#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "polyquant/geometry.hpp"

namespace polyquant {

enum class Method { closed_form, lloyd, manual, quadrature };

inline constexpr std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::lloyd: return "lloyd";
        case Method::manual: return "manual";
        case Method::quadrature: return "quadrature";
    }
    return "unknown";
}

struct QuantizerMeta {
    int m = 0;  // 0 when the set does not live on a polygon boundary
    int n = 0;
    std::optional<int> k;
    std::optional<double> r;
    Method method = Method::manual;
};

/// Ordered finite point set. Closed-form sets list corners a_1..a_m first,
/// then the side points of side 1, side 2, ... in increasing parameter order.
struct QuantizerSet {
    std::vector<Point2> points;
    QuantizerMeta meta;

    std::size_t size() const { return points.size(); }
};

inline QuantizerSet manual_set(std::vector<Point2> points, int m = 0) {
    QuantizerSet q;
    q.meta.m = m;
    q.meta.n = static_cast<int>(points.size());
    q.meta.method = Method::manual;
    q.points = std::move(points);
    return q;
}

/// Exact duplicate detection; quadratic, fine for the set sizes used here.
inline bool has_duplicates(const std::vector<Point2>& points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i] == points[j]) return true;
        }
    }
    return false;
}

struct DistortionParams {
    int m = 0;
    int n = 0;
    std::optional<int> k;
    std::optional<double> r;
};

struct DistortionReport {
    double total = 0.0;
    std::optional<double> corner_part;
    std::optional<double> side_part;
    std::vector<double> per_cell;  // filled by quadrature, indexed like the set
    Method method = Method::closed_form;
    DistortionParams params;
};

}  // namespace polyquant
