#pragma once

#include <cmath>
#include <stdexcept>

#include "polyquant/geometry.hpp"
#include "polyquant/quantizer.hpp"

namespace polyquant {

/// Segment AB with the uniform density 1/|AB|, restricted to the trimmed
/// piece D1D2 where |AD1| = r1 and |BD2| = r2. The restricted measure is
/// not renormalized.
class SegmentSpec {
public:
    SegmentSpec(Point2 a, Point2 b, double r1, double r2)
        : a_(a), b_(b), length_(std::sqrt(squared_distance(a, b))), r1_(r1), r2_(r2) {
        if (!is_finite(a) || !is_finite(b)) throw std::invalid_argument("segment endpoints must be finite");
        if (!(length_ > 0.0)) throw std::invalid_argument("segment must have positive length");
        if (!(r1 >= 0.0 && r2 >= 0.0)) throw std::invalid_argument("trim distances must be non-negative");
        if (!(r1 + r2 < length_)) throw std::invalid_argument("trimmed sub-segment is empty");
    }

    Point2 a() const { return a_; }
    Point2 b() const { return b_; }
    double length() const { return length_; }
    double r1() const { return r1_; }
    double r2() const { return r2_; }

    /// M(t) with M(0) = a, M(1) = b.
    Point2 at(double t) const { return t * b_ + (1.0 - t) * a_; }

    double t_begin() const { return r1_ / length_; }
    double t_end() const { return 1.0 - r2_ / length_; }
    double trimmed_length() const { return length_ - r1_ - r2_; }

private:
    Point2 a_;
    Point2 b_;
    double length_;
    double r1_;
    double r2_;
};

inline void require_count(int n) {
    if (n < 1) throw std::invalid_argument("number of points must be at least 1");
}

/// Parameter of the j-th (1-based) optimal point on D1D2.
inline double segment_optimal_parameter(const SegmentSpec& seg, int n, int j) {
    const double width = 1.0 - seg.r2() / seg.length() - seg.r1() / seg.length();
    return seg.r1() / seg.length() + (2.0 * j - 1.0) / (2.0 * n) * width;
}

inline QuantizerSet segment_optimal_points(const SegmentSpec& seg, int n) {
    require_count(n);
    QuantizerSet q;
    q.points.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) q.points.push_back(seg.at(segment_optimal_parameter(seg, n, j)));
    q.meta.n = n;
    q.meta.method = Method::closed_form;
    return q;
}

/// Evaluates n * integral of rho(M(t), M(t_c)) dt over the first cell;
/// with rho = l^2 (t - t_c)^2 this is (l - r1 - r2)^3 / (12 n^2 l).
inline double segment_quant_error(const SegmentSpec& seg, int n) {
    require_count(n);
    const double w = seg.trimmed_length();
    return w * w * w / (12.0 * n * n * seg.length());
}

}  // namespace polyquant
