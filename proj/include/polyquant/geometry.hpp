#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyquant {

/// Position vector in the plane.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2, Point2) = default;
};

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Squared Euclidean distance (x1 - y1)^2 + (x2 - y2)^2.
constexpr double squared_distance(Point2 a, Point2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }

/// Counterclockwise rotation about the origin.
inline Point2 rotate(Point2 p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Largest supported number of sides; keeps sin(pi/m) well away from zero.
inline constexpr int max_sides = 1'000'000;

inline void require_sides(int m) {
    if (m < 3 || m > max_sides) {
        throw std::invalid_argument("number of sides must lie in [3, 1e6], got " + std::to_string(m));
    }
}

/// Regular m-gon inscribed in the unit circle with vertex 1 at (1, 0).
///
/// Vertices and sides use 1-based indices in the public interface; vertex m+1
/// is identified with vertex 1, so side j runs from vertex j to vertex j+1.
class RegularPolygon {
public:
    explicit RegularPolygon(int m) : m_(m) {
        require_sides(m);
        vertices_.reserve(static_cast<std::size_t>(m));
        for (int j = 1; j <= m; ++j) {
            const double angle = 2.0 * std::numbers::pi * (j - 1) / m;
            vertices_.push_back({std::cos(angle), std::sin(angle)});
        }
    }

    int sides() const { return m_; }
    double circumradius() const { return 1.0; }
    double side_length() const { return 2.0 * std::sin(std::numbers::pi / m_); }
    double perimeter() const { return m_ * side_length(); }

    const std::vector<Point2>& vertices() const { return vertices_; }

    /// Vertex j in 1..m+1 (m+1 wraps to vertex 1).
    Point2 vertex(int j) const {
        if (j < 1 || j > m_ + 1) {
            throw std::invalid_argument("vertex index out of range: " + std::to_string(j));
        }
        return vertices_[static_cast<std::size_t>((j - 1) % m_)];
    }

    /// M_j(t) = t * a_{j+1} + (1 - t) * a_j.
    Point2 side_point(int j, double t) const {
        if (j < 1 || j > m_) {
            throw std::invalid_argument("side index out of range: " + std::to_string(j));
        }
        if (!(t >= 0.0 && t <= 1.0)) {
            throw std::invalid_argument("side parameter must lie in [0, 1]");
        }
        return side_point_unchecked(j, t);
    }

    Point2 side_point_unchecked(int j, double t) const {
        const Point2 a = vertices_[static_cast<std::size_t>(j - 1)];
        const Point2 b = vertices_[static_cast<std::size_t>(j % m_)];
        return t * b + (1.0 - t) * a;
    }

private:
    int m_;
    std::vector<Point2> vertices_;
};

inline RegularPolygon polygon_new(int m) { return RegularPolygon(m); }

inline Point2 side_point(const RegularPolygon& p, int j, double t) { return p.side_point(j, t); }

/// Uniform probability on the polygon boundary by arc length.
///
/// In terms of the side parameter t, each side carries dP = (1/m) dt.
class BoundaryMeasure {
public:
    explicit BoundaryMeasure(RegularPolygon polygon) : polygon_(std::move(polygon)) {}

    const RegularPolygon& polygon() const { return polygon_; }
    double density() const { return 1.0 / (polygon_.sides() * polygon_.side_length()); }
    double parameter_weight() const { return 1.0 / polygon_.sides(); }
    double total_mass() const { return density() * polygon_.sides() * polygon_.side_length(); }

private:
    RegularPolygon polygon_;
};

}  // namespace polyquant
