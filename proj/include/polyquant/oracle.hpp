#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyquant/geometry.hpp"
#include "polyquant/polygon_quant.hpp"
#include "polyquant/quadrature.hpp"
#include "polyquant/quantizer.hpp"

// Numerical machinery that checks the closed forms without relying on them:
// Voronoi cells restricted to the polygon boundary, quadrature distortion,
// Lloyd iteration and a golden-section search over the vertex radius.

namespace polyquant {

/// Parameter interval [t_lo, t_hi] on side `side` (1-based).
struct Arc {
    int side = 1;
    double t_lo = 0.0;
    double t_hi = 0.0;
};

struct BoundaryCell {
    std::size_t owner_index = 0;
    std::vector<Arc> arcs;

    /// Total parameter length; multiply by the side length for arc length.
    double parameter_length() const {
        double sum = 0.0;
        for (const auto& a : arcs) sum += a.t_hi - a.t_lo;
        return sum;
    }
    bool empty() const { return arcs.empty(); }
};

struct CellOptions {
    int scan_points = 4096;          // uniform owner probes per side
    double breakpoint_tol = 1e-12;   // bisection stops at this bracket width
};

inline constexpr int default_quadrature_nodes = 8;

namespace detail {

inline std::size_t nearest_index(const std::vector<Point2>& pts, Point2 x) {
    std::size_t best = 0;
    double best_d = squared_distance(x, pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = squared_distance(x, pts[i]);
        if (d < best_d) {  // strict: ties go to the lower index
            best_d = d;
            best = i;
        }
    }
    return best;
}

inline void validate_points(const std::vector<Point2>& pts) {
    if (pts.empty()) throw std::invalid_argument("quantizer set is empty");
    for (const auto& p : pts) {
        if (!is_finite(p)) throw std::invalid_argument("quantizer set contains a non-finite point");
    }
    if (has_duplicates(pts)) throw std::invalid_argument("quantizer set contains duplicate points");
}

struct Breakpoint {
    double t;
    std::size_t owner;  // owner to the right of t
};

// Owner changes from `a` at lo to `b` at hi. A third owner found at a
// midpoint splits the bracket in two.
template <class OwnerFn>
void locate_breakpoints(const OwnerFn& owner, double lo, std::size_t a, double hi, std::size_t b, double tol,
                        std::vector<Breakpoint>& out) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const std::size_t o = owner(mid);
        if (o == a) {
            lo = mid;
        } else if (o == b) {
            hi = mid;
        } else {
            locate_breakpoints(owner, lo, a, mid, o, tol, out);
            locate_breakpoints(owner, mid, o, hi, b, tol, out);
            return;
        }
    }
    out.push_back({0.5 * (lo + hi), b});
}

}  // namespace detail

/// Nearest-point partition of the boundary, one cell per point of `q`
/// (cells of points that own nothing have no arcs).
inline std::vector<BoundaryCell> voronoi_cells_on_boundary(const RegularPolygon& p, const QuantizerSet& q,
                                                           const CellOptions& opt = {}) {
    detail::validate_points(q.points);
    if (opt.scan_points < 1) throw std::invalid_argument("scan_points must be positive");

    std::vector<BoundaryCell> cells(q.size());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i].owner_index = i;

    std::vector<detail::Breakpoint> breaks;
    for (int j = 1; j <= p.sides(); ++j) {
        const auto owner = [&](double t) { return detail::nearest_index(q.points, p.side_point_unchecked(j, t)); };

        breaks.clear();
        std::size_t prev_owner = owner(0.0);
        double prev_t = 0.0;
        for (int i = 1; i <= opt.scan_points; ++i) {
            const double t = static_cast<double>(i) / opt.scan_points;
            const std::size_t o = owner(t);
            if (o != prev_owner) detail::locate_breakpoints(owner, prev_t, prev_owner, t, o, opt.breakpoint_tol, breaks);
            prev_owner = o;
            prev_t = t;
        }

        double start = 0.0;
        std::size_t current = owner(0.0);
        for (const auto& bp : breaks) {
            if (bp.t > start) cells[current].arcs.push_back({j, start, bp.t});
            start = bp.t;
            current = bp.owner;
        }
        if (start < 1.0) cells[current].arcs.push_back({j, start, 1.0});
    }
    return cells;
}

/// V(P; q) by Gauss-Legendre quadrature over each arc of the boundary cells.
inline DistortionReport distortion_quadrature(const RegularPolygon& p, const QuantizerSet& q,
                                              const std::vector<BoundaryCell>& cells,
                                              int nodes_per_arc = default_quadrature_nodes) {
    if (nodes_per_arc < 2) throw std::invalid_argument("nodes_per_arc must be at least 2");
    const GaussLegendre rule(nodes_per_arc);
    const double weight = 1.0 / p.sides();

    DistortionReport rep;
    rep.method = Method::quadrature;
    rep.params = {q.meta.m != 0 ? q.meta.m : p.sides(), static_cast<int>(q.size()), q.meta.k, q.meta.r};
    rep.per_cell.assign(q.size(), 0.0);
    for (const auto& cell : cells) {
        const Point2 a = q.points[cell.owner_index];
        double sum = 0.0;
        for (const auto& arc : cell.arcs) {
            sum += rule.integrate(
                [&](double t) { return squared_distance(p.side_point_unchecked(arc.side, t), a); }, arc.t_lo,
                arc.t_hi);
        }
        rep.per_cell[cell.owner_index] = weight * sum;
    }
    for (double v : rep.per_cell) rep.total += v;
    return rep;
}

inline DistortionReport distortion_quadrature(const RegularPolygon& p, const QuantizerSet& q,
                                              int nodes_per_arc = default_quadrature_nodes) {
    if (nodes_per_arc < 2) throw std::invalid_argument("nodes_per_arc must be at least 2");
    return distortion_quadrature(p, q, voronoi_cells_on_boundary(p, q), nodes_per_arc);
}

struct LloydStep {
    QuantizerSet set;
    std::vector<std::size_t> frozen;  // points whose cell was empty
    double max_move = 0.0;
};

/// Simultaneous centroid update: every point moves to the conditional mean
/// of the boundary measure over its cell. Side parametrizations are affine,
/// so the integral of M_j over [lo, hi] is (hi - lo) M_j((lo + hi) / 2).
inline LloydStep lloyd_step(const RegularPolygon& p, const QuantizerSet& q, const std::vector<BoundaryCell>& cells) {
    LloydStep out;
    out.set = q;
    out.set.meta.method = Method::lloyd;
    out.set.meta.m = p.sides();
    out.set.meta.n = static_cast<int>(q.size());
    out.set.meta.r.reset();
    for (const auto& cell : cells) {
        double mass = 0.0;
        Point2 moment{};
        for (const auto& arc : cell.arcs) {
            const double w = arc.t_hi - arc.t_lo;
            mass += w;
            moment = moment + w * p.side_point_unchecked(arc.side, 0.5 * (arc.t_lo + arc.t_hi));
        }
        if (mass <= 0.0) {
            out.frozen.push_back(cell.owner_index);
            continue;
        }
        const Point2 next = (1.0 / mass) * moment;
        out.max_move = std::max(out.max_move, std::sqrt(squared_distance(next, q.points[cell.owner_index])));
        out.set.points[cell.owner_index] = next;
    }
    return out;
}

inline LloydStep lloyd_step(const RegularPolygon& p, const QuantizerSet& q) {
    return lloyd_step(p, q, voronoi_cells_on_boundary(p, q));
}

enum class InitKind { closed_form, perturbed, random };

struct LloydInit {
    InitKind kind = InitKind::random;
    std::uint64_t seed = 0;
    double perturbation = 1e-3;  // half-width of the uniform noise for `perturbed`
};

namespace detail {

// 53-bit uniform in [0, 1), identical on every standard library.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Starting configuration for Lloyd iteration; deterministic given `init`.
inline QuantizerSet initial_set(const RegularPolygon& p, int n, const LloydInit& init) {
    if (n < 1) throw std::invalid_argument("number of points must be at least 1");
    const int m = p.sides();

    if (init.kind == InitKind::closed_form || init.kind == InitKind::perturbed) {
        if (n % m != 0) {
            throw std::invalid_argument("closed-form initialization needs n to be a multiple of m (n = " +
                                        std::to_string(n) + ", m = " + std::to_string(m) + ")");
        }
        QuantizerSet q = optimal_mk_set(m, n / m);
        if (init.kind == InitKind::perturbed) {
            std::mt19937_64 rng(init.seed);
            for (auto& pt : q.points) {
                pt.x += init.perturbation * (2.0 * detail::unit_uniform(rng) - 1.0);
                pt.y += init.perturbation * (2.0 * detail::unit_uniform(rng) - 1.0);
            }
            q.meta.method = Method::manual;
            q.meta.r.reset();
        }
        return q;
    }

    // Uniform by arc length; sorted so the set is ordered along the boundary.
    std::mt19937_64 rng(init.seed);
    std::vector<double> s(static_cast<std::size_t>(n));
    for (auto& v : s) v = m * detail::unit_uniform(rng);
    std::sort(s.begin(), s.end());
    std::vector<Point2> pts;
    pts.reserve(s.size());
    for (double v : s) {
        const int j = std::min(static_cast<int>(v), m - 1);
        pts.push_back(p.side_point_unchecked(j + 1, std::clamp(v - j, 0.0, 1.0)));
    }
    return manual_set(std::move(pts), m);
}

struct LloydState {
    QuantizerSet points;
    int iterations = 0;
    double max_move = 0.0;
    double distortion = 0.0;
    bool converged = false;
    std::vector<double> history;         // distortion before step 1, after each step
    std::vector<std::size_t> frozen;     // empty cells seen in the last step
};

inline LloydState lloyd_solve(const RegularPolygon& p, int n, const LloydInit& init, double tol, int max_iter,
                              int nodes_per_arc = default_quadrature_nodes) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");

    LloydState state;
    state.points = initial_set(p, n, init);
    auto cells = voronoi_cells_on_boundary(p, state.points);
    state.distortion = distortion_quadrature(p, state.points, cells, nodes_per_arc).total;
    state.history.push_back(state.distortion);

    while (state.iterations < max_iter) {
        LloydStep step = lloyd_step(p, state.points, cells);
        state.points = std::move(step.set);
        state.frozen = std::move(step.frozen);
        state.max_move = step.max_move;
        ++state.iterations;

        cells = voronoi_cells_on_boundary(p, state.points);
        state.distortion = distortion_quadrature(p, state.points, cells, nodes_per_arc).total;
        state.history.push_back(state.distortion);
        if (state.max_move < tol) {
            state.converged = true;
            break;
        }
    }
    return state;
}

/// Golden-section search for the r in [0, l/2] minimizing total_error_of_r.
inline double minimize_over_r(int m, int k, double tol) {
    require_sides(m);
    detail::require_multiplier(k, 2);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0;
    double hi = std::sin(std::numbers::pi / m);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = total_error_of_r(m, k, x1);
    double f2 = total_error_of_r(m, k, x2);
    while (hi - lo >= tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = total_error_of_r(m, k, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = total_error_of_r(m, k, x2);
        }
        if (x1 <= lo || x2 >= hi) break;  // bracket below double resolution
    }
    return 0.5 * (lo + hi);
}

}  // namespace polyquant
