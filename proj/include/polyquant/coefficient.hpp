#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "polyquant/polygon_quant.hpp"

namespace polyquant {

/// Quantization coefficient of the uniform distribution on the unit circle.
inline constexpr double circle_coefficient = std::numbers::pi * std::numbers::pi / 3.0;

/// (1/3) m^2 sin^2(pi/m) for real m; generic so it can be evaluated in
/// extended precision.
template <class Real>
Real coefficient_curve(Real m) {
    using std::sin;
    const Real s = sin(Real(std::numbers::pi_v<long double>) / m);
    return m * m * s * s / Real(3);
}

/// lim n^2 V_n for the uniform distribution on the m-gon boundary.
/// Evaluated in long double and rounded once, so m = 6 gives exactly 3.
inline double quant_coefficient(int m) {
    require_sides(m);
    return static_cast<double>(coefficient_curve(static_cast<long double>(m)));
}

/// d/dm of the coefficient curve: (2/3) sin(pi/m) (m sin(pi/m) - pi cos(pi/m)).
inline double coefficient_derivative(double m) {
    if (!(m >= 3.0) || !std::isfinite(m)) throw std::invalid_argument("m must be a finite real >= 3");
    const double a = std::numbers::pi / m;
    const double s = std::sin(a);
    return 2.0 / 3.0 * s * (m * s - std::numbers::pi * std::cos(a));
}

struct ConvergenceRow {
    int m = 0;
    int n = 0;
    int k = 0;
    double r = 0.0;
    double Vn = 0.0;
    double scaled = 0.0;     // n^2 V_n
    double coefficient = 0.0;
    double deviation = 0.0;  // scaled - coefficient
};

inline ConvergenceRow convergence_row(int m, int k) {
    ConvergenceRow row;
    row.m = m;
    row.k = k;
    row.n = m * k;
    row.r = vertex_radius(m, k);
    row.Vn = optimal_error_value(m, k);
    const double n = row.n;
    row.scaled = n * n * row.Vn;
    row.coefficient = quant_coefficient(m);
    row.deviation = row.scaled - row.coefficient;
    return row;
}

inline std::vector<ConvergenceRow> convergence_table(int m, const std::vector<int>& k_values) {
    require_sides(m);
    std::vector<ConvergenceRow> rows;
    rows.reserve(k_values.size());
    for (int k : k_values) rows.push_back(convergence_row(m, k));
    return rows;
}

/// The two bounds that bracket n^2 V_n for every mk <= n < m(k+1).
struct Sandwich {
    double lower = 0.0;  // (mk)^2 V_{m(k+1)}
    double upper = 0.0;  // (m(k+1))^2 V_{mk}
};

inline Sandwich sandwich_bounds(int m, int k) {
    require_sides(m);
    detail::require_multiplier(k);
    const double lo_n = static_cast<double>(m) * k;
    const double hi_n = static_cast<double>(m) * (k + 1);
    return {lo_n * lo_n * optimal_error_value(m, k + 1), hi_n * hi_n * optimal_error_value(m, k)};
}

}  // namespace polyquant
