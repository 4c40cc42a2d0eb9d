#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace polyquant {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n - 1.
class GaussLegendre {
public:
    explicit GaussLegendre(int n) {
        if (n < 2) throw std::invalid_argument("Gauss-Legendre rule needs at least 2 nodes");
        nodes_.resize(static_cast<std::size_t>(n));
        weights_.resize(static_cast<std::size_t>(n));
        // Roots are symmetric; Newton from the Chebyshev-like initial guess.
        const int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes_[static_cast<std::size_t>(i)] = -x;
            nodes_[static_cast<std::size_t>(n - 1 - i)] = x;
            weights_[static_cast<std::size_t>(i)] = w;
            weights_[static_cast<std::size_t>(n - 1 - i)] = w;
        }
        if (n % 2 == 1) nodes_[static_cast<std::size_t>(n / 2)] = 0.0;
    }

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Integral of f over [a, b].
    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
        return half * sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}  // namespace polyquant
