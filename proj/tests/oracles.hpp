#pragma once

// Closed-form references and brute-force quadrature oracles used by the
// tests. Everything here is independent of the library's computation paths:
// densities are textbook formulas, integrals are direct quadrature.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "idregret/grid.hpp"

namespace oracle {

inline double normal_pdf(double x, double mean, double var) {
    return std::exp(-0.5 * (x - mean) * (x - mean) / var) /
           std::sqrt(2.0 * std::numbers::pi * var);
}

inline double cauchy_pdf(double x, double scale) {
    return scale / (std::numbers::pi * (scale * scale + x * x));
}

// KL(N(m1, v1) || N(m2, v2))
inline double gaussian_kl(double m1, double v1, double m2, double v2) {
    return 0.5 * (std::log(v2 / v1) + v1 / v2 + (m1 - m2) * (m1 - m2) / v2 - 1.0);
}

// int_R (1 - cos u) |u|^{-(1+a)} du = pi / (Gamma(1 + a) sin(pi a / 2))
inline double stable_kappa_closed(double a) {
    return std::numbers::pi / (std::tgamma(1.0 + a) * std::sin(0.5 * std::numbers::pi * a));
}

// composite Simpson on [a, b]
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t intervals = 2000) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / static_cast<double>(intervals);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < intervals; ++i)
        s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// direct self-convolution of grid samples: (p * q)(x_j) via the trapezoid sum
inline std::vector<double> direct_convolution(const idregret::GriddedFunction& p,
                                              const idregret::GriddedFunction& q) {
    const std::size_t n = p.size();
    const double h = p.grid.spacing();
    std::vector<double> out(n, 0.0);
    const long long zero = static_cast<long long>(p.grid.index_of_zero());
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const long long k = static_cast<long long>(j) - static_cast<long long>(m) + zero;
            if (k >= 0 && k < static_cast<long long>(n))
                acc += p.values[m] * q.values[static_cast<std::size_t>(k)];
        }
        out[j] = acc * h;
    }
    return out;
}

// deterministic smooth random test function: mixture of Gaussian bumps
inline idregret::GriddedFunction random_smooth(const idregret::Grid1D& grid,
                                               unsigned long long seed) {
    // xorshift so the draw is reproducible across platforms
    auto next = [&]() {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        return static_cast<double>(seed % 1000003ull) / 1000003.0;
    };
    const std::size_t bumps = 3 + static_cast<std::size_t>(next() * 3);
    std::vector<double> center(bumps), width(bumps), height(bumps);
    const double span = grid.upper - grid.lower;
    for (std::size_t b = 0; b < bumps; ++b) {
        center[b] = grid.lower + span * (0.25 + 0.5 * next());
        width[b] = span * (0.01 + 0.05 * next());
        height[b] = 0.2 + next();
    }
    std::vector<double> v(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.point(i);
        for (std::size_t b = 0; b < bumps; ++b)
            v[i] += height[b] * std::exp(-0.5 * (x - center[b]) * (x - center[b]) /
                                         (width[b] * width[b]));
    }
    return idregret::GriddedFunction(grid, std::move(v));
}

}  // namespace oracle
