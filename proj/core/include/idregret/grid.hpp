#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "idregret/errors.hpp"

namespace idregret {

/// Uniform 1-D grid with a power-of-two point count.
///
/// Points are x_i = lower + i * spacing for i = 0..n-1; the right endpoint
/// `upper` is excluded, which is the periodic (FFT) convention. A grid that
/// is symmetric about zero has lower == -upper, so that x_{n/2} == 0 and
/// x_{n-i} == -x_i for 0 < i < n.
struct Grid1D {
    double lower = -1.0;
    double upper = 1.0;
    std::size_t n = 16;

    Grid1D() = default;
    Grid1D(double lo, double hi, std::size_t count);

    double spacing() const { return (upper - lower) / static_cast<double>(n); }
    double point(std::size_t i) const { return lower + spacing() * static_cast<double>(i); }
    std::vector<double> points() const;

    bool symmetric_about_zero() const;
    std::size_t index_of_zero() const { return n / 2; }

    /// Same span, twice the points.
    Grid1D refined() const { return Grid1D(lower, upper, 2 * n); }

    bool operator==(const Grid1D&) const = default;
};

/// Power-law extension `value(x) ~ coeff * |x|^{-exponent}` beyond the grid,
/// optionally refined by higher-order correction terms (exponent, coeff).
/// exponent == 0 encodes a constant extension (value == coeff).
struct TailModel {
    double exponent = 0.0;
    double coeff = 0.0;
    std::vector<std::pair<double, double>> corrections;

    TailModel() = default;
    TailModel(double p, double c) : exponent(p), coeff(c) {}

    double value_at(double abs_x) const;
    /// integral of the tail over (from, +inf), one side. Throws for exponent <= 1.
    double mass_beyond(double from) const;
};

/// Real-valued function sampled on a Grid1D, with optional power-law tail
/// metadata describing its behaviour beyond the grid.
struct GriddedFunction {
    Grid1D grid;
    std::vector<double> values;
    std::optional<TailModel> tail;
    // absolute uncertainty of tail-corrected integrals induced by truncating
    // the tail expansion (0 for exact or rapidly decaying tails)
    double tail_uncertainty = 0.0;

    GriddedFunction() = default;
    GriddedFunction(Grid1D g, std::vector<double> v, std::optional<TailModel> t = std::nullopt);

    std::size_t size() const { return values.size(); }

    /// Trapezoid integral over the grid span only.
    double trapezoid() const;
    /// spacing * sum(values): trapezoid over the closed span under the
    /// periodic convention (the missing +upper sample equals the lower one).
    double trapezoid_periodic() const;
    /// Trapezoid plus two-sided analytic tail mass (requires a tail model with
    /// exponent > 1, or a constant-zero tail). Throws otherwise.
    double integral_with_tail() const;
    /// Grid trapezoid of the square.
    double l2_norm_sq() const;

    /// Value at the lattice point `index_of_zero + k` for signed k; falls back
    /// to the tail model (or 0 without one) outside the grid. Grid must be
    /// symmetric about zero.
    double at_offset(long long k) const;
    /// Value at arbitrary x: linear interpolation on the grid, tail model outside.
    double eval(double x) const;

    /// Max |f(x_i) - f(-x_i)| over the grid (0 for even samples).
    double evenness_defect() const;
    /// Replace samples by their even part.
    void symmetrize_values();
};

/// Elementwise helpers (grids must match).
GriddedFunction operator+(const GriddedFunction& a, const GriddedFunction& b);
GriddedFunction operator-(const GriddedFunction& a, const GriddedFunction& b);
GriddedFunction operator*(double s, const GriddedFunction& a);

/// <a, b> = trapezoid of a*b over the grid.
double inner(const GriddedFunction& a, const GriddedFunction& b);

/// Pointwise square root, tail exponent halved.
GriddedFunction sqrt_of(const GriddedFunction& f);

/// Least-squares fit of log y = log coeff - p * log x. Returns {p, coeff, r2}.
struct LogLogFit {
    double slope_exponent = 0.0;  // p in y ~ coeff * x^{-p}
    double coeff = 0.0;
    double r2 = 0.0;
    double stderr_exponent = 0.0;
    std::size_t points = 0;
};
LogLogFit fit_power_tail(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace idregret
