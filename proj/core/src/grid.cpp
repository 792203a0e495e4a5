#include "idregret/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace idregret {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid1D::Grid1D(double lo, double hi, std::size_t count) : lower(lo), upper(hi), n(count) {
    if (!(lower < upper)) throw ConfigError("Grid1D: lower must be < upper");
    if (n < 16) throw ConfigError("Grid1D: need at least 16 points");
    if (!power_of_two(n)) throw ConfigError("Grid1D: point count must be a power of two");
}

std::vector<double> Grid1D::points() const {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = point(i);
    return xs;
}

bool Grid1D::symmetric_about_zero() const {
    return std::abs(lower + upper) <= 1e-12 * (upper - lower);
}

double TailModel::value_at(double abs_x) const {
    if (exponent == 0.0) return coeff;
    const double r = std::abs(abs_x);
    double v = coeff * std::pow(r, -exponent);
    for (const auto& [p, c] : corrections) v += c * std::pow(r, -p);
    return v;
}

double TailModel::mass_beyond(double from) const {
    if (exponent == 0.0 && coeff == 0.0) return 0.0;
    if (exponent <= 1.0)
        throw NumericError("TailModel: tail mass diverges (exponent <= 1)");
    double m = coeff * std::pow(from, 1.0 - exponent) / (exponent - 1.0);
    for (const auto& [p, c] : corrections)
        m += c * std::pow(from, 1.0 - p) / (p - 1.0);
    return m;
}

GriddedFunction::GriddedFunction(Grid1D g, std::vector<double> v, std::optional<TailModel> t)
    : grid(g), values(std::move(v)), tail(t) {
    if (values.size() != grid.n)
        throw ConfigError("GriddedFunction: value count does not match grid");
}

double GriddedFunction::trapezoid() const {
    const double h = grid.spacing();
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
    return s * h;
}

double GriddedFunction::trapezoid_periodic() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.spacing();
}

double GriddedFunction::integral_with_tail() const {
    double body = trapezoid();
    if (!tail) return body;
    // both sides; the grid convention drops the +upper endpoint, so measure
    // the tail from the span edge on each side.
    return body + tail->mass_beyond(grid.upper) + tail->mass_beyond(-grid.lower);
}

double GriddedFunction::l2_norm_sq() const {
    const double h = grid.spacing();
    double s = 0.5 * (values.front() * values.front() + values.back() * values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i] * values[i];
    return s * h;
}

double GriddedFunction::at_offset(long long k) const {
    const long long zero = static_cast<long long>(grid.index_of_zero());
    const long long idx = zero + k;
    if (idx >= 1 && idx < static_cast<long long>(values.size()))
        return values[static_cast<std::size_t>(idx)];
    if (tail) return tail->value_at(std::abs(static_cast<double>(k)) * grid.spacing());
    return 0.0;
}

double GriddedFunction::eval(double x) const {
    if (x < grid.lower || x >= grid.upper - grid.spacing()) {
        if (x >= grid.lower && x < grid.upper) {
            // last cell: clamp to the final sample
            return values.back();
        }
        if (tail) return tail->value_at(std::abs(x));
        return 0.0;
    }
    const double t = (x - grid.lower) / grid.spacing();
    const std::size_t i = static_cast<std::size_t>(t);
    const double w = t - static_cast<double>(i);
    return (1.0 - w) * values[i] + w * values[i + 1];
}

double GriddedFunction::evenness_defect() const {
    const std::size_t n = values.size();
    double worst = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        worst = std::max(worst, std::abs(values[i] - values[n - i]));
    return worst;
}

void GriddedFunction::symmetrize_values() {
    const std::size_t n = values.size();
    for (std::size_t i = 1; i < n / 2; ++i) {
        const double m = 0.5 * (values[i] + values[n - i]);
        values[i] = values[n - i] = m;
    }
}

namespace {
void require_same_grid(const GriddedFunction& a, const GriddedFunction& b) {
    if (!(a.grid == b.grid)) throw ConfigError("gridded functions live on different grids");
}
}  // namespace

GriddedFunction operator+(const GriddedFunction& a, const GriddedFunction& b) {
    require_same_grid(a, b);
    GriddedFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    out.tail.reset();
    return out;
}

GriddedFunction operator-(const GriddedFunction& a, const GriddedFunction& b) {
    require_same_grid(a, b);
    GriddedFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    out.tail.reset();
    return out;
}

GriddedFunction operator*(double s, const GriddedFunction& a) {
    GriddedFunction out = a;
    for (double& v : out.values) v *= s;
    if (out.tail) {
        out.tail->coeff *= s;
        for (auto& [p, c] : out.tail->corrections) c *= s;
    }
    return out;
}

double inner(const GriddedFunction& a, const GriddedFunction& b) {
    require_same_grid(a, b);
    const double h = a.grid.spacing();
    const std::size_t n = a.values.size();
    double s = 0.5 * (a.values[0] * b.values[0] + a.values[n - 1] * b.values[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) s += a.values[i] * b.values[i];
    return s * h;
}

GriddedFunction sqrt_of(const GriddedFunction& f) {
    GriddedFunction out = f;
    for (double& v : out.values) v = std::sqrt(std::max(v, 0.0));
    if (out.tail) {
        out.tail->exponent *= 0.5;
        out.tail->coeff = std::sqrt(std::max(out.tail->coeff, 0.0));
        out.tail->corrections.clear();  // sqrt of a sum is not a sum of powers
    }
    return out;
}

LogLogFit fit_power_tail(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    LogLogFit fit;
    fit.points = lx.size();
    if (lx.size() < 3) throw NumericError("fit_power_tail: fewer than 3 usable points");
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw NumericError("fit_power_tail: degenerate abscissae");
    const double slope = sxy / sxx;
    fit.slope_exponent = -slope;
    fit.coeff = std::exp(my - slope * mx);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double pred = my + slope * (lx[i] - mx);
        ss_res += (ly[i] - pred) * (ly[i] - pred);
    }
    fit.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    const double dof = std::max(1.0, n - 2.0);
    fit.stderr_exponent = std::sqrt(ss_res / dof / sxx);
    return fit;
}

}  // namespace idregret
