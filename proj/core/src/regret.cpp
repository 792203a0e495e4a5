#include "idregret/regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idregret/likelihood.hpp"
#include "idregret/semigroup.hpp"

namespace idregret {

namespace {
constexpr double kDensityFloor = 1e-300;
constexpr double kSupportCut = 1e-15;
}  // namespace

double kl_divergence(const GriddedFunction& p, const GriddedFunction& q) {
    if (!(p.grid == q.grid)) throw ConfigError("kl_divergence: densities on different grids");
    const std::size_t n = p.size();
    double peak = 0.0;
    for (double v : p.values) peak = std::max(peak, v);
    const double cut = kSupportCut * peak;

    const std::vector<double> w = trapezoid_weights(p.grid);
    double acc = 0.0, missing = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pi = p.values[i];
        if (pi < cut) continue;
        const double qi = std::max(q.values[i], kDensityFloor);
        if (q.values[i] <= kDensityFloor) missing += w[i] * pi;
        acc += w[i] * pi * std::log(std::max(pi, kDensityFloor) / qi);
    }
    // q vanishing where p carries real mass means the divergence is +inf;
    // isolated floored points at the support fringe are quadrature noise
    if (missing > 1e-6) return std::numeric_limits<double>::infinity();
    return acc;
}

PredictiveKernel plugin_rule(const LevyTriplet& model, const Grid1D& grid) {
    auto noise = std::make_shared<ModelDensity>(model, grid);
    std::vector<double> vals(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) vals[i] = noise->pdf(grid.point(i));
    GriddedFunction f(grid, std::move(vals), noise->tail());
    return PredictiveKernel::translation(std::move(f), std::move(noise));
}

KlRisk kl_risk(const LevyTriplet& model, const PredictiveKernel& rule, double theta,
               const Grid1D& grid) {
    if (!(rule.grid() == grid)) throw ConfigError("kl_risk: rule lives on a different grid");
    const ModelDensity f(model, grid);
    const std::size_t n = grid.n;

    // p(.|theta) doubles as the sampling density of X and the KL target
    std::vector<double> sampling(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sampling[i] = f.pdf(grid.point(i) - theta);
        peak = std::max(peak, sampling[i]);
    }
    const double cut = 1e-12 * peak;
    GriddedFunction p_theta(grid, sampling, f.tail());

    const std::vector<double> w = trapezoid_weights(grid);
    KlRisk out;
    double kept_mass = 0.0, total_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total_mass += w[i] * sampling[i];
        if (sampling[i] < cut) continue;
        kept_mass += w[i] * sampling[i];
        if (rule.row_untrusted(i)) {
            out.flagged = true;
            continue;
        }
        out.value += w[i] * sampling[i] * kl_divergence(p_theta, rule.row_function(i));
    }
    out.truncated_mass = total_mass - kept_mass;
    return out;
}

double integrated_regret(const BayesSystem& system, const PredictiveKernel& benchmark) {
    const PredictiveKernel& k = system.kernel;
    const Grid1D& grid = k.grid();
    if (!(benchmark.grid() == grid))
        throw ConfigError("integrated_regret: benchmark on a different grid");
    const std::size_t n = grid.n;
    const std::vector<double> w = trapezoid_weights(grid);
    const std::vector<double>& m = system.marginal.density.values;

    double peak_weight = 0.0;
    for (std::size_t i = 0; i < n; ++i) peak_weight = std::max(peak_weight, w[i] * m[i]);

    double acc = 0.0, excluded = 0.0, total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc, excluded, total)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double weight = w[i] * m[i];
        total += weight;
        if (k.row_untrusted(i)) {
            excluded += weight;
            continue;
        }
        // rows this far into the weight tail cannot move the integral; their
        // kernels may not even overlap the benchmark at double precision
        if (weight < 1e-13 * peak_weight) continue;
        const double row_kl = kl_divergence(k.row_function(i), benchmark.row_function(i));
        if (!std::isfinite(row_kl)) {
            // underflowed benchmark support at the fringe; count the row into
            // the logged deficit rather than poisoning the integral
            excluded += weight;
            continue;
        }
        acc += weight * row_kl;
    }
    if (total > 0.0 && excluded / total > 1e-3)
        throw NumericError("integrated_regret: untrusted rows carry " +
                           std::to_string(excluded / total) +
                           " of the weight (> 1e-3); widen the grid");
    return acc;
}

double integrated_regret(const LevyTriplet& model, const PriorSpec& prior,
                         const Grid1D& grid) {
    const BayesSystem system = build_bayes_system(model, prior, grid);
    if (system.kernel.is_translation()) {
        // uniform prior: the kernel is the benchmark itself
        return 0.0;
    }
    const PredictiveKernel benchmark = benchmark_predictive(model, grid);
    return integrated_regret(system, benchmark);
}

}  // namespace idregret
