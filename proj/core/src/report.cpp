#include <cmath>
#include <sstream>
#include <numbers>

#include "idregret/energy.hpp"
#include "idregret/quad.hpp"
#include "idregret/regret.hpp"

namespace idregret {

IdentityReport verify_identity(const LevyTriplet& model, const PriorSpec& prior,
                               const Grid1D& grid) {
    if (!prior.proper() && !prior.power_tail_exponent() && prior.kind != PriorKind::Uniform)
        throw ConfigError("verify_identity: prior must be proper or carry a known tail");

    const LevyTriplet sym = symmetrize(model);
    const CharacteristicExponent psi(sym);
    const BayesSystem system = build_bayes_system(model, prior, grid);
    const PredictiveKernel benchmark = benchmark_predictive(model, grid);

    IdentityReport rep;
    rep.grid_n = grid.n;
    rep.grid_upper = grid.upper;
    rep.lhs_regret = system.kernel.is_translation()
                         ? 0.0
                         : integrated_regret(system, benchmark);

    const GriddedFunction root = sqrt_of(system.marginal.density);
    const EnergyEstimate spectral = energy_spectral(psi, root);
    const EnergyEstimate finite_h =
        energy_finite_h(psi, root, {0.5, 0.25, 0.125, 0.0625, 0.03125});
    rep.rhs_energy_spectral = spectral.value;
    rep.rhs_energy_finite_h = finite_h.value;
    if (sym.measure.trivial()) {
        const double v = 0.5 * sym.gaussian_variance;
        rep.rhs_energy_gradient = energy_gradient_local(v, root).value;
    }

    auto ratio = [](double a, double b) { return b != 0.0 ? a / b : 0.0; };
    rep.ratio_spectral = ratio(rep.lhs_regret, rep.rhs_energy_spectral);
    rep.ratio_finite_h = ratio(rep.lhs_regret, rep.rhs_energy_finite_h);

    // report invariants: finite, nonnegative, estimators concordant
    for (double v : {rep.lhs_regret, rep.rhs_energy_spectral, rep.rhs_energy_finite_h}) {
        if (!std::isfinite(v) || v < -1e-12)
            throw NumericError("verify_identity: report entry not finite and nonnegative");
    }
    const double scale = std::max(std::abs(rep.rhs_energy_spectral), 1e-12);
    const double concord = std::abs(rep.rhs_energy_spectral - rep.rhs_energy_finite_h) / scale;
    std::ostringstream note;
    note << "spectral-vs-finite-h relative gap " << concord << " (declared tolerance 5e-3)";
    if (rep.rhs_energy_gradient) {
        const double gap = std::abs(*rep.rhs_energy_gradient - rep.rhs_energy_spectral) / scale;
        note << "; gradient gap " << gap << " (declared tolerance 1e-4)";
        if (gap > 1e-4 && scale > 1e-10)
            throw NumericError("verify_identity: gradient estimator discordant: " + note.str());
    }
    if (concord > 5e-3)
        throw NumericError("verify_identity: estimators discordant: " + note.str());
    rep.tolerance_note = note.str();
    return rep;
}

namespace {

// int (d/dz sqrt(N(0, s2)))^2 dz on a dedicated grid
double gradient_energy_of_gaussian_root(double s2) {
    const double s = std::sqrt(s2);
    const double upper = 14.0 * s;
    const Grid1D grid(-upper, upper, 4096);
    std::vector<double> vals(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.point(i);
        vals[i] = std::exp(-0.25 * x * x / s2) /
                  std::pow(2.0 * std::numbers::pi * s2, 0.25);
    }
    GriddedFunction root(grid, std::move(vals));
    return energy_gradient_local(1.0, root).value;
}

}  // namespace

GaussianReductionReport gaussian_reduction_report(double v, double sigma2) {
    if (!(v > 0.0)) throw ConfigError("gaussian_reduction_report: v must be > 0");
    if (sigma2 < 0.0) throw ConfigError("gaussian_reduction_report: sigma2 must be >= 0");

    GaussianReductionReport rep;
    // conjugate quadratic-risk oracle: B_Q(MLE) = w, B_Q(post mean) = w s2 / (w + s2)
    auto quadratic_side = [&](double w) {
        const double diff = w - w * sigma2 / (w + sigma2);
        return diff / (w * w);
    };
    auto gradient_side = [&](double w) {
        return 4.0 * gradient_energy_of_gaussian_root(w + sigma2);
    };

    for (double w : {0.5 * v, 0.75 * v, v}) {
        GaussianReductionReport::PerNoise row;
        row.w = w;
        row.quadratic_side = quadratic_side(w);
        row.gradient_side = gradient_side(w);
        rep.per_noise.push_back(row);
        const double rel =
            std::abs(row.quadratic_side - row.gradient_side) / std::abs(row.quadratic_side);
        if (rel > 1e-6)
            throw NumericError("gaussian_reduction_report: per-noise identity off by " +
                               std::to_string(rel));
    }

    rep.variance_integral =
        2.0 * quad::gauss_on([&](double w) { return gradient_energy_of_gaussian_root(w + sigma2); },
                             0.5 * v, v, 40);
    rep.closed_form = 0.5 * std::log(2.0 * (v + sigma2) / (v + 2.0 * sigma2));
    const double scale = std::max(std::abs(rep.closed_form), 1e-9);
    if (std::abs(rep.variance_integral - rep.closed_form) / scale > 1e-6)
        throw NumericError("gaussian_reduction_report: variance-integral form disagrees with "
                           "the closed form");
    return rep;
}

}  // namespace idregret
