#pragma once

#include <optional>
#include <string>

#include "idregret/bayes.hpp"
#include "idregret/grid.hpp"
#include "idregret/levy.hpp"
#include "idregret/prior.hpp"

namespace idregret {

/// Grid-window KL divergence: trapezoid of p log(p/q), with both densities
/// floored at 1e-300 and the integrand zeroed where p < 1e-15 max p.
/// Returns +infinity when q vanishes on the support of p.
double kl_divergence(const GriddedFunction& p, const GriddedFunction& q);

struct KlRisk {
    double value = 0.0;
    bool flagged = false;          // untrusted kernel rows inside the support
    double truncated_mass = 0.0;   // p(.|theta) mass dropped by the x-truncation
};

/// R_KL(theta, rule) = int KL(p(.|theta) || rule(.|x)) p(x|theta) dx by nested
/// quadrature; x is truncated where p(x|theta) < 1e-12 * peak.
KlRisk kl_risk(const LevyTriplet& model, const PredictiveKernel& rule, double theta,
               const Grid1D& grid);

/// The plug-in rule rule(.|x) = p(.|x).
PredictiveKernel plugin_rule(const LevyTriplet& model, const Grid1D& grid);

/// Integrated regret int KL(p^pi(.|x) || p^{pi_U}(.|x)) M^pi(x) dx (Bayes
/// risk difference). Untrusted rows are excluded; the excluded weight
/// fraction must stay below 1e-3.
double integrated_regret(const LevyTriplet& model, const PriorSpec& prior, const Grid1D& grid);
double integrated_regret(const BayesSystem& system, const PredictiveKernel& benchmark);

/// Both sides of the entropy-energy identity, reported with ratios; the
/// report asserts its own consistency invariants (finiteness, estimator
/// concordance), never lhs == rhs.
struct IdentityReport {
    double lhs_regret = 0.0;
    double rhs_energy_spectral = 0.0;
    double rhs_energy_finite_h = 0.0;
    std::optional<double> rhs_energy_gradient;
    double ratio_spectral = 0.0;
    double ratio_finite_h = 0.0;
    std::size_t grid_n = 0;
    double grid_upper = 0.0;
    std::string tolerance_note;
};

IdentityReport verify_identity(const LevyTriplet& model, const PriorSpec& prior,
                               const Grid1D& grid);

/// Gaussian reduction cross-checks at equal variances: per-noise-level
/// quadratic-risk identity and the variance-integral form against the
/// closed-form regret.
struct GaussianReductionReport {
    struct PerNoise {
        double w = 0.0;
        double quadratic_side = 0.0;  // (1/w^2)[B_Q(MLE) - B_Q(posterior mean)]
        double gradient_side = 0.0;   // 4 int (d/dz sqrt(M(.; w)))^2 dz
    };
    std::vector<PerNoise> per_noise;
    double variance_integral = 0.0;  // 2 int_{v/2}^v [int ||grad sqrt M||^2] dw
    double closed_form = 0.0;        // (1/2) log(2(v + s2) / (v + 2 s2))
};

GaussianReductionReport gaussian_reduction_report(double v, double sigma2);

}  // namespace idregret
