#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <vector>

#include "idregret/grid.hpp"
#include "idregret/levy.hpp"
#include "idregret/likelihood.hpp"
#include "idregret/prior.hpp"

namespace idregret {

/// Marginal M^pi(x) = int p(x|theta) pi(theta) dtheta on the grid. Improper
/// priors give sigma-finite (unnormalized) values; proper priors are checked
/// to carry mass 1 +- 1e-6 after exact window corrections.
struct MarginalDensity {
    GriddedFunction density;
    bool proper = false;
    double mass_estimate = 0.0;  // meaningful for proper priors only
};

/// Either the benchmark translation kernel q~(y - x) or a dense grid of
/// conditional densities K(y|x) for a general prior. Gridded rows are
/// normalized against the window marginal, so the continuum row mass is
/// exactly one; `row_tail_deficit` estimates the part beyond the grid.
class PredictiveKernel {
public:
    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    PredictiveKernel() = default;

    static PredictiveKernel translation(GriddedFunction qtilde,
                                        std::shared_ptr<ModelDensity> noise);
    static PredictiveKernel gridded(Grid1D grid, RowMatrix rows,
                                    std::vector<double> marginal_weights,
                                    std::vector<double> row_deficit,
                                    std::vector<std::uint8_t> untrusted);

    bool is_translation() const { return translation_; }
    const Grid1D& grid() const { return grid_; }
    const GriddedFunction& qtilde() const;
    const RowMatrix& rows() const;
    const std::vector<double>& marginal_weights() const { return marginal_weights_; }

    /// K(y_j | x_i)
    double value(std::size_t i, std::size_t j) const;
    /// Row i as a function of y, with the appropriate tail model.
    GriddedFunction row_function(std::size_t i) const;
    /// Estimated row mass beyond the grid.
    double row_tail_deficit(std::size_t i) const;
    bool row_untrusted(std::size_t i) const;

private:
    bool translation_ = false;
    Grid1D grid_;
    GriddedFunction qtilde_;
    std::shared_ptr<ModelDensity> noise_;
    RowMatrix rows_;
    std::vector<double> marginal_weights_;
    std::vector<double> row_deficit_;
    std::vector<std::uint8_t> untrusted_;
};

/// Trapezoid weights of a grid (h at interior points, h/2 at the two ends).
std::vector<double> trapezoid_weights(const Grid1D& grid);

/// Benchmark p^{pi_U}(y|x) = q~(y - x), the time-1 density of the
/// symmetrized model.
PredictiveKernel benchmark_predictive(const LevyTriplet& model, const Grid1D& grid);

MarginalDensity marginal_density(const LevyTriplet& model, const PriorSpec& prior,
                                 const Grid1D& grid);

/// General-prior Bayes predictive kernel; the Uniform prior returns exactly
/// the translation benchmark.
PredictiveKernel bayes_predictive(const LevyTriplet& model, const PriorSpec& prior,
                                  const Grid1D& grid);

/// Everything the detailed-balance / invariance / regret computations share.
struct BayesSystem {
    std::shared_ptr<ModelDensity> noise;
    MarginalDensity marginal;
    PredictiveKernel kernel;
    // theta-window tail correction sum_m w_m pi_m f(x - theta_m) s(theta_m),
    // where s is the f-mass that escapes the grid from center theta_m
    std::vector<double> escape_correction;
};

BayesSystem build_bayes_system(const LevyTriplet& model, const PriorSpec& prior,
                               const Grid1D& grid);

/// max over (x, y) of |M(x)K(y|x) - M(y)K(x|y)| / max joint value.
double detailed_balance_residual(const BayesSystem& system);
double detailed_balance_residual(const LevyTriplet& model, const PriorSpec& prior,
                                 const Grid1D& grid);

/// Relative L1 residual of int K(x|y) M(y) dy - M(x) over the interior half
/// of the grid (escape-corrected).
double invariance_residual(const BayesSystem& system);
double invariance_residual(const LevyTriplet& model, const PriorSpec& prior,
                           const Grid1D& grid);

}  // namespace idregret
