#pragma once

#include <Eigen/Dense>

#include <vector>

#include "idregret/bayes.hpp"
#include "idregret/grid.hpp"
#include "idregret/levy.hpp"
#include "idregret/semigroup.hpp"

namespace idregret {

enum class EnergyMethod { Spectral, FiniteH, GradientLocal, RateLB, GeneratorForm };

std::string to_string(EnergyMethod method);

/// A Dirichlet-energy value with its estimator tag and convergence trail.
struct EnergyEstimate {
    double value = 0.0;
    EnergyMethod method = EnergyMethod::Spectral;
    std::vector<double> partials;  // cutoff ladder / h-quotients / ascent trail
    bool warning = false;          // rate ascent was reverted at least once
};

/// E(f, f) = (2 pi)^{-1} int psi(xi) |f_hat(xi)|^2 dxi on the grid torus.
/// This normalization reproduces v * int (f')^2 for the Gaussian part 2v.
/// Requires the partial sums to settle within 0.5% under frequency-cutoff
/// doubling.
EnergyEstimate energy_spectral(const CharacteristicExponent& psi, const GriddedFunction& f);
EnergyEstimate energy_spectral(const LevyTriplet& sym, const GriddedFunction& f);

/// Rayleigh quotients (1/h) <f - T_h f, f> on a decreasing h schedule with
/// Richardson extrapolation to h -> 0. Quotients are nondecreasing as h
/// decreases (spectral calculus); violations beyond 1e-8 raise an error.
EnergyEstimate energy_finite_h(const CharacteristicExponent& psi, const GriddedFunction& f,
                               std::vector<double> h_schedule);
EnergyEstimate energy_finite_h(const LevyTriplet& sym, const GriddedFunction& f,
                               std::vector<double> h_schedule);

/// v * int (f')^2 dx by fourth-order centered differences; Gaussian-part
/// benchmark only.
EnergyEstimate energy_gradient_local(double v, const GriddedFunction& f);

/// Donsker-Varadhan lower bound: maximizes int (-A u_eps / u_eps) dmu over
/// u = exp(sum a_k b_k), where A acts as the exact torus multiplier -psi,
/// for cubic spline bases of the given size (uniform and equal-mass knot
/// layouts) and eps in {1e-2, 1e-4}, by coordinate ascent (200 sweeps with
/// early stop). mu is normalized on the window; the result is a certified
/// lower bound on the rate function up to grid discretization.
EnergyEstimate rate_function_lower_bound(const LevyTriplet& sym, const GriddedFunction& mu,
                                         std::size_t family_size);

/// eta(x) = e^{-|x|} on the grid: the default killing weight.
GriddedFunction default_eta(const Grid1D& grid);

/// Solves (alpha I + diag(eta) - L) u = eta for the killed resolvent
/// u = G_alpha^eta eta; enforces 0 <= u <= 1 + 1e-6.
GriddedFunction killed_resolvent(const LevyTriplet& sym, const GriddedFunction& eta,
                                 double alpha, double generator_h = 0.02);
GriddedFunction killed_resolvent(const Eigen::MatrixXd& generator, const GriddedFunction& eta,
                                 double alpha);

struct BlythPoint {
    double n = 0.0;       // resolvent index, alpha = 1/n
    double energy = 0.0;  // E(f_n, f_n) = <f_n, -L f_n> * spacing
};

/// Energies of the Blyth sequence f_n = G_{1/n}^eta eta along n_list.
std::vector<BlythPoint> blyth_sequence_energies(const LevyTriplet& sym,
                                                const GriddedFunction& eta,
                                                const std::vector<double>& n_list,
                                                double generator_h = 0.02);

enum class RecurrenceClass { Recurrent, Transient };

std::string to_string(RecurrenceClass c);

/// Frequency-integral test: int_{|xi|<1} dxi / psi(xi) diverges iff the
/// symmetric 1-D process is recurrent. Decided from the small-frequency
/// log-slope of psi with the integral increments as tie-breaker.
RecurrenceClass recurrence_precheck(const CharacteristicExponent& psi);

struct TransienceWitness {
    GriddedFunction g;
    double lower = 0.0;   // int M g dm
    double energy = 0.0;  // E(sqrt(M), sqrt(M))
};

/// Constructs g = sqrt(M) / max{R sqrt(M), 1} for a transient process and
/// checks the dichotomy inequality 0 < int M g dm <= E(sqrt(M), sqrt(M)),
/// evaluated on a tail-extended window. Raises ClassificationError when
/// called on a recurrent process.
TransienceWitness transience_witness(const LevyTriplet& sym, const MarginalDensity& marginal,
                                     const Grid1D& grid);

}  // namespace idregret
