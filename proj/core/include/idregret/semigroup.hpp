#pragma once

#include <Eigen/Dense>

#include "idregret/grid.hpp"
#include "idregret/levy.hpp"

namespace idregret {

struct TransitionDiagnostics {
    double raw_mass = 0.0;            // trapezoid + tail before clipping
    double renormalization = 1.0;     // factor applied after clipping
    double max_clipped = 0.0;         // largest negative ringing removed
    std::size_t clipped_points = 0;
};

/// Density of the time-t law of the centered symmetric Levy process with
/// exponent psi, by discrete Fourier inversion of exp(-t psi). For stable
/// jump parts the periodization images are removed with the analytic tail
/// expansion and a power tail coeff * |x|^{-(1+alpha)} is fitted on the
/// outer region and attached. Grid must be symmetric about zero and wide
/// enough that the mass (trapezoid + tail) reassembles 1 within
/// max(mass_tolerance, 3 * tail uncertainty); the declared tail uncertainty
/// itself must stay below mass_tolerance. The default 1e-6 is the strict
/// contract; callers that knowingly truncate very heavy tails (alpha < 1)
/// pass a larger budget and read the uncertainty off the result.
GriddedFunction transition_density(const CharacteristicExponent& psi, double t,
                                   const Grid1D& grid,
                                   TransitionDiagnostics* diag = nullptr,
                                   double mass_tolerance = 1e-6);
GriddedFunction transition_density(const LevyTriplet& sym, double t, const Grid1D& grid,
                                   TransitionDiagnostics* diag = nullptr,
                                   double mass_tolerance = 1e-6);

/// (T_t f)(x) = int q_t(y - x) f(y) dy on the periodic torus of the grid:
/// Fourier multiplier exp(-t psi). Linear, positivity preserving, exact on
/// constants. The tail model of f is carried through unchanged.
GriddedFunction apply_semigroup(const LevyTriplet& sym, double t, const GriddedFunction& f);
GriddedFunction apply_semigroup(const CharacteristicExponent& psi, double t,
                                const GriddedFunction& f);

/// Resolvent G_alpha f = int_0^inf e^{-alpha s} T_s f ds: Fourier multiplier
/// 1 / (alpha + psi).
GriddedFunction resolvent(const LevyTriplet& sym, double alpha, const GriddedFunction& f);
GriddedFunction resolvent(const CharacteristicExponent& psi, double alpha,
                          const GriddedFunction& f);

/// Dense discrete generator L = (P_h - I) / h on the grid, where P_h is the
/// row-discretized time-h kernel with absorbing (killing) truncation outside
/// the grid. Entries of P_h are exact cell masses of q_h, computed on an
/// internal fine grid, so rows sum to <= 1 and L rows sum to <= 0.
/// Requires h <= 0.05 and n <= 4096 (dense solve budget).
Eigen::MatrixXd generator_matrix(const LevyTriplet& sym, const Grid1D& grid, double h);

}  // namespace idregret
