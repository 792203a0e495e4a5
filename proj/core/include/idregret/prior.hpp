#pragma once

#include <optional>
#include <string>

#include "idregret/errors.hpp"

namespace idregret {

enum class PriorKind { Uniform, GaussianProper, PowerLaw, PointMass, StudentLikeProper };

/// Prior on the location parameter. Proper priors evaluate to normalized
/// densities; improper ones are unnormalized (Uniform is identically 1,
/// PowerLaw with beta <= d is the raw smooth-core power law). Downstream
/// integrals are stated against M^pi dx directly, so improper scales never
/// need a normalizing constant.
struct PriorSpec {
    PriorKind kind = PriorKind::Uniform;
    double sigma2 = 1.0;  // GaussianProper
    double beta = 1.0;    // PowerLaw / StudentLikeProper tail exponent
    double r0 = 1.0;      // smooth core radius of (r0^2 + theta^2)^{-beta/2}
    double theta0 = 0.0;  // PointMass location

    static PriorSpec uniform();
    static PriorSpec gaussian_proper(double sigma2);
    static PriorSpec power_law(double beta, double r0);
    static PriorSpec point_mass(double theta0);
    static PriorSpec student_like_proper(double beta, double r0 = 1.0);

    bool proper(int d = 1) const;
    bool symmetric() const { return kind != PriorKind::PointMass || theta0 == 0.0; }

    /// Density at theta (d = 1 pipeline). PointMass has no density.
    double density(double theta) const;
    /// Power-law decay exponent at infinity, when the tail is polynomial.
    std::optional<double> power_tail_exponent() const;
    /// Prior mass outside [lo, hi]; infinite for improper priors.
    double mass_outside(double lo, double hi) const;

    std::string name() const;
};

}  // namespace idregret
