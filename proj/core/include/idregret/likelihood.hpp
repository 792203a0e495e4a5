#pragma once

#include <memory>
#include <optional>

#include "idregret/grid.hpp"
#include "idregret/levy.hpp"

namespace idregret {

/// Noise density f of a centered, even ID model: closed forms for the pure
/// Gaussian and pure Cauchy models, otherwise a refined Fourier-inverted grid
/// (twice the reference span, half the spacing) with its fitted power tail.
class ModelDensity {
public:
    ModelDensity(const LevyTriplet& model, const Grid1D& reference_grid);

    double pdf(double x) const;
    /// P(X > x); exact (erfc / arctan) for closed-form models, cumulative
    /// trapezoid plus tail mass otherwise.
    double survival(double x) const;
    bool exact() const { return kind_ != Kind::Gridded; }
    std::optional<TailModel> tail() const;
    /// Absolute uncertainty of mass accounting through the tail model
    /// (0 for closed-form noise).
    double mass_uncertainty() const;

private:
    enum class Kind { Gaussian, Cauchy, Gridded };
    Kind kind_;
    double variance_ = 0.0;  // Gaussian
    double scale_ = 0.0;     // Cauchy
    GriddedFunction density_;
    std::vector<double> cumulative_;  // running trapezoid of density_ from the left
};

}  // namespace idregret
