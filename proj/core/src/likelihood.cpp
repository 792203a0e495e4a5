#include "idregret/likelihood.hpp"

#include <cmath>
#include <numbers>

#include "idregret/semigroup.hpp"

namespace idregret {

ModelDensity::ModelDensity(const LevyTriplet& model, const Grid1D& reference_grid) {
    model.validate();
    if (model.center != 0.0 || !model.measure.even())
        throw ConfigError("ModelDensity: model must be centered with an even Levy measure");

    if (model.measure.trivial()) {
        kind_ = Kind::Gaussian;
        variance_ = model.gaussian_variance;
        return;
    }
    if (model.measure.family == LevyFamily::Cauchy && model.gaussian_variance == 0.0) {
        kind_ = Kind::Cauchy;
        scale_ = model.measure.c;
        return;
    }

    kind_ = Kind::Gridded;
    const Grid1D wide(2.0 * reference_grid.lower, 2.0 * reference_grid.upper,
                      std::min<std::size_t>(4 * reference_grid.n, 1u << 17));
    // heavy tails may put sizable mass beyond any desk-scale window; accept
    // the truncation and expose the declared uncertainty instead
    density_ = transition_density(model, 1.0, wide, nullptr, 0.05);
    cumulative_.resize(density_.size());
    const double h = wide.spacing();
    double acc = 0.0;
    cumulative_[0] = 0.0;
    for (std::size_t i = 1; i < density_.size(); ++i) {
        acc += 0.5 * (density_.values[i - 1] + density_.values[i]) * h;
        cumulative_[i] = acc;
    }
}

double ModelDensity::pdf(double x) const {
    switch (kind_) {
        case Kind::Gaussian:
            return std::exp(-0.5 * x * x / variance_) /
                   std::sqrt(2.0 * std::numbers::pi * variance_);
        case Kind::Cauchy:
            return scale_ / (std::numbers::pi * (scale_ * scale_ + x * x));
        case Kind::Gridded:
            return density_.eval(x);
    }
    return 0.0;
}

double ModelDensity::survival(double x) const {
    switch (kind_) {
        case Kind::Gaussian:
            return 0.5 * std::erfc(x / std::sqrt(2.0 * variance_));
        case Kind::Cauchy:
            return 0.5 - std::atan(x / scale_) / std::numbers::pi;
        case Kind::Gridded: {
            const Grid1D& g = density_.grid;
            const double total =
                cumulative_.back() + (density_.tail ? density_.tail->mass_beyond(g.upper) : 0.0);
            if (x <= g.lower)
                return total + (density_.tail ? density_.tail->mass_beyond(-g.lower) -
                                                    density_.tail->mass_beyond(-x)
                                              : 0.0);
            if (x >= g.point(g.n - 1))
                return density_.tail ? density_.tail->mass_beyond(std::max(x, g.upper)) : 0.0;
            const double t = (x - g.lower) / g.spacing();
            const std::size_t i = static_cast<std::size_t>(t);
            const double w = t - static_cast<double>(i);
            const double cum = (1.0 - w) * cumulative_[i] + w * cumulative_[i + 1];
            return total - cum;
        }
    }
    return 0.0;
}

double ModelDensity::mass_uncertainty() const {
    return kind_ == Kind::Gridded ? density_.tail_uncertainty : 0.0;
}

std::optional<TailModel> ModelDensity::tail() const {
    switch (kind_) {
        case Kind::Gaussian:
            return std::nullopt;
        case Kind::Cauchy:
            return TailModel{2.0, scale_ / std::numbers::pi};
        case Kind::Gridded:
            return density_.tail;
    }
    return std::nullopt;
}

}  // namespace idregret
