#include "idregret/prior.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "idregret/quad.hpp"

namespace idregret {

namespace {

// int_R (r0^2 + t^2)^{-beta/2} dt = r0^{1-beta} sqrt(pi) G((beta-1)/2) / G(beta/2)
double power_law_norm(double beta, double r0) {
    return std::pow(r0, 1.0 - beta) * std::sqrt(std::numbers::pi) *
           std::exp(std::lgamma(0.5 * (beta - 1.0)) - std::lgamma(0.5 * beta));
}

}  // namespace

PriorSpec PriorSpec::uniform() { return PriorSpec{}; }

PriorSpec PriorSpec::gaussian_proper(double sigma2) {
    if (!(sigma2 > 0.0)) throw ConfigError("GaussianProper prior needs sigma2 > 0");
    PriorSpec p;
    p.kind = PriorKind::GaussianProper;
    p.sigma2 = sigma2;
    return p;
}

PriorSpec PriorSpec::power_law(double beta, double r0) {
    if (!(beta > 0.0)) throw ConfigError("PowerLaw prior needs beta > 0");
    if (!(r0 > 0.0)) throw ConfigError("PowerLaw prior needs r0 > 0");
    PriorSpec p;
    p.kind = PriorKind::PowerLaw;
    p.beta = beta;
    p.r0 = r0;
    return p;
}

PriorSpec PriorSpec::point_mass(double theta0) {
    PriorSpec p;
    p.kind = PriorKind::PointMass;
    p.theta0 = theta0;
    return p;
}

PriorSpec PriorSpec::student_like_proper(double beta, double r0) {
    if (!(beta > 1.0)) throw ConfigError("StudentLikeProper prior needs beta > d = 1");
    PriorSpec p;
    p.kind = PriorKind::StudentLikeProper;
    p.beta = beta;
    p.r0 = r0;
    return p;
}

bool PriorSpec::proper(int d) const {
    switch (kind) {
        case PriorKind::Uniform: return false;
        case PriorKind::GaussianProper: return true;
        case PriorKind::PowerLaw: return beta > static_cast<double>(d);
        case PriorKind::PointMass: return true;
        case PriorKind::StudentLikeProper: return true;
    }
    return false;
}

double PriorSpec::density(double theta) const {
    switch (kind) {
        case PriorKind::Uniform:
            return 1.0;
        case PriorKind::GaussianProper:
            return std::exp(-0.5 * theta * theta / sigma2) /
                   std::sqrt(2.0 * std::numbers::pi * sigma2);
        case PriorKind::PowerLaw: {
            const double core = std::pow(r0 * r0 + theta * theta, -0.5 * beta);
            return proper() ? core / power_law_norm(beta, r0) : core;
        }
        case PriorKind::StudentLikeProper:
            return std::pow(r0 * r0 + theta * theta, -0.5 * beta) / power_law_norm(beta, r0);
        case PriorKind::PointMass:
            throw ConfigError("PointMass prior has no density");
    }
    return 0.0;
}

std::optional<double> PriorSpec::power_tail_exponent() const {
    switch (kind) {
        case PriorKind::Uniform: return 0.0;
        case PriorKind::PowerLaw:
        case PriorKind::StudentLikeProper: return beta;
        default: return std::nullopt;
    }
}

double PriorSpec::mass_outside(double lo, double hi) const {
    switch (kind) {
        case PriorKind::Uniform:
            return std::numeric_limits<double>::infinity();
        case PriorKind::GaussianProper: {
            const double s = std::sqrt(sigma2);
            return 0.5 * std::erfc(hi / (s * std::numbers::sqrt2)) +
                   0.5 * std::erfc(-lo / (s * std::numbers::sqrt2));
        }
        case PriorKind::PowerLaw:
        case PriorKind::StudentLikeProper: {
            if (!proper()) return std::numeric_limits<double>::infinity();
            // substitute t = 1/u to compress the half line; near u = 0 the
            // raw form is 0 * inf, so switch to the series u^{beta-2} / Z
            const double inv_norm = density(0.0) * std::pow(r0, beta);
            auto tail = [&](double from) {
                return quad::integrate_singular(
                    [&](double u) {
                        if (u < 1e-8)
                            return inv_norm * std::pow(u, beta - 2.0);
                        return density(1.0 / u) / (u * u);
                    },
                    0.0, 1.0 / from, 1e-12);
            };
            return tail(hi) + tail(-lo);
        }
        case PriorKind::PointMass:
            return (theta0 < lo || theta0 > hi) ? 1.0 : 0.0;
    }
    return 0.0;
}

std::string PriorSpec::name() const {
    std::ostringstream os;
    switch (kind) {
        case PriorKind::Uniform: os << "uniform"; break;
        case PriorKind::GaussianProper: os << "gaussian(" << sigma2 << ")"; break;
        case PriorKind::PowerLaw: os << "powerlaw(" << beta << "," << r0 << ")"; break;
        case PriorKind::PointMass: os << "pointmass(" << theta0 << ")"; break;
        case PriorKind::StudentLikeProper: os << "student(" << beta << "," << r0 << ")"; break;
    }
    return os.str();
}

}  // namespace idregret
