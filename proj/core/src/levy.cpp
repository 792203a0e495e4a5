#include "idregret/levy.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

#include "idregret/quad.hpp"

namespace idregret {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw ConfigError(std::string("LevyMeasureSpec: ") + what + " must be > 0");
}
}  // namespace

std::string to_string(LevyFamily family) {
    switch (family) {
        case LevyFamily::None: return "none";
        case LevyFamily::Cauchy: return "cauchy";
        case LevyFamily::SymmetricStable: return "stable";
        case LevyFamily::AsymmetricStable: return "asymmetric-stable";
        case LevyFamily::ExponentialJump: return "exponential";
        case LevyFamily::GammaJump: return "gamma";
        case LevyFamily::InverseGaussianJump: return "inverse-gaussian";
        case LevyFamily::GumbelJump: return "gumbel";
        case LevyFamily::PointMass: return "point-mass";
    }
    return "unknown";
}

LevyMeasureSpec LevyMeasureSpec::none() { return {}; }

LevyMeasureSpec LevyMeasureSpec::cauchy(double scale) {
    LevyMeasureSpec s;
    s.family = LevyFamily::Cauchy;
    s.c = scale;
    s.mirrored = true;  // inherently even
    s.validate();
    return s;
}

LevyMeasureSpec LevyMeasureSpec::symmetric_stable(double alpha, double c) {
    LevyMeasureSpec s;
    s.family = LevyFamily::SymmetricStable;
    s.alpha = alpha;
    s.c = c;
    s.mirrored = true;
    s.validate();
    return s;
}

LevyMeasureSpec LevyMeasureSpec::asymmetric_stable(double alpha, double c1, double c2) {
    LevyMeasureSpec s;
    s.family = LevyFamily::AsymmetricStable;
    s.alpha = alpha;
    s.c1 = c1;
    s.c2 = c2;
    s.validate();
    return s;
}

LevyMeasureSpec LevyMeasureSpec::exponential_jump(double lambda) {
    LevyMeasureSpec s;
    s.family = LevyFamily::ExponentialJump;
    s.lambda = lambda;
    s.validate();
    return s;
}

LevyMeasureSpec LevyMeasureSpec::gamma_jump(double k, double c) {
    LevyMeasureSpec s;
    s.family = LevyFamily::GammaJump;
    s.k = k;
    s.c = c;
    s.validate();
    return s;
}

LevyMeasureSpec LevyMeasureSpec::inverse_gaussian_jump(double c, double lambda) {
    LevyMeasureSpec s;
    s.family = LevyFamily::InverseGaussianJump;
    s.c = c;
    s.lambda = lambda;
    s.validate();
    return s;
}

LevyMeasureSpec LevyMeasureSpec::gumbel_jump() {
    LevyMeasureSpec s;
    s.family = LevyFamily::GumbelJump;
    return s;
}

LevyMeasureSpec LevyMeasureSpec::point_mass(double intensity, double atom) {
    LevyMeasureSpec s;
    s.family = LevyFamily::PointMass;
    s.intensity = intensity;
    s.atom = atom;
    s.validate();
    return s;
}

bool LevyMeasureSpec::even() const {
    switch (family) {
        case LevyFamily::None:
        case LevyFamily::Cauchy:
        case LevyFamily::SymmetricStable:
            return true;
        case LevyFamily::AsymmetricStable:
            return c1 == c2;
        default:
            return mirrored;
    }
}

void LevyMeasureSpec::validate() const {
    switch (family) {
        case LevyFamily::None:
            return;
        case LevyFamily::Cauchy:
            require_positive(c, "Cauchy scale");
            return;
        case LevyFamily::SymmetricStable:
            if (!(alpha > 0.0 && alpha < 2.0))
                throw ConfigError("stable exponent alpha must lie in (0, 2)");
            require_positive(c, "stable intensity");
            return;
        case LevyFamily::AsymmetricStable:
            if (!(alpha > 0.0 && alpha < 2.0))
                throw ConfigError("stable exponent alpha must lie in (0, 2)");
            require_positive(c1 + c2, "total stable intensity");
            if (c1 < 0.0 || c2 < 0.0) throw ConfigError("stable intensities must be >= 0");
            return;
        case LevyFamily::ExponentialJump:
            require_positive(lambda, "exponential rate");
            return;
        case LevyFamily::GammaJump:
            require_positive(k, "gamma intensity");
            require_positive(c, "gamma scale");
            return;
        case LevyFamily::InverseGaussianJump:
            require_positive(c, "IG intensity");
            require_positive(lambda, "IG rate");
            return;
        case LevyFamily::GumbelJump:
            return;
        case LevyFamily::PointMass:
            require_positive(intensity, "point-mass intensity");
            if (atom == 0.0) throw ConfigError("point-mass atom must be nonzero");
            return;
    }
}

double LevyMeasureSpec::density(double x) const {
    const double ax = std::abs(x);
    if (ax == 0.0) throw ConfigError("Levy density requested at the origin");
    switch (family) {
        case LevyFamily::None:
            return 0.0;
        case LevyFamily::Cauchy:
            return (c / kPi) / (ax * ax);
        case LevyFamily::SymmetricStable:
            return c * std::pow(ax, -(1.0 + alpha));
        case LevyFamily::AsymmetricStable:
            return (x > 0.0 ? c1 : c2) * std::pow(ax, -(1.0 + alpha));
        case LevyFamily::ExponentialJump:
            if (!mirrored && x < 0.0) return 0.0;
            return std::exp(-lambda * ax) / ax;
        case LevyFamily::GammaJump:
            if (!mirrored && x < 0.0) return 0.0;
            return k * std::exp(-ax / c) / ax;
        case LevyFamily::InverseGaussianJump:
            if (!mirrored && x < 0.0) return 0.0;
            return c * std::pow(ax, -1.5) * std::exp(-lambda * ax);
        case LevyFamily::GumbelJump:
            if (!mirrored && x < 0.0) return 0.0;
            return std::exp(-ax) / (ax * -std::expm1(-ax));
        case LevyFamily::PointMass:
            throw ConfigError("point-mass measure has no density");
    }
    return 0.0;
}

double LevyMeasureSpec::min1x2_integral() const {
    if (family == LevyFamily::None) return 0.0;
    if (family == LevyFamily::PointMass) {
        const double w = std::min(1.0, atom * atom) * intensity;
        return mirrored ? 2.0 * w : w;
    }
    auto one_side = [&](bool positive) {
        const double sgn = positive ? 1.0 : -1.0;
        const double inner = quad::integrate_singular(
            [&](double x) { return x < 1e-100 ? 0.0 : x * x * density(sgn * x); }, 0.0, 1.0,
            1e-10);
        const double outer = quad::integrate(
            [&](double x) { return density(sgn * x); }, 1.0, 1e6, 1e-10);
        return inner + outer;
    };
    switch (family) {
        case LevyFamily::Cauchy:
        case LevyFamily::SymmetricStable:
        case LevyFamily::AsymmetricStable:
            return one_side(true) + one_side(false);
        default:
            return mirrored ? 2.0 * one_side(true) : one_side(true);
    }
}

void LevyTriplet::validate() const {
    if (gaussian_variance < 0.0) throw ConfigError("gaussian variance must be >= 0");
    if (dimension < 1) throw ConfigError("dimension must be >= 1");
    measure.validate();
    if (gaussian_variance == 0.0 && measure.trivial())
        throw ConfigError("triplet must carry a Gaussian part or a nontrivial Levy measure");
}

LevyTriplet LevyTriplet::gaussian(double v, int d) {
    LevyTriplet t;
    t.gaussian_variance = v;
    t.dimension = d;
    t.validate();
    return t;
}

LevyTriplet LevyTriplet::cauchy(double scale, int d) {
    LevyTriplet t;
    t.measure = LevyMeasureSpec::cauchy(scale);
    t.dimension = d;
    t.validate();
    return t;
}

LevyTriplet LevyTriplet::stable(double alpha, double c, int d) {
    LevyTriplet t;
    t.measure = LevyMeasureSpec::symmetric_stable(alpha, c);
    t.dimension = d;
    t.validate();
    return t;
}

LevyTriplet LevyTriplet::asymmetric_stable(double alpha, double c1, double c2) {
    LevyTriplet t;
    t.measure = LevyMeasureSpec::asymmetric_stable(alpha, c1, c2);
    t.validate();
    return t;
}

LevyTriplet LevyTriplet::poisson(double rate) {
    LevyTriplet t;
    t.measure = LevyMeasureSpec::point_mass(rate, 1.0);
    t.validate();
    return t;
}

LevyTriplet symmetrize(const LevyTriplet& triplet) {
    triplet.validate();
    if (triplet.symmetrized)
        throw ConfigError("symmetrize: triplet is already symmetrized; applying the map "
                          "twice would double-scale the Gaussian part");
    LevyTriplet out = triplet;
    out.gaussian_variance = 2.0 * triplet.gaussian_variance;
    out.center = 0.0;
    out.symmetrized = true;

    LevyMeasureSpec& m = out.measure;
    switch (m.family) {
        case LevyFamily::None:
            break;
        case LevyFamily::Cauchy:
            m.c *= 2.0;
            break;
        case LevyFamily::SymmetricStable:
            m.c *= 2.0;
            break;
        case LevyFamily::AsymmetricStable:
            m = LevyMeasureSpec::symmetric_stable(m.alpha, m.c1 + m.c2);
            break;
        case LevyFamily::PointMass:
            m.atom = std::abs(m.atom);
            m.mirrored = true;
            break;
        default:
            // one-sided density nu0 becomes nu0(|x|) on both sides
            m.mirrored = true;
            break;
    }
    return out;
}

double stable_kappa(double alpha) {
    static std::mutex mutex;
    static std::map<double, double> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(alpha);
    if (it == cache.end()) it = cache.emplace(alpha, quad::levy_cos_integral(alpha)).first;
    return it->second;
}

CharacteristicExponent::CharacteristicExponent(const LevyTriplet& triplet) : triplet_(triplet) {
    triplet_.validate();
    if (triplet_.center != 0.0)
        throw ConfigError("CharacteristicExponent: triplet must be centered");
    if (!triplet_.measure.even())
        throw ConfigError("CharacteristicExponent: Levy measure must be even");
    if (triplet_.measure.family == LevyFamily::SymmetricStable)
        stable_kappa_ = stable_kappa(triplet_.measure.alpha);
}

double CharacteristicExponent::operator()(double xi) const {
    const double axi = std::abs(xi);
    double psi = 0.5 * triplet_.gaussian_variance * xi * xi;
    const LevyMeasureSpec& m = triplet_.measure;
    switch (m.family) {
        case LevyFamily::None:
            break;
        case LevyFamily::Cauchy:
            psi += m.c * axi;
            break;
        case LevyFamily::SymmetricStable:
            psi += m.c * stable_kappa_ * std::pow(axi, m.alpha);
            break;
        case LevyFamily::ExponentialJump:
            psi += std::log1p(xi * xi / (m.lambda * m.lambda));
            break;
        case LevyFamily::GammaJump:
            psi += m.k * std::log1p(m.c * m.c * xi * xi);
            break;
        case LevyFamily::InverseGaussianJump: {
            const std::complex<double> root = std::sqrt(std::complex<double>(m.lambda, xi));
            psi += 4.0 * m.c * std::sqrt(kPi) * (root.real() - std::sqrt(m.lambda));
            break;
        }
        case LevyFamily::GumbelJump: {
            const double y = kPi * axi;
            if (y < 1e-4) {
                psi += y * y / 6.0 - y * y * y * y / 180.0;
            } else {
                psi += std::log(std::sinh(y) / y);
            }
            break;
        }
        case LevyFamily::PointMass:
            psi += 2.0 * m.intensity * (1.0 - std::cos(m.atom * xi));
            break;
        case LevyFamily::AsymmetricStable:
            throw ConfigError("asymmetric stable measure reaches the exponent unsymmetrized");
    }
    return psi;
}

std::optional<CharacteristicExponent::StableTail> CharacteristicExponent::stable_tail() const {
    const LevyMeasureSpec& m = triplet_.measure;
    switch (m.family) {
        case LevyFamily::Cauchy:
            return StableTail{1.0, m.c / kPi, m.c};
        case LevyFamily::SymmetricStable:
            return StableTail{m.alpha, m.c, m.c * stable_kappa_};
        default:
            return std::nullopt;
    }
}

double jump_exponent_by_quadrature(const LevyMeasureSpec& measure, double xi) {
    if (measure.family == LevyFamily::None) return 0.0;
    if (measure.family == LevyFamily::PointMass) {
        const double base = measure.intensity * (1.0 - std::cos(measure.atom * xi));
        return measure.mirrored ? 2.0 * base : base;
    }
    if (!measure.even())
        throw ConfigError("jump_exponent_by_quadrature: measure must be even");
    // even measure: 2 * int_0^inf (1 - cos(xi x)) nu(x) dx
    const bool heavy = measure.family == LevyFamily::Cauchy ||
                       measure.family == LevyFamily::SymmetricStable;
    const double upper = heavy ? 1e6 : 2e3;
    double value = quad::oscillatory_levy_integral(
        [&](double x) { return measure.density(x); }, xi, upper);
    if (heavy) {
        // beyond the cutoff 1 - cos averages to 1; the oscillatory remainder
        // is O(nu(upper)/xi) and negligible
        const double a = measure.family == LevyFamily::Cauchy ? 1.0 : measure.alpha;
        value += measure.density(upper) * upper / a;
    }
    return 2.0 * value;
}

}  // namespace idregret
