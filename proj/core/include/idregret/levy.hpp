#pragma once

#include <optional>
#include <string>

#include "idregret/errors.hpp"

namespace idregret {

enum class LevyFamily {
    None,
    Cauchy,               // two-sided, nu(dx) = (c/pi) |x|^{-2} dx; c is the noise scale
    SymmetricStable,      // two-sided, nu(dx) = c |x|^{-(1+alpha)} dx
    AsymmetricStable,     // (c1 1_{x>0} + c2 1_{x<0}) |x|^{-(1+alpha)} dx
    ExponentialJump,      // x^{-1} e^{-lambda x} 1_{x>0}; symmetrized -> Laplace
    GammaJump,            // k x^{-1} e^{-x/c} 1_{x>0}; symmetrized -> Variance-Gamma
    InverseGaussianJump,  // c x^{-3/2} e^{-lambda x} 1_{x>0}; symmetrized -> NIG-type
    GumbelJump,           // x^{-1} (1-e^{-x})^{-1} e^{-x} 1_{x>0}; symmetrized -> Logistic
    PointMass,            // intensity * delta_atom; symmetrized -> Skellam generator
};

std::string to_string(LevyFamily family);

/// Parametric Levy measure. One-sided families carry `mirrored == true` once
/// the measure has been evenized, i.e. the density is nu0(|x|) on both sides.
struct LevyMeasureSpec {
    LevyFamily family = LevyFamily::None;
    double alpha = 0.0;      // stable tail exponent, in (0, 2)
    double c = 0.0;          // intensity / scale
    double c1 = 0.0;         // asymmetric stable, positive side
    double c2 = 0.0;         // asymmetric stable, negative side
    double lambda = 0.0;     // exponential rate
    double k = 0.0;          // Gamma shape intensity
    double intensity = 0.0;  // PointMass jump rate
    double atom = 0.0;       // PointMass location
    bool mirrored = false;

    static LevyMeasureSpec none();
    static LevyMeasureSpec cauchy(double scale);
    static LevyMeasureSpec symmetric_stable(double alpha, double c);
    static LevyMeasureSpec asymmetric_stable(double alpha, double c1, double c2);
    static LevyMeasureSpec exponential_jump(double lambda);
    static LevyMeasureSpec gamma_jump(double k, double c);
    static LevyMeasureSpec inverse_gaussian_jump(double c, double lambda);
    static LevyMeasureSpec gumbel_jump();
    static LevyMeasureSpec point_mass(double intensity, double atom);

    bool trivial() const { return family == LevyFamily::None; }
    /// Even as a measure on R.
    bool even() const;
    void validate() const;

    /// Density of the (two-sided) measure at x != 0; throws for PointMass and
    /// for one-sided families that have not been mirrored.
    double density(double x) const;
    /// int min(1, x^2) nu(dx) by quadrature (continuous families only).
    double min1x2_integral() const;
};

/// Levy-Khintchine triplet (A, nu, gamma) in dimension d. Per-dimension
/// scalar Gaussian variance; the numeric pipeline is d = 1.
struct LevyTriplet {
    double gaussian_variance = 0.0;
    LevyMeasureSpec measure;
    double center = 0.0;
    int dimension = 1;
    bool symmetrized = false;

    void validate() const;
    bool symmetric_form() const { return center == 0.0 && measure.even(); }

    static LevyTriplet gaussian(double v, int d = 1);
    static LevyTriplet cauchy(double scale, int d = 1);
    static LevyTriplet stable(double alpha, double c, int d = 1);
    static LevyTriplet asymmetric_stable(double alpha, double c1, double c2);
    static LevyTriplet poisson(double rate);
};

/// (A, nu, gamma) -> (2A, nu~, 0) with nu~(dx) = nu(dx) + nu(-dx). Defined on
/// model triplets only; re-application is rejected.
LevyTriplet symmetrize(const LevyTriplet& triplet);

/// psi(xi) = (A/2) xi^2 + int (1 - cos(xi x)) nu(dx) for a centered triplet
/// with an even measure. With this convention the time-t law has Fourier
/// transform exp(-t psi), so the symmetrized Gaussian ID(2v, 0, 0) gives
/// psi(xi) = v xi^2 and the time-1 law N(0, 2v).
class CharacteristicExponent {
public:
    explicit CharacteristicExponent(const LevyTriplet& triplet);

    double operator()(double xi) const;

    const LevyTriplet& triplet() const { return triplet_; }
    /// Stable tail data of the time-t density, q_t(x) ~ coeff * |x|^{-(1+alpha)},
    /// when the jump part is stable-like; nullopt otherwise.
    struct StableTail {
        double alpha = 0.0;
        double density_coeff = 0.0;  // coefficient at t = 1
        double psi_coeff = 0.0;      // kappa_c in psi(xi) = kappa_c |xi|^alpha
    };
    std::optional<StableTail> stable_tail() const;

private:
    LevyTriplet triplet_;
    double stable_kappa_ = 0.0;  // cached kappa0(alpha) for stable families
};

/// kappa0(alpha) = int_R (1 - cos u)|u|^{-(1+alpha)} du, adaptive quadrature,
/// cached per alpha (write-once).
double stable_kappa(double alpha);

/// Jump part of psi by direct quadrature of the Levy integral; reference
/// route for the closed forms (continuous even measures only).
double jump_exponent_by_quadrature(const LevyMeasureSpec& measure, double xi);

}  // namespace idregret
