#include <doctest.h>

#include <cmath>

#include "idregret/levy.hpp"
#include "idregret/quad.hpp"
#include "oracles.hpp"

using namespace idregret;

TEST_CASE("symmetrize: Gaussian model doubles the variance and drops the center") {
    LevyTriplet t = LevyTriplet::gaussian(1.5);
    t.center = 0.7;
    const LevyTriplet s = symmetrize(t);
    CHECK(s.gaussian_variance == doctest::Approx(3.0));
    CHECK(s.center == 0.0);
    CHECK(s.measure.trivial());
    CHECK(s.symmetrized);
}

TEST_CASE("symmetrize: Poisson atom mirrors into the Skellam generator") {
    const LevyTriplet s = symmetrize(LevyTriplet::poisson(2.0));
    CHECK(s.measure.family == LevyFamily::PointMass);
    CHECK(s.measure.mirrored);
    CHECK(s.measure.intensity == doctest::Approx(2.0));
    CHECK(s.measure.atom == doctest::Approx(1.0));
    // psi(xi) = 2 lambda (1 - cos xi)
    const CharacteristicExponent psi(s);
    CHECK(psi(1.3) == doctest::Approx(4.0 * (1.0 - std::cos(1.3))));
}

TEST_CASE("symmetrize: asymmetric stable becomes symmetric with summed intensity") {
    const LevyTriplet s = symmetrize(LevyTriplet::asymmetric_stable(0.7, 0.4, 1.1));
    CHECK(s.measure.family == LevyFamily::SymmetricStable);
    CHECK(s.measure.alpha == doctest::Approx(0.7));
    CHECK(s.measure.c == doctest::Approx(1.5));
}

TEST_CASE("symmetrize rejects re-application") {
    const LevyTriplet s = symmetrize(LevyTriplet::gaussian(1.0));
    CHECK_THROWS_AS(symmetrize(s), ConfigError);
}

TEST_CASE("characteristic exponent basics") {
    SUBCASE("psi(0) = 0 for every family") {
        for (const LevyTriplet& model :
             {LevyTriplet::gaussian(2.0), LevyTriplet::cauchy(1.0),
              LevyTriplet::stable(1.5, 0.8), LevyTriplet::poisson(1.0)}) {
            const CharacteristicExponent psi(symmetrize(model));
            CHECK(psi(0.0) == 0.0);
        }
    }
    SUBCASE("sym Gaussian ID(2,0,0): psi(1) = 1") {
        const CharacteristicExponent psi(symmetrize(LevyTriplet::gaussian(1.0)));
        CHECK(psi(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("even, nonnegative, zero at the origin, across families and frequencies") {
        for (const LevyTriplet& model :
             {LevyTriplet::gaussian(0.5), LevyTriplet::cauchy(2.0),
              LevyTriplet::stable(0.5, 1.0), LevyTriplet::stable(1.5, 1.0),
              symmetrize(LevyTriplet{0.0, LevyMeasureSpec::exponential_jump(1.0), 0.0, 1}),
              symmetrize(LevyTriplet{0.0, LevyMeasureSpec::gamma_jump(1.0, 0.7), 0.0, 1}),
              symmetrize(
                 LevyTriplet{0.0, LevyMeasureSpec::inverse_gaussian_jump(0.6, 1.2), 0.0, 1}),
              symmetrize(LevyTriplet{0.0, LevyMeasureSpec::gumbel_jump(), 0.0, 1})}) {
            const LevyTriplet sym = model.symmetrized || model.symmetric_form()
                                        ? model
                                        : symmetrize(model);
            const CharacteristicExponent psi(sym);
            for (int k = 1; k <= 1000; ++k) {
                const double xi = 1e-3 * static_cast<double>(k) * 40.0;
                const double a = psi(xi), b = psi(-xi);
                CHECK(a == b);
                CHECK(a >= 0.0);
            }
            CHECK(psi(0.0) == 0.0);
        }
    }
}

TEST_CASE("sym Cauchy: psi = 2c|xi| against direct quadrature of the Levy integral") {
    const double c = 1.0;
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(c));
    const CharacteristicExponent psi(sym);
    for (double xi : {0.5, 1.0, 3.0}) {
        CHECK(psi(xi) == doctest::Approx(2.0 * c * xi).epsilon(1e-12));
        const double quadrature = jump_exponent_by_quadrature(sym.measure, xi);
        CHECK(std::abs(psi(xi) - quadrature) < 1e-6);
    }
}

TEST_CASE("stable kappa agrees with the closed form") {
    for (double a : {0.3, 0.5, 1.0, 1.5, 1.9}) {
        CHECK(stable_kappa(a) ==
              doctest::Approx(oracle::stable_kappa_closed(a)).epsilon(1e-9));
    }
}

TEST_CASE("closed-form symmetrized exponents match the quadrature route") {
    // one-sided families symmetrized, then psi by formula vs Levy integral
    const std::vector<LevyMeasureSpec> specs = {
        LevyMeasureSpec::exponential_jump(1.3),
        LevyMeasureSpec::gamma_jump(0.8, 1.1),
        LevyMeasureSpec::inverse_gaussian_jump(0.5, 2.0),
        LevyMeasureSpec::gumbel_jump(),
    };
    for (const LevyMeasureSpec& spec : specs) {
        const LevyTriplet sym = symmetrize(LevyTriplet{0.0, spec, 0.0, 1});
        const CharacteristicExponent psi(sym);
        for (double xi : {0.7, 2.0}) {
            const double reference = jump_exponent_by_quadrature(sym.measure, xi);
            CHECK(psi(xi) == doctest::Approx(reference).epsilon(1e-7));
        }
    }
}

TEST_CASE("every continuous family integrates min(1, x^2)") {
    for (const LevyMeasureSpec& spec :
         {LevyMeasureSpec::cauchy(1.0), LevyMeasureSpec::symmetric_stable(0.5, 1.0),
          LevyMeasureSpec::symmetric_stable(1.8, 0.4),
          LevyMeasureSpec::exponential_jump(1.0), LevyMeasureSpec::gamma_jump(1.0, 1.0),
          LevyMeasureSpec::inverse_gaussian_jump(1.0, 1.0), LevyMeasureSpec::gumbel_jump()}) {
        const double v = spec.min1x2_integral();
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
}

TEST_CASE("invalid specifications are rejected") {
    CHECK_THROWS_AS(LevyMeasureSpec::symmetric_stable(2.0, 1.0), ConfigError);
    CHECK_THROWS_AS(LevyMeasureSpec::symmetric_stable(0.5, -1.0), ConfigError);
    CHECK_THROWS_AS(LevyTriplet::gaussian(-1.0), ConfigError);
    LevyTriplet empty;
    CHECK_THROWS_AS(empty.validate(), ConfigError);
}
