#include <doctest.h>

#include <cmath>

#include "idregret/bayes.hpp"
#include "oracles.hpp"

using namespace idregret;

TEST_CASE("benchmark kernel: Gaussian rows are N(x, 2v)") {
    const double v = 1.0;
    const Grid1D grid(-40.0, 40.0, 2048);
    const PredictiveKernel k = benchmark_predictive(LevyTriplet::gaussian(v), grid);
    REQUIRE(k.is_translation());
    for (std::size_t i : {std::size_t{512}, std::size_t{1024}, std::size_t{1500}}) {
        const GriddedFunction row = k.row_function(i);
        const double x = grid.point(i);
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j)
            worst = std::max(worst,
                             std::abs(row.values[j] - oracle::normal_pdf(grid.point(j), x, 2.0 * v)));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("benchmark kernel: symmetric in (x, y) exactly") {
    const Grid1D grid(-100.0, 100.0, 1024);
    const PredictiveKernel k = benchmark_predictive(LevyTriplet::cauchy(1.0), grid);
    for (std::size_t i : {std::size_t{100}, std::size_t{400}, std::size_t{700}}) {
        for (std::size_t j : {std::size_t{50}, std::size_t{512}, std::size_t{900}}) {
            CHECK(k.value(i, j) == k.value(j, i));
        }
    }
}

TEST_CASE("benchmark kernel: Cauchy scale doubles") {
    const Grid1D grid(-400.0, 400.0, 4096);
    const PredictiveKernel k = benchmark_predictive(LevyTriplet::cauchy(1.0), grid);
    const GriddedFunction row = k.row_function(grid.n / 2);  // x = 0
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n; ++j)
        worst = std::max(worst, std::abs(row.values[j] - oracle::cauchy_pdf(grid.point(j), 2.0)));
    CHECK(worst < 1e-6);
}

TEST_CASE("marginal density: uniform prior gives the unit marginal") {
    const Grid1D grid(-100.0, 100.0, 1024);
    const MarginalDensity m = marginal_density(LevyTriplet::cauchy(1.0), PriorSpec::uniform(), grid);
    CHECK(!m.proper);
    for (double v : m.density.values) CHECK(v == 1.0);
}

TEST_CASE("marginal density: conjugate Gaussian closed form") {
    const double v = 1.0, s2 = 2.0;
    const Grid1D grid(-40.0, 40.0, 2048);
    const MarginalDensity m =
        marginal_density(LevyTriplet::gaussian(v), PriorSpec::gaussian_proper(s2), grid);
    CHECK(m.proper);
    CHECK(m.mass_estimate == doctest::Approx(1.0).epsilon(1e-9));
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        worst = std::max(worst,
                         std::abs(m.density.values[i] - oracle::normal_pdf(grid.point(i), 0.0, v + s2)));
    CHECK(worst < 1e-9);
}

TEST_CASE("marginal density: Cauchy x PowerLaw(1,1) has a unit log-log tail slope") {
    const Grid1D grid(-400.0, 400.0, 4096);
    const MarginalDensity m =
        marginal_density(LevyTriplet::cauchy(1.0), PriorSpec::power_law(1.0, 1.0), grid);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.point(i);
        if (x >= 40.0 && x <= 380.0) {
            xs.push_back(x);
            ys.push_back(m.density.values[i]);
        }
    }
    const LogLogFit fit = fit_power_tail(xs, ys);
    CHECK(std::abs(fit.slope_exponent - 1.0) < 0.1);
    CHECK(m.density.tail.has_value());
    CHECK(m.density.tail->exponent == doctest::Approx(1.0));
}

TEST_CASE("marginal density: proper power-law prior passes the mass audit") {
    const Grid1D grid(-400.0, 400.0, 2048);
    const MarginalDensity m =
        marginal_density(LevyTriplet::cauchy(1.0), PriorSpec::power_law(2.0, 1.0), grid);
    CHECK(m.proper);
    CHECK(std::abs(m.mass_estimate - 1.0) < 1e-6);
}

TEST_CASE("marginal positivity across the prior catalog") {
    const Grid1D grid(-200.0, 200.0, 2048);
    for (const PriorSpec& prior :
         {PriorSpec::uniform(), PriorSpec::gaussian_proper(1.0), PriorSpec::power_law(1.0, 1.0),
          PriorSpec::power_law(2.0, 1.0), PriorSpec::student_like_proper(3.0)}) {
        const MarginalDensity m = marginal_density(LevyTriplet::cauchy(1.0), prior, grid);
        double lowest = 1e300;
        for (double v : m.density.values) lowest = std::min(lowest, v);
        CHECK(lowest > 0.0);
    }
}

TEST_CASE("bayes predictive: uniform prior returns the translation benchmark") {
    const Grid1D grid(-40.0, 40.0, 512);
    const LevyTriplet model = LevyTriplet::gaussian(1.0);
    const PredictiveKernel k = bayes_predictive(model, PriorSpec::uniform(), grid);
    const PredictiveKernel bench = benchmark_predictive(model, grid);
    REQUIRE(k.is_translation());
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; i += 37)
        for (std::size_t j = 0; j < grid.n; ++j)
            worst = std::max(worst, std::abs(k.value(i, j) - bench.value(i, j)));
    CHECK(worst < 1e-10);
}

TEST_CASE("bayes predictive: conjugate Gaussian posterior-predictive rows") {
    const double v = 1.0, s2 = 1.0;
    const Grid1D grid(-40.0, 40.0, 2048);
    const PredictiveKernel k =
        bayes_predictive(LevyTriplet::gaussian(v), PriorSpec::gaussian_proper(s2), grid);
    for (std::size_t i : {std::size_t{824}, std::size_t{1024}, std::size_t{1224}}) {
        const double x = grid.point(i);
        const double mean = s2 * x / (v + s2);
        const double var = v + v * s2 / (v + s2);
        const GriddedFunction row = k.row_function(i);
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j)
            worst = std::max(worst,
                             std::abs(row.values[j] - oracle::normal_pdf(grid.point(j), mean, var)));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("bayes predictive: point-mass prior rows do not depend on x") {
    const Grid1D grid(-40.0, 40.0, 512);
    const LevyTriplet model = LevyTriplet::gaussian(1.0);
    const PredictiveKernel k = bayes_predictive(model, PriorSpec::point_mass(0.0), grid);
    for (std::size_t j = 0; j < grid.n; j += 17) {
        const double expected = oracle::normal_pdf(grid.point(j), 0.0, 1.0);
        CHECK(k.value(100, j) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(k.value(100, j) == k.value(400, j));
    }
}

TEST_CASE("kernel rows carry unit mass after the tail deficit") {
    const Grid1D grid(-200.0, 200.0, 1024);
    SUBCASE("gridded rows, Cauchy x PowerLaw") {
        const PredictiveKernel k =
            bayes_predictive(LevyTriplet::cauchy(1.0), PriorSpec::power_law(1.0, 1.0), grid);
        // interior rows; at the window edge the trapezoid boundary term
        // h^2 f'(U - x)/12 dominates the unit-mass bookkeeping
        for (std::size_t i = grid.n / 8; i <= 7 * grid.n / 8; i += 128) {
            const GriddedFunction row = k.row_function(i);
            const double mass = row.trapezoid() + k.row_tail_deficit(i);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
            for (double rv : row.values) CHECK(rv >= 0.0);
        }
    }
    SUBCASE("translation rows, Cauchy benchmark") {
        const PredictiveKernel k = benchmark_predictive(LevyTriplet::cauchy(1.0), grid);
        for (std::size_t i = grid.n / 8; i <= 7 * grid.n / 8; i += 128) {
            const GriddedFunction row = k.row_function(i);
            const double mass = row.trapezoid() + k.row_tail_deficit(i);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("detailed balance residuals") {
    SUBCASE("Gaussian model, Gaussian prior") {
        const Grid1D grid(-40.0, 40.0, 1024);
        const double r = detailed_balance_residual(LevyTriplet::gaussian(1.0),
                                                   PriorSpec::gaussian_proper(1.0), grid);
        CHECK(r < 1e-8);
    }
    SUBCASE("uniform prior") {
        const Grid1D grid(-100.0, 100.0, 1024);
        const double r =
            detailed_balance_residual(LevyTriplet::cauchy(1.0), PriorSpec::uniform(), grid);
        CHECK(r < 1e-12);
    }
    SUBCASE("Cauchy model, PowerLaw(1,1) prior") {
        const Grid1D grid(-200.0, 200.0, 1024);
        const double r = detailed_balance_residual(LevyTriplet::cauchy(1.0),
                                                   PriorSpec::power_law(1.0, 1.0), grid);
        CHECK(r < 1e-6);
    }
    SUBCASE("residual stays first order under refinement") {
        for (std::size_t n : {std::size_t{512}, std::size_t{1024}}) {
            const Grid1D grid(-200.0, 200.0, n);
            const double r = detailed_balance_residual(LevyTriplet::cauchy(1.0),
                                                       PriorSpec::power_law(1.0, 1.0), grid);
            CHECK(r <= 1e-4 * grid.spacing());
        }
    }
}

TEST_CASE("invariance residuals") {
    SUBCASE("Gaussian-Gaussian") {
        const Grid1D grid(-40.0, 40.0, 1024);
        CHECK(invariance_residual(LevyTriplet::gaussian(1.0), PriorSpec::gaussian_proper(1.0),
                                  grid) < 1e-6);
    }
    SUBCASE("uniform prior, Cauchy benchmark") {
        const Grid1D grid(-100.0, 100.0, 1024);
        CHECK(invariance_residual(LevyTriplet::cauchy(1.0), PriorSpec::uniform(), grid) < 1e-6);
    }
    SUBCASE("point-mass prior") {
        const Grid1D grid(-40.0, 40.0, 512);
        CHECK(invariance_residual(LevyTriplet::gaussian(1.0), PriorSpec::point_mass(0.0),
                                  grid) < 1e-6);
    }
    SUBCASE("bounded by the balance residual row-sum argument") {
        const Grid1D grid(-40.0, 40.0, 512);
        const BayesSystem sys =
            build_bayes_system(LevyTriplet::gaussian(1.0), PriorSpec::gaussian_proper(2.0), grid);
        const double balance = detailed_balance_residual(sys);
        const double inv = invariance_residual(sys);
        const double slack = 2.0 * balance * static_cast<double>(grid.n) * grid.spacing() + 1e-9;
        CHECK(inv <= slack);
    }
}
