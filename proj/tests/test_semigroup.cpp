#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "idregret/fft.hpp"
#include "idregret/semigroup.hpp"
#include "oracles.hpp"

using namespace idregret;

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("fft spectrum round-trip and Gaussian pair") {
    const Grid1D grid(-40.0, 40.0, 2048);
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = oracle::normal_pdf(grid.point(i), 0.0, 1.0);
    const GriddedFunction f(grid, v);
    const auto spectrum = fft::spectrum_from_grid(f);
    // FT of N(0,1) is exp(-xi^2/2)
    for (std::size_t k : {std::size_t{1}, std::size_t{7}, std::size_t{2000}}) {
        const double xi = fft::frequency(k, grid.n, grid.spacing());
        CHECK(spectrum[k].real() == doctest::Approx(std::exp(-0.5 * xi * xi)).epsilon(1e-9));
        CHECK(std::abs(spectrum[k].imag()) < 1e-12);
    }
    const auto back = fft::grid_from_spectrum(spectrum, grid);
    CHECK(sup_diff(back, v) < 1e-14);
}

TEST_CASE("transition density: sym Gaussian is the closed-form normal") {
    const LevyTriplet sym = symmetrize(LevyTriplet::gaussian(1.5));
    const Grid1D grid(-40.0, 40.0, 2048);
    const GriddedFunction q = transition_density(sym, 1.0, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        worst = std::max(worst,
                         std::abs(q.values[i] - oracle::normal_pdf(grid.point(i), 0.0, 3.0)));
    CHECK(worst < 1e-8);
    CHECK(q.trapezoid_periodic() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transition density: sym Cauchy at t=1 is Cauchy with doubled scale") {
    const double c = 1.0;
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(c));
    const Grid1D grid(-400.0, 400.0, 16384);
    TransitionDiagnostics diag;
    const GriddedFunction q = transition_density(sym, 1.0, grid, &diag);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        worst = std::max(worst, std::abs(q.values[i] - oracle::cauchy_pdf(grid.point(i), 2.0 * c)));
    CHECK(worst < 1e-6);
    CHECK(std::abs(diag.raw_mass - 1.0) < 1e-6);
    CHECK(q.tail.has_value());
    CHECK(q.tail->exponent == doctest::Approx(2.0));
    // fitted coefficient close to the analytic 2c/pi
    CHECK(q.tail->coeff == doctest::Approx(2.0 / std::numbers::pi).epsilon(0.01));
}

TEST_CASE("transition density: mass within 1e-6 for several families") {
    const Grid1D grid(-400.0, 400.0, 8192);
    for (const LevyTriplet& model : {LevyTriplet::cauchy(1.0), LevyTriplet::stable(1.5, 1.0)}) {
        const GriddedFunction q = transition_density(symmetrize(model), 1.0, grid);
        CHECK(q.integral_with_tail() == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("transition density: narrow grid raises the mass error") {
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(1.0));
    const Grid1D grid(-4.0, 4.0, 64);
    CHECK_THROWS_AS(transition_density(sym, 1.0, grid), NumericError);
}

TEST_CASE("transition density equals its own half-time self-convolution") {
    const Grid1D grid(-200.0, 200.0, 4096);
    for (const LevyTriplet& model :
         {LevyTriplet::gaussian(1.0), LevyTriplet::cauchy(1.0), LevyTriplet::stable(1.5, 1.0)}) {
        const LevyTriplet sym = symmetrize(model);
        const GriddedFunction q1 = transition_density(sym, 1.0, grid);
        const GriddedFunction q2 = transition_density(sym, 2.0, grid);
        const std::vector<double> conv = oracle::direct_convolution(q1, q1);
        // compare on the interior half where the finite convolution window is accurate
        double worst = 0.0;
        for (std::size_t i = grid.n / 4; i < 3 * grid.n / 4; ++i)
            worst = std::max(worst, std::abs(conv[i] - q2.values[i]));
        CHECK(worst < 1e-5);
    }
}

TEST_CASE("transition density is even on symmetric grids") {
    const GriddedFunction q =
        transition_density(symmetrize(LevyTriplet::stable(1.5, 1.0)), 1.0,
                           Grid1D(-200.0, 200.0, 4096));
    CHECK(q.evenness_defect() == 0.0);
}

TEST_CASE("semigroup: constants are fixed points") {
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(1.0));
    const Grid1D grid(-100.0, 100.0, 1024);
    GriddedFunction one(grid, std::vector<double>(grid.n, 1.0), TailModel{0.0, 1.0});
    const GriddedFunction out = apply_semigroup(sym, 0.7, one);
    double worst = 0.0;
    for (std::size_t i = grid.n / 4; i < 3 * grid.n / 4; ++i)
        worst = std::max(worst, std::abs(out.values[i] - 1.0));
    CHECK(worst < 1e-6);
}

TEST_CASE("semigroup preserves positivity (seeded draws)") {
    const Grid1D grid(-60.0, 60.0, 1024);
    const CharacteristicExponent psi(symmetrize(LevyTriplet::stable(1.5, 1.0)));
    for (unsigned long long seed = 1; seed <= 25; ++seed) {
        const GriddedFunction f = oracle::random_smooth(grid, seed * 104729ull);
        const GriddedFunction tf = apply_semigroup(psi, 0.7, f);
        double lowest = 1e300;
        for (double v : tf.values) lowest = std::min(lowest, v);
        CHECK(lowest >= -1e-12);
    }
}

TEST_CASE("semigroup law T_s T_t = T_{s+t} (Gaussian)") {
    const LevyTriplet sym = symmetrize(LevyTriplet::gaussian(1.0));
    const Grid1D grid(-40.0, 40.0, 2048);
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = oracle::normal_pdf(grid.point(i), 0.0, 1.0);
    const GriddedFunction f(grid, v);
    const GriddedFunction a = apply_semigroup(sym, 0.4, apply_semigroup(sym, 0.6, f));
    const GriddedFunction b = apply_semigroup(sym, 1.0, f);
    CHECK(sup_diff(a.values, b.values) < 1e-7);
}

TEST_CASE("semigroup contracts the L2 norm (property, 100 seeded draws)") {
    const Grid1D grid(-60.0, 60.0, 1024);
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(1.0));
    const CharacteristicExponent psi(sym);
    for (unsigned long long seed = 1; seed <= 100; ++seed) {
        const GriddedFunction f = oracle::random_smooth(grid, seed * 7919ull);
        const GriddedFunction tf = apply_semigroup(psi, 0.5, f);
        CHECK(tf.l2_norm_sq() <= f.l2_norm_sq() * (1.0 + 1e-12));
    }
}

TEST_CASE("contraction holds for the square root of a normal density") {
    const Grid1D grid(-40.0, 40.0, 2048);
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        v[i] = std::sqrt(oracle::normal_pdf(grid.point(i), 0.0, 2.0));
    const GriddedFunction f(grid, v);
    const GriddedFunction tf = apply_semigroup(symmetrize(LevyTriplet::gaussian(1.0)), 1.0, f);
    CHECK(tf.l2_norm_sq() <= f.l2_norm_sq());
    // direct quadrature of both norms as an independent check of the bound
    const double lhs = oracle::simpson([&](double x) { return tf.eval(x) * tf.eval(x); },
                                       -39.0, 39.0, 4000);
    const double rhs = oracle::simpson([&](double x) { return f.eval(x) * f.eval(x); },
                                       -39.0, 39.0, 4000);
    CHECK(lhs <= rhs * (1.0 + 1e-9));
}

TEST_CASE("resolvent identity G_a - G_b = (b - a) G_a G_b") {
    const LevyTriplet sym = symmetrize(LevyTriplet::gaussian(1.0));
    const Grid1D grid(-40.0, 40.0, 1024);
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = oracle::normal_pdf(grid.point(i), 0.0, 1.0);
    const GriddedFunction f(grid, v);

    SUBCASE("alpha = 1, beta = 2") {
        const GriddedFunction lhs = resolvent(sym, 1.0, f) - resolvent(sym, 2.0, f);
        const GriddedFunction rhs = 1.0 * resolvent(sym, 1.0, resolvent(sym, 2.0, f));
        CHECK(sup_diff(lhs.values, rhs.values) < 1e-7);
    }
    SUBCASE("residual across the (alpha, beta) grid") {
        for (double a : {0.5, 1.0, 2.0}) {
            for (double b : {0.5, 1.0, 2.0}) {
                const GriddedFunction lhs = resolvent(sym, a, f) - resolvent(sym, b, f);
                GriddedFunction rhs = (b - a) * resolvent(sym, a, resolvent(sym, b, f));
                CHECK(sup_diff(lhs.values, rhs.values) < 1e-6);
            }
        }
    }
}

TEST_CASE("alpha G_alpha f -> f strongly") {
    const LevyTriplet sym = symmetrize(LevyTriplet::gaussian(1.0));
    const Grid1D grid(-40.0, 40.0, 2048);
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = oracle::normal_pdf(grid.point(i), 0.0, 4.0);
    const GriddedFunction f(grid, v);
    const GriddedFunction g = resolvent(sym, 1e3, f);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i)
        worst = std::max(worst, std::abs(1e3 * g.values[i] - f.values[i]));
    CHECK(worst < 1e-3);
}

TEST_CASE("resolvent matches the time-domain quadrature oracle") {
    // G_1 f = int_0^inf e^{-s} T_s f ds, by composite quadrature over s
    const LevyTriplet sym = symmetrize(LevyTriplet::gaussian(1.0));
    const Grid1D grid(-40.0, 40.0, 1024);
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = oracle::normal_pdf(grid.point(i), 0.0, 1.0);
    const GriddedFunction f(grid, v);
    const GriddedFunction direct = resolvent(sym, 1.0, f);

    // 40-interval Simpson in s on [eps, 40] plus a short-time Taylor strip:
    // int_0^eps e^{-s} T_s f ds ~ eps * f at eps = 1e-3 to within O(eps^2)
    const double eps = 1e-3, upper = 40.0;
    std::vector<GriddedFunction> evals;
    const std::size_t m = 800;
    const double hs = (upper - eps) / static_cast<double>(m);
    std::vector<double> acc(grid.n, 0.0);
    for (std::size_t k = 0; k <= m; ++k) {
        const double s = eps + hs * static_cast<double>(k);
        const GriddedFunction ts = apply_semigroup(sym, s, f);
        const double weight = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        for (std::size_t i = 0; i < grid.n; ++i)
            acc[i] += weight * std::exp(-s) * ts.values[i];
    }
    for (std::size_t i = 0; i < grid.n; ++i) acc[i] = acc[i] * hs / 3.0 + eps * f.values[i];
    CHECK(sup_diff(direct.values, acc) < 1e-4);
}

TEST_CASE("generator matrix structure and second-derivative oracle") {
    const LevyTriplet sym = symmetrize(LevyTriplet::gaussian(0.5));  // psi = 0.5 xi^2
    const Grid1D grid(-25.0, 25.0, 2048);
    const double h = 0.01;
    const Eigen::MatrixXd L = generator_matrix(sym, grid, h);
    const std::size_t n = grid.n;

    SUBCASE("row sums lie in [-kappa, 1e-8], interior rows nearly conservative") {
        for (std::size_t i = 0; i < n; ++i) {
            const double rs = L.row(static_cast<Eigen::Index>(i)).sum();
            CHECK(rs <= 1e-8);
        }
        for (std::size_t i = n / 4; i < 3 * n / 4; ++i) {
            const double rs = L.row(static_cast<Eigen::Index>(i)).sum();
            CHECK(rs >= -1e-3);
        }
    }
    SUBCASE("L annihilates constants on the interior") {
        Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
        Eigen::VectorXd lones = L * ones;
        for (std::size_t i = n / 4; i < 3 * n / 4; ++i)
            CHECK(std::abs(lones[static_cast<Eigen::Index>(i)]) < 1e-3);
    }
    SUBCASE("L f approximates v f'' for f = sin") {
        const double v = 0.5 * sym.gaussian_variance;
        Eigen::VectorXd f(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) f[static_cast<Eigen::Index>(i)] = std::sin(grid.point(i));
        const Eigen::VectorXd lf = L * f;
        double worst_rel = 0.0;
        for (std::size_t i = n / 4; i < 3 * n / 4; ++i) {
            const double expected = -v * std::sin(grid.point(i));
            if (std::abs(expected) < 0.1) continue;
            worst_rel = std::max(worst_rel,
                                 std::abs(lf[static_cast<Eigen::Index>(i)] - expected) /
                                     std::abs(expected));
        }
        CHECK(worst_rel < 0.02);
    }
}

TEST_CASE("generator matrix enforces its budget") {
    const LevyTriplet sym = symmetrize(LevyTriplet::gaussian(1.0));
    CHECK_THROWS_AS(generator_matrix(sym, Grid1D(-10.0, 10.0, 8192), 0.01), BudgetError);
    CHECK_THROWS_AS(generator_matrix(sym, Grid1D(-10.0, 10.0, 1024), 0.2), ConfigError);
}
