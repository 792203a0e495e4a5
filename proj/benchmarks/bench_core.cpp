#include <benchmark/benchmark.h>

#include "idregret/bayes.hpp"
#include "idregret/energy.hpp"
#include "idregret/regret.hpp"
#include "idregret/semigroup.hpp"

using namespace idregret;

namespace {

void bm_transition_density(benchmark::State& state) {
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(1.0));
    const CharacteristicExponent psi(sym);
    const Grid1D grid(-400.0, 400.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        GriddedFunction q = transition_density(psi, 1.0, grid);
        benchmark::DoNotOptimize(q.values.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_transition_density)->RangeMultiplier(4)->Range(4096, 65536)->Complexity();

void bm_energy_spectral(benchmark::State& state) {
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(1.0));
    const CharacteristicExponent psi(sym);
    const Grid1D grid(-200.0, 200.0, static_cast<std::size_t>(state.range(0)));
    const MarginalDensity m =
        marginal_density(LevyTriplet::cauchy(1.0), PriorSpec::gaussian_proper(1.0), grid);
    const GriddedFunction root = sqrt_of(m.density);
    for (auto _ : state) {
        EnergyEstimate e = energy_spectral(psi, root);
        benchmark::DoNotOptimize(e.value);
    }
}
BENCHMARK(bm_energy_spectral)->RangeMultiplier(4)->Range(1024, 16384);

void bm_generator_matrix(benchmark::State& state) {
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(1.0));
    const Grid1D grid(-200.0, 200.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Eigen::MatrixXd L = generator_matrix(sym, grid, 0.02);
        benchmark::DoNotOptimize(L.data());
    }
}
BENCHMARK(bm_generator_matrix)->Arg(512)->Arg(1024)->Arg(2048);

void bm_killed_resolvent_solve(benchmark::State& state) {
    const LevyTriplet sym = symmetrize(LevyTriplet::cauchy(1.0));
    const Grid1D grid(-200.0, 200.0, static_cast<std::size_t>(state.range(0)));
    const GriddedFunction eta = default_eta(grid);
    const Eigen::MatrixXd L = generator_matrix(sym, grid, 0.02);
    for (auto _ : state) {
        GriddedFunction u = killed_resolvent(L, eta, 0.25);
        benchmark::DoNotOptimize(u.values.data());
    }
}
BENCHMARK(bm_killed_resolvent_solve)->Arg(512)->Arg(1024)->Arg(2048);

void bm_bayes_kernel(benchmark::State& state) {
    const Grid1D grid(-200.0, 200.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        BayesSystem sys = build_bayes_system(LevyTriplet::cauchy(1.0),
                                             PriorSpec::power_law(1.0, 1.0), grid);
        benchmark::DoNotOptimize(sys.kernel.rows().data());
    }
}
BENCHMARK(bm_bayes_kernel)->Arg(512)->Arg(1024)->Arg(2048);

void bm_integrated_regret(benchmark::State& state) {
    const LevyTriplet model = LevyTriplet::gaussian(1.0);
    const Grid1D grid(-40.0, 40.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const double r = integrated_regret(model, PriorSpec::gaussian_proper(1.0), grid);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(bm_integrated_regret)->Arg(512)->Arg(1024)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
