#include "idregret/suite.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "idregret/classify.hpp"
#include "idregret/energy.hpp"
#include "idregret/regret.hpp"

namespace idregret::suite {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [FAIL: " << what << "]";
        }
    }
    void note(const std::string& what) { detail << " " << what; }
};

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: Gaussian identity report ------------------------------

CriterionResult criterion_gaussian_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    const LevyTriplet model = LevyTriplet::gaussian(1.0);
    for (double s2 : {0.0, 1.0, 10.0, 100.0}) {
        const PriorSpec prior =
            s2 == 0.0 ? PriorSpec::point_mass(0.0) : PriorSpec::gaussian_proper(s2);
        const double spread = std::sqrt(1.0 + s2);
        const Grid1D grid(-16.0 * spread, 16.0 * spread, 2048);
        const IdentityReport rep = verify_identity(model, prior, grid);

        const double lhs_closed = 0.5 * std::log(2.0 * (1.0 + s2) / (1.0 + 2.0 * s2));
        const double rhs_closed = 0.25 / (1.0 + s2);
        const double ratio_closed = lhs_closed / rhs_closed;

        c.require(std::abs(rep.lhs_regret - lhs_closed) / lhs_closed <= 1e-4,
                  "lhs(s2=" + fmt(s2) + ") = " + fmt(rep.lhs_regret) + " vs " +
                      fmt(lhs_closed));
        c.require(std::abs(rep.rhs_energy_spectral - rhs_closed) / rhs_closed <= 1e-6,
                  "rhs_spectral(s2=" + fmt(s2) + ") = " + fmt(rep.rhs_energy_spectral) +
                      " vs " + fmt(rhs_closed));
        c.require(std::abs(rep.ratio_spectral - ratio_closed) <= 5e-3,
                  "ratio(s2=" + fmt(s2) + ") = " + fmt(rep.ratio_spectral) + " vs " +
                      fmt(ratio_closed));
        c.note("s2=" + fmt(s2) + ": lhs=" + fmt(rep.lhs_regret) +
               " rhs=" + fmt(rep.rhs_energy_spectral) + " ratio=" + fmt(rep.ratio_spectral));
    }
    const double wall = elapsed_since(t0);
    c.require(wall < 10.0, "runtime " + fmt(wall) + " s exceeds 10 s");
    return CriterionResult{1, "gaussian-identity-report", c.ok, c.detail.str(), wall};
}

// ---- criterion 2: BGX variance integral ----------------------------------

CriterionResult criterion_bgx() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    for (double v : {1.0, 2.0}) {
        for (double s2 : {0.0, 1.0, 10.0}) {
            try {
                const GaussianReductionReport rep = gaussian_reduction_report(v, s2);
                const double gap = std::abs(rep.variance_integral - rep.closed_form);
                c.note("(v=" + fmt(v) + ",s2=" + fmt(s2) + "): integral=" +
                       fmt(rep.variance_integral) + " closed=" + fmt(rep.closed_form));
                c.require(gap <= 1e-6 * std::max(1.0, std::abs(rep.closed_form)),
                          "integral gap " + fmt(gap));
            } catch (const Error& err) {
                c.require(false, std::string("reduction report threw: ") + err.what());
            }
        }
    }
    return CriterionResult{2, "bgx-variance-integral", c.ok, c.detail.str(),
                           elapsed_since(t0)};
}

// ---- criterion 3: Cauchy benchmark ---------------------------------------

CriterionResult criterion_cauchy_benchmark() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    const LevyTriplet model = LevyTriplet::cauchy(1.0);

    const Grid1D fine(-400.0, 400.0, 16384);
    const GriddedFunction q = transition_density(symmetrize(model), 1.0, fine);
    double sup = 0.0;
    for (std::size_t i = 0; i < fine.n; ++i) {
        const double x = fine.point(i);
        const double truth = 2.0 / (std::numbers::pi * (4.0 + x * x));
        sup = std::max(sup, std::abs(q.values[i] - truth));
    }
    c.note("sup-error=" + fmt(sup));
    c.require(sup < 1e-6, "benchmark sup-error " + fmt(sup));

    const PriorSpec prior = PriorSpec::power_law(1.0, 1.0);
    const double r1 = integrated_regret(model, prior, Grid1D(-400.0, 400.0, 2048));
    const double r2 = integrated_regret(model, prior, Grid1D(-400.0, 400.0, 4096));
    c.note("regret(2048)=" + fmt(r1) + " regret(4096)=" + fmt(r2));
    c.require(std::abs(r1 - r2) / std::abs(r2) <= 0.01,
              "self-convergence " + fmt(std::abs(r1 - r2) / std::abs(r2)));

    const double wall = elapsed_since(t0);
    c.require(wall < 60.0, "runtime " + fmt(wall) + " s exceeds 60 s");
    return CriterionResult{3, "cauchy-benchmark", c.ok, c.detail.str(), wall};
}

// ---- criterion 4: classifier table ----------------------------------------

CriterionResult criterion_classifier_table() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    struct Row {
        int d;
        ModelTrait trait;
        Admissibility expected;
        const char* label;
    };
    const std::vector<Row> rows = {
        {1, StableTail{1.0}, Admissibility::Admissible, "cauchy d=1"},
        {2, StableTail{1.0}, Admissibility::Inadmissible, "cauchy d=2"},
        {1, FiniteVariance{}, Admissibility::Admissible, "finite-variance d=1"},
        {2, FiniteVariance{}, Admissibility::Admissible, "finite-variance d=2"},
        {3, FiniteVariance{}, Admissibility::Inadmissible, "finite-variance d=3"},
        {1, StableTail{0.5}, Admissibility::Inadmissible, "stable 0.5 d=1"},
        {1, StableTail{1.0}, Admissibility::Admissible, "stable 1.0 d=1"},
        {1, StableTail{1.5}, Admissibility::Admissible, "stable 1.5 d=1"},
        {3, FiniteVariance{}, Admissibility::Inadmissible, "nig d=3"},
        {3, FiniteVariance{}, Admissibility::Inadmissible, "vg d=3"},
        {3, FiniteVariance{}, Admissibility::Inadmissible, "laplace d=3"},
        {3, FiniteVariance{}, Admissibility::Inadmissible, "skellam d=3"},
    };
    int matched = 0;
    for (const Row& row : rows) {
        const Verdict v = classify_admissibility(row.d, row.trait);
        const bool ok = v.admissibility == row.expected &&
                        (v.recurrence == RecurrenceClass::Recurrent) ==
                            (v.admissibility == Admissibility::Admissible);
        if (ok) ++matched;
        c.require(ok, std::string(row.label) + " -> " + to_string(v.admissibility));
    }
    c.note("matched " + std::to_string(matched) + "/12 rows");
    return CriterionResult{4, "classifier-table", c.ok, c.detail.str(), elapsed_since(t0)};
}

// ---- criterion 5: Blyth sequences -----------------------------------------

CriterionResult criterion_blyth() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    const std::vector<double> schedule = {1.0, 4.0, 16.0, 64.0, 256.0};
    const Grid1D grid(-200.0, 200.0, 2048);
    const GriddedFunction eta = default_eta(grid);

    const auto cauchy =
        blyth_sequence_energies(symmetrize(LevyTriplet::cauchy(1.0)), eta, schedule, 0.02);
    std::ostringstream seq;
    for (const BlythPoint& p : cauchy) seq << " " << fmt(p.energy);
    c.note("cauchy energies:" + seq.str());
    bool nonincreasing = true;
    for (std::size_t i = 1; i < cauchy.size(); ++i)
        nonincreasing =
            nonincreasing && cauchy[i].energy <= cauchy[i - 1].energy * (1.0 + 1e-9);
    c.require(nonincreasing, "cauchy sequence not nonincreasing");
    c.require(cauchy.back().energy <= 0.2 * cauchy.front().energy,
              "final/initial = " + fmt(cauchy.back().energy / cauchy.front().energy) +
                  " > 0.2");

    const LevyTriplet stable_sym = symmetrize(LevyTriplet::stable(0.5, 1.0));
    const auto stable = blyth_sequence_energies(stable_sym, eta, schedule, 0.02);
    double stable_min = 1e300;
    for (const BlythPoint& p : stable) stable_min = std::min(stable_min, p.energy);
    c.note("stable min=" + fmt(stable_min));
    c.require(stable_min >= 10.0 * cauchy.back().energy,
              "stable min " + fmt(stable_min) + " < 10 x cauchy final " +
                  fmt(cauchy.back().energy));

    const Grid1D doubled(-200.0, 200.0, 4096);
    const auto stable2 =
        blyth_sequence_energies(stable_sym, default_eta(doubled), schedule, 0.02);
    double stable_min2 = 1e300;
    for (const BlythPoint& p : stable2) stable_min2 = std::min(stable_min2, p.energy);
    c.note("stable min (doubled)=" + fmt(stable_min2));
    c.require(std::abs(stable_min - stable_min2) / stable_min2 <= 0.10,
              "grid-doubling drift " +
                  fmt(std::abs(stable_min - stable_min2) / stable_min2));
    return CriterionResult{5, "blyth-sequences", c.ok, c.detail.str(), elapsed_since(t0)};
}

// ---- criterion 6: transience witness ---------------------------------------

CriterionResult criterion_witness() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    const LevyTriplet model = LevyTriplet::stable(0.5, 1.0);
    const PriorSpec prior = PriorSpec::power_law(2.0, 1.0);
    double lowers[2] = {0.0, 0.0};
    int idx = 0;
    for (std::size_t n : {std::size_t{2048}, std::size_t{4096}}) {
        const Grid1D grid(-400.0, 400.0, n);
        try {
            const MarginalDensity m = marginal_density(model, prior, grid);
            const TransienceWitness w = transience_witness(symmetrize(model), m, grid);
            lowers[idx] = w.lower;
            c.note("n=" + std::to_string(n) + ": lower=" + fmt(w.lower) +
                   " energy=" + fmt(w.energy));
            c.require(w.lower > 0.0 && w.lower <= w.energy,
                      "inequality at n=" + std::to_string(n));
            c.require(w.lower >= 1e-3, "lower " + fmt(w.lower) + " < 1e-3");
        } catch (const Error& err) {
            c.require(false, std::string("witness threw: ") + err.what());
        }
        ++idx;
    }
    if (lowers[1] > 0.0)
        c.require(std::abs(lowers[0] - lowers[1]) / lowers[1] <= 0.10,
                  "grid-doubling drift " +
                      fmt(std::abs(lowers[0] - lowers[1]) / lowers[1]));
    return CriterionResult{6, "transience-witness", c.ok, c.detail.str(), elapsed_since(t0)};
}

// ---- criterion 7: estimator concordance ------------------------------------

CriterionResult criterion_concordance() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    struct ModelCase {
        LevyTriplet model;
        double half_width;
        const char* name;
    };
    const std::vector<ModelCase> models = {
        {LevyTriplet::gaussian(1.0), 60.0, "gaussian"},
        {LevyTriplet::cauchy(1.0), 200.0, "cauchy"},
        {LevyTriplet::stable(1.5, 1.0), 200.0, "stable1.5"},
    };
    for (const ModelCase& pm : models) {
        for (int which : {0, 1}) {
            const PriorSpec prior =
                which == 0 ? PriorSpec::gaussian_proper(1.0) : PriorSpec::power_law(1.0, 1.0);
            const Grid1D grid(-pm.half_width, pm.half_width, 1024);
            const LevyTriplet sym = symmetrize(pm.model);
            const MarginalDensity m = marginal_density(pm.model, prior, grid);

            GriddedFunction mu = m.density;
            const double z = mu.trapezoid_periodic();
            for (double& v : mu.values) v /= z;
            const GriddedFunction root = sqrt_of(mu);

            const double spectral = energy_spectral(sym, root).value;
            const double finite_h =
                energy_finite_h(sym, root, {0.5, 0.25, 0.125, 0.0625, 0.03125}).value;
            const EnergyEstimate lb = rate_function_lower_bound(sym, mu, 12);

            const std::string tag =
                std::string(pm.name) + "/" + (which == 0 ? "gauss(1)" : "powerlaw(1,1)");
            const double gap = std::abs(spectral - finite_h) / spectral;
            c.note(tag + ": spec=" + fmt(spectral) + " fh=" + fmt(finite_h) +
                   " lb=" + fmt(lb.value));
            c.require(gap <= 5e-3, tag + " spectral-vs-finite-h gap " + fmt(gap));
            c.require(lb.value >= 0.85 * spectral,
                      tag + " rate lb " + fmt(lb.value) + " below 0.85 x spectral");
            c.require(lb.value <= spectral * (1.0 + 1e-9),
                      tag + " rate lb exceeds the spectral value");
        }
    }
    return CriterionResult{7, "estimator-concordance", c.ok, c.detail.str(),
                           elapsed_since(t0)};
}

// ---- criterion 8: balance and invariance ------------------------------------

CriterionResult criterion_balance() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    {
        const Grid1D grid(-40.0, 40.0, 4096);
        const BayesSystem sys = build_bayes_system(LevyTriplet::gaussian(1.0),
                                                   PriorSpec::gaussian_proper(1.0), grid);
        const double b = detailed_balance_residual(sys);
        const double inv = invariance_residual(sys);
        c.note("gaussian-gaussian: balance=" + fmt(b) + " invariance=" + fmt(inv));
        c.require(b < 1e-6, "gaussian balance " + fmt(b));
        c.require(inv < 1e-6, "gaussian invariance " + fmt(inv));
    }
    {
        const Grid1D grid(-400.0, 400.0, 4096);
        const BayesSystem sys = build_bayes_system(LevyTriplet::cauchy(1.0),
                                                   PriorSpec::power_law(1.0, 1.0), grid);
        const double b = detailed_balance_residual(sys);
        const double inv = invariance_residual(sys);
        c.note("cauchy-powerlaw: balance=" + fmt(b) + " invariance=" + fmt(inv));
        c.require(b < 1e-6, "cauchy balance " + fmt(b));
        c.require(inv < 1e-6, "cauchy invariance " + fmt(inv));
    }
    return CriterionResult{8, "balance-invariance", c.ok, c.detail.str(), elapsed_since(t0)};
}

// ---- criterion 9: A-harmonic test -------------------------------------------

CriterionResult criterion_aharmonic() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    int agreements = 0;
    for (int d : {1, 2}) {
        for (double alpha : {0.5, 1.0}) {
            for (double offset : {-0.3, 0.3}) {
                const double beta = static_cast<double>(d) - alpha + offset;
                const AharmonicResult closed =
                    aharmonic_tail_test(d, alpha, ClosedExponent{beta});
                const bool expected_divergent = offset > 0.0;
                c.require(
                    (closed.outcome == IntegralOutcome::Divergent) == expected_divergent,
                    "closed rule at d=" + std::to_string(d) + " alpha=" + fmt(alpha) +
                        " beta=" + fmt(beta));

                const Grid1D grid(-100.0, 100.0, 4096);
                std::vector<double> mv(grid.n);
                for (std::size_t i = 0; i < grid.n; ++i) {
                    const double x = grid.point(i);
                    mv[i] = std::pow(1.0 + x * x, -0.5 * beta);
                }
                GriddedFunction marginal(grid, std::move(mv), TailModel{beta, 1.0});
                const AharmonicResult numeric =
                    aharmonic_tail_test(d, alpha, MarginalInput{marginal}, 1e6);
                if (numeric.outcome == closed.outcome) ++agreements;
                c.require(numeric.outcome == closed.outcome,
                          "numeric route disagrees at d=" + std::to_string(d) + " alpha=" +
                              fmt(alpha) + " beta=" + fmt(beta) + " (slope " +
                              fmt(numeric.fitted_slope) + ")");
            }
        }
    }
    c.note("numeric agreements " + std::to_string(agreements) + "/8");

    const auto capacity = capacity_profile(1, 1.0, ClosedExponent{1.0}, {1e2, 1e3, 1e4});
    double lo = 1e300, hi = 0.0;
    for (const CapacityPoint& p : capacity) {
        lo = std::min(lo, p.product);
        hi = std::max(hi, p.product);
    }
    c.note("capacity product spread " + fmt(hi / lo));
    c.require(hi / lo <= 3.0, "capacity products spread " + fmt(hi / lo) + " > 3");
    return CriterionResult{9, "a-harmonic-test", c.ok, c.detail.str(), elapsed_since(t0)};
}

}  // namespace

CriterionResult run_criterion(int id) {
    switch (id) {
        case 1: return criterion_gaussian_identity();
        case 2: return criterion_bgx();
        case 3: return criterion_cauchy_benchmark();
        case 4: return criterion_classifier_table();
        case 5: return criterion_blyth();
        case 6: return criterion_witness();
        case 7: return criterion_concordance();
        case 8: return criterion_balance();
        case 9: return criterion_aharmonic();
        default: throw ConfigError("unknown acceptance criterion id " + std::to_string(id));
    }
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id));
    return out;
}

std::string to_csv(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    os << "id,name,passed,detail\n";
    for (const CriterionResult& r : results) {
        std::string detail = r.detail;
        for (char& ch : detail)
            if (ch == ',' || ch == '\n') ch = ';';
        os << r.id << "," << r.name << "," << (r.passed ? "pass" : "fail") << "," << detail
           << "\n";
    }
    return os.str();
}

}  // namespace idregret::suite
