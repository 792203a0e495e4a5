#include "idregret/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <numbers>

#include "idregret/fft.hpp"
#include "idregret/quad.hpp"

namespace idregret {

std::string to_string(EnergyMethod method) {
    switch (method) {
        case EnergyMethod::Spectral: return "spectral";
        case EnergyMethod::FiniteH: return "finite-h";
        case EnergyMethod::GradientLocal: return "gradient";
        case EnergyMethod::RateLB: return "rate-lb";
        case EnergyMethod::GeneratorForm: return "generator-form";
    }
    return "unknown";
}

std::string to_string(RecurrenceClass c) {
    return c == RecurrenceClass::Recurrent ? "recurrent" : "transient";
}

namespace {

// |f_hat|^2 spectral weights shared by the spectral and finite-h estimators
struct SpectralData {
    std::vector<double> psi_k;
    std::vector<double> weight_k;  // |f_hat_k|^2 / (n h)
    std::size_t n = 0;
};

SpectralData spectral_data(const CharacteristicExponent& psi, const GriddedFunction& f) {
    SpectralData d;
    d.n = f.grid.n;
    const double h = f.grid.spacing();
    const std::vector<std::complex<double>> fhat = fft::spectrum_from_grid(f);
    d.psi_k.resize(d.n);
    d.weight_k.resize(d.n);
    const double scale = 1.0 / (static_cast<double>(d.n) * h);
    for (std::size_t k = 0; k < d.n; ++k) {
        d.psi_k[k] = psi(fft::frequency(k, d.n, h));
        d.weight_k[k] = std::norm(fhat[k]) * scale;
    }
    return d;
}

}  // namespace

EnergyEstimate energy_spectral(const CharacteristicExponent& psi, const GriddedFunction& f) {
    const SpectralData d = spectral_data(psi, f);
    EnergyEstimate est;
    est.method = EnergyMethod::Spectral;
    for (std::size_t cutoff = d.n / 16; cutoff <= d.n / 2; cutoff *= 2) {
        double e = 0.0;
        for (std::size_t k = 0; k < d.n; ++k) {
            if (static_cast<std::size_t>(std::llabs(fft::signed_index(k, d.n))) <= cutoff)
                e += d.psi_k[k] * d.weight_k[k];
        }
        est.partials.push_back(e);
    }
    est.value = est.partials.back();
    const std::size_t m = est.partials.size();
    const double last = est.partials[m - 1];
    const double prev = est.partials[m - 2];
    if (std::abs(last - prev) > 5e-3 * std::max(std::abs(last), 1e-12)) {
        std::ostringstream msg;
        msg << "energy_spectral: no convergence under cutoff doubling; partials " << prev
            << " -> " << last;
        throw NumericError(msg.str());
    }
    return est;
}

EnergyEstimate energy_spectral(const LevyTriplet& sym, const GriddedFunction& f) {
    return energy_spectral(CharacteristicExponent(sym), f);
}

EnergyEstimate energy_finite_h(const CharacteristicExponent& psi, const GriddedFunction& f,
                               std::vector<double> h_schedule) {
    if (h_schedule.size() < 4)
        throw ConfigError("energy_finite_h: need at least 4 schedule points");
    for (double h : h_schedule)
        if (!(h > 0.0 && h <= 1.0))
            throw ConfigError("energy_finite_h: schedule must lie in (0, 1]");
    std::sort(h_schedule.begin(), h_schedule.end(), std::greater<>());

    const SpectralData d = spectral_data(psi, f);
    EnergyEstimate est;
    est.method = EnergyMethod::FiniteH;
    for (double h : h_schedule) {
        double q = 0.0;
        for (std::size_t k = 0; k < d.n; ++k)
            q += -std::expm1(-h * d.psi_k[k]) / h * d.weight_k[k];
        est.partials.push_back(q);
    }
    for (std::size_t i = 1; i < est.partials.size(); ++i) {
        if (est.partials[i] < est.partials[i - 1] - 1e-8) {
            std::ostringstream msg;
            msg << "energy_finite_h: quotient fell from " << est.partials[i - 1] << " to "
                << est.partials[i] << " as h decreased; grid resolution is insufficient";
            throw NumericError(msg.str());
        }
    }
    // first-order Richardson on the two smallest h
    const std::size_t m = h_schedule.size();
    const double h1 = h_schedule[m - 2], q1 = est.partials[m - 2];
    const double h2 = h_schedule[m - 1], q2 = est.partials[m - 1];
    est.value = q2 + (q2 - q1) * h2 / (h1 - h2);
    est.partials.push_back(est.value);
    return est;
}

EnergyEstimate energy_finite_h(const LevyTriplet& sym, const GriddedFunction& f,
                               std::vector<double> h_schedule) {
    return energy_finite_h(CharacteristicExponent(sym), f, std::move(h_schedule));
}

EnergyEstimate energy_gradient_local(double v, const GriddedFunction& f) {
    if (!(v > 0.0)) throw ConfigError("energy_gradient_local: v must be > 0");
    const std::size_t n = f.grid.n;
    const double h = f.grid.spacing();
    double acc = 0.0;
    auto at = [&](std::size_t j) { return f.values[(j + n) % n]; };
    for (std::size_t j = 0; j < n; ++j) {
        const double d1 = 8.0 * (at(j + 1) - at(j + n - 1)) - (at(j + 2) - at(j + n - 2));
        const double fp = d1 / (12.0 * h);
        acc += fp * fp;
    }
    EnergyEstimate est;
    est.method = EnergyMethod::GradientLocal;
    est.value = v * acc * h;
    return est;
}

GriddedFunction default_eta(const Grid1D& grid) {
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = std::exp(-std::abs(grid.point(i)));
    return GriddedFunction(grid, std::move(v));
}

GriddedFunction killed_resolvent(const Eigen::MatrixXd& generator, const GriddedFunction& eta,
                                 double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("killed_resolvent: alpha must be > 0");
    const std::size_t n = eta.grid.n;
    if (generator.rows() != static_cast<Eigen::Index>(n))
        throw ConfigError("killed_resolvent: generator size does not match grid");
    for (double v : eta.values)
        if (!(v > 0.0)) throw ConfigError("killed_resolvent: eta must be positive");

    Eigen::MatrixXd A = -generator;
    const Eigen::Map<const Eigen::VectorXd> eta_vec(eta.values.data(), n);
    A.diagonal() += eta_vec;
    A.diagonal().array() += alpha;

    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericError("killed_resolvent: Cholesky factorization failed");
    Eigen::VectorXd u = llt.solve(eta_vec);

    const double residual = (A * u - eta_vec).norm() / eta_vec.norm();
    const double lo = u.minCoeff(), hi = u.maxCoeff();
    if (lo < -1e-8 || hi > 1.0 + 1e-6) {
        std::ostringstream msg;
        msg << "killed_resolvent: bounds violated, u in [" << lo << ", " << hi
            << "], solve residual " << residual;
        throw NumericError(msg.str());
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = std::max(0.0, u[static_cast<Eigen::Index>(i)]);
    return GriddedFunction(eta.grid, std::move(vals));
}

GriddedFunction killed_resolvent(const LevyTriplet& sym, const GriddedFunction& eta,
                                 double alpha, double generator_h) {
    return killed_resolvent(generator_matrix(sym, eta.grid, generator_h), eta, alpha);
}

std::vector<BlythPoint> blyth_sequence_energies(const LevyTriplet& sym,
                                                const GriddedFunction& eta,
                                                const std::vector<double>& n_list,
                                                double generator_h) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (!(n_list[i] > n_list[i - 1]))
            throw ConfigError("blyth_sequence_energies: n_list must increase");
    const Eigen::MatrixXd L = generator_matrix(sym, eta.grid, generator_h);
    const double h = eta.grid.spacing();
    std::vector<BlythPoint> out;
    out.reserve(n_list.size());
    for (double n : n_list) {
        const GriddedFunction u = killed_resolvent(L, eta, 1.0 / n);
        const Eigen::Map<const Eigen::VectorXd> uv(u.values.data(), u.values.size());
        out.push_back(BlythPoint{n, -(uv.dot(L * uv)) * h});
    }
    return out;
}

RecurrenceClass recurrence_precheck(const CharacteristicExponent& psi) {
    // int_{|xi|<1} dxi / psi converges iff psi decays strictly slower than
    // |xi| at zero; the local growth order decides, with the boundary order
    // (the Cauchy case, log divergence) classified recurrent
    const double p_hat = std::log(psi(1e-9) / psi(1e-15)) / std::log(1e6);
    return p_hat < 1.0 - 1e-6 ? RecurrenceClass::Transient : RecurrenceClass::Recurrent;
}

namespace {

// cubic B-spline bump on knot spacing `dx`, centered at `center`
double bspline3(double x, double center, double dx) {
    const double t = std::abs(x - center) / dx;
    if (t >= 2.0) return 0.0;
    if (t >= 1.0) {
        const double u = 2.0 - t;
        return u * u * u / 6.0;
    }
    return (4.0 - 6.0 * t * t + 3.0 * t * t * t) / 6.0;
}

}  // namespace

EnergyEstimate rate_function_lower_bound(const LevyTriplet& sym, const GriddedFunction& mu,
                                         std::size_t family_size) {
    if (family_size < 4)
        throw ConfigError("rate_function_lower_bound: family_size must be >= 4");
    const Grid1D& grid = mu.grid;
    const std::size_t n = grid.n;

    // normalize mu on the window
    std::vector<double> density = mu.values;
    const double mass = GriddedFunction(grid, density).trapezoid_periodic();
    if (!(mass > 0.0)) throw ConfigError("rate_function_lower_bound: mu has no mass");
    for (double& v : density) v /= mass;

    // the generator acts as the exact torus multiplier -psi, the same
    // self-adjoint operator behind the spectral estimator; the variational
    // sup over all u then equals the spectral energy, so any restricted
    // ascent certifies a true lower bound (a dense killed matrix inflates
    // the local variance by the cell width and can overshoot)
    const CharacteristicExponent psi(sym);
    const double h = grid.spacing();
    std::vector<double> psi_k(n);
    for (std::size_t k = 0; k < n; ++k) psi_k[k] = psi(fft::frequency(k, n, h));
    auto neg_generator = [&](const std::vector<double>& u) {
        GriddedFunction uf(grid, u);
        std::vector<std::complex<double>> uhat = fft::spectrum_from_grid(uf);
        for (std::size_t k = 0; k < n; ++k) uhat[k] *= psi_k[k];
        return fft::grid_from_spectrum(uhat, grid);
    };

    // two knot layouts: uniform in x (exact for Gaussian-like log-densities,
    // cubic splines reproduce quadratics) and uniform in the equal-mass
    // coordinate of mu (resolves heavy-tailed marginals); the best ascent
    // over both is still a certified lower bound
    const double peak = *std::max_element(density.begin(), density.end());
    std::size_t lo = 0, hi = n - 1;
    while (lo + 1 < n && density[lo] < 1e-8 * peak) ++lo;
    while (hi > lo + 1 && density[hi] < 1e-8 * peak) --hi;
    const double x_lo = grid.point(lo), x_hi = grid.point(hi);
    const double pad = 0.05 * (x_hi - x_lo);

    std::vector<double> warped(n);
    double wacc = 0.0, wtotal = 0.0;
    for (std::size_t i = 0; i < n; ++i) wtotal += density[i];
    for (std::size_t i = 0; i < n; ++i) {
        wacc += density[i];
        warped[i] = (wacc - 0.5 * density[i]) / wtotal;
    }

    std::vector<Eigen::MatrixXd> bases;
    {
        Eigen::MatrixXd b(n, family_size);
        const double dx = (x_hi - x_lo + 2.0 * pad) / static_cast<double>(family_size - 1);
        for (std::size_t k = 0; k < family_size; ++k) {
            const double center = x_lo - pad + dx * static_cast<double>(k);
            for (std::size_t i = 0; i < n; ++i) b(i, k) = bspline3(grid.point(i), center, dx);
        }
        bases.push_back(std::move(b));
    }
    {
        Eigen::MatrixXd b(n, family_size);
        const double dx = 1.0 / static_cast<double>(family_size - 1);
        for (std::size_t k = 0; k < family_size; ++k) {
            const double center = dx * static_cast<double>(k);
            for (std::size_t i = 0; i < n; ++i) b(i, k) = bspline3(warped[i], center, dx);
        }
        bases.push_back(std::move(b));
    }

    EnergyEstimate est;
    est.method = EnergyMethod::RateLB;
    double best_overall = -1e300;

    for (const Eigen::MatrixXd& basis : bases) {
    // initial coefficients: least-squares fit of log sqrt(mu) on the support
    Eigen::VectorXd target(n);
    Eigen::VectorXd lsq_weight(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = density[i];
        target[static_cast<Eigen::Index>(i)] = 0.5 * std::log(std::max(d, 1e-30 * peak));
        lsq_weight[static_cast<Eigen::Index>(i)] = d > 1e-8 * peak ? 1.0 : 0.0;
    }
    const Eigen::MatrixXd wb = lsq_weight.asDiagonal() * basis;
    Eigen::VectorXd a0 =
        (wb.transpose() * wb + 1e-10 * Eigen::MatrixXd::Identity(family_size, family_size))
            .ldlt()
            .solve(wb.transpose() * (lsq_weight.asDiagonal() * target));

    for (double eps : {1e-2, 1e-4}) {
        Eigen::VectorXd a = a0;
        auto objective = [&](const Eigen::VectorXd& coeff) {
            Eigen::VectorXd u = (basis * coeff).array().exp();
            std::vector<double> u_eps(n);
            for (std::size_t i = 0; i < n; ++i)
                u_eps[i] = u[static_cast<Eigen::Index>(i)] + eps;
            const std::vector<double> minus_au = neg_generator(u_eps);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += density[i] * minus_au[i] / u_eps[i];
            return acc * h;
        };

        double best = objective(a);
        est.partials.push_back(best);
        std::vector<double> step(family_size, 0.25);
        const std::size_t sweeps = 200;
        for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
            const double sweep_start = best;
            for (std::size_t k = 0; k < family_size; ++k) {
                const double s = step[k];
                Eigen::VectorXd ap = a, am = a;
                ap[static_cast<Eigen::Index>(k)] += s;
                am[static_cast<Eigen::Index>(k)] -= s;
                const double fp = objective(ap), fm = objective(am), f0 = best;
                // parabolic vertex through (-s, fm), (0, f0), (+s, fp)
                const double denom = fp - 2.0 * f0 + fm;
                double delta;
                if (denom < -1e-300) {
                    delta = 0.5 * s * (fm - fp) / denom;
                    delta = std::clamp(delta, -2.0 * s, 2.0 * s);
                } else {
                    delta = fp > fm ? s : -s;
                }
                Eigen::VectorXd trial = a;
                trial[static_cast<Eigen::Index>(k)] += delta;
                const double ft = objective(trial);
                const double cand = std::max({ft, fp, fm});
                if (cand > best) {
                    best = cand;
                    if (ft >= fp && ft >= fm) a = trial;
                    else if (fp >= fm) a = ap;
                    else a = am;
                    step[k] = std::min(1.0, s * 1.3);
                } else {
                    step[k] = std::max(1e-5, s * 0.5);
                    if (cand < best - 1e-6 * std::abs(best)) est.warning = true;
                }
            }
            if (best - sweep_start <= 1e-11 * std::max(1.0, std::abs(best))) break;
        }
        est.partials.push_back(best);
        best_overall = std::max(best_overall, best);
    }
    }
    est.value = best_overall;
    return est;
}

TransienceWitness transience_witness(const LevyTriplet& sym, const MarginalDensity& marginal,
                                     const Grid1D& grid) {
    const CharacteristicExponent psi(sym);
    if (recurrence_precheck(psi) != RecurrenceClass::Transient)
        throw ClassificationError(
            "transience_witness: process is recurrent; the witness exists only in the "
            "transient case");

    GriddedFunction root = sqrt_of(marginal.density);
    if (!(root.grid == grid))
        throw ConfigError("transience_witness: marginal lives on a different grid");

    // heavy tails carry a large share of both the mass and the energy of
    // sqrt(M); evaluate on a window extended by the tail model so the
    // inequality compares honest whole-line objects
    const std::size_t extension = 4;
    const std::size_t ne = std::min<std::size_t>(extension * grid.n, 1u << 16);
    const Grid1D big(extension * grid.lower, extension * grid.upper, ne);
    std::vector<double> ext(ne);
    for (std::size_t i = 0; i < ne; ++i) {
        const double x = big.point(i);
        ext[i] = std::abs(x) < grid.upper * 0.999
                     ? root.eval(x)
                     : (root.tail ? root.tail->value_at(std::abs(x)) : 0.0);
    }
    GriddedFunction ext_root(big, std::move(ext), root.tail);

    // potential R sqrt(M): frequency multiplier 1/psi with cell-averaged
    // values near the integrable singularity at xi = 0
    const double h = big.spacing();
    const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(ne) * h);
    std::vector<std::complex<double>> fhat = fft::spectrum_from_grid(ext_root);
    for (std::size_t k = 0; k < ne; ++k) {
        const long long sk = fft::signed_index(k, ne);
        double mult;
        if (std::llabs(sk) <= 4) {
            const double center = std::abs(static_cast<double>(sk)) * dxi;
            const double a = std::max(0.0, center - 0.5 * dxi);
            const double b = center + 0.5 * dxi;
            mult = quad::integrate_singular([&](double xi) { return 1.0 / psi(xi); }, a, b,
                                            1e-10) /
                   dxi;
        } else {
            mult = 1.0 / psi(fft::frequency(k, ne, h));
        }
        fhat[k] *= mult;
    }
    std::vector<double> pot = fft::grid_from_spectrum(fhat, big);

    std::vector<double> g_vals(ne);
    for (std::size_t i = 0; i < ne; ++i)
        g_vals[i] = ext_root.values[i] / std::max(pot[i], 1.0);
    GriddedFunction g(big, std::move(g_vals));

    // the dichotomy test weighs g against the marginal itself:
    // 0 < int M g dm <= E(sqrt(M), sqrt(M)) for sqrt(M) in the form domain
    TransienceWitness w;
    double lower = 0.0;
    for (std::size_t i = 0; i < ne; ++i)
        lower += ext_root.values[i] * ext_root.values[i] * g.values[i];
    w.lower = lower * h;
    w.energy = energy_spectral(psi, ext_root).value;
    w.g = std::move(g);
    if (!(w.lower > 0.0) || w.lower > w.energy * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "transience_witness: inequality 0 < int M g <= E failed: lower = " << w.lower
            << ", energy = " << w.energy;
        throw NumericError(msg.str());
    }
    return w;
}

}  // namespace idregret
