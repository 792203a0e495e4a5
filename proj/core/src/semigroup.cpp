#include "idregret/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <numbers>

#include "idregret/fft.hpp"

namespace idregret {

namespace {

std::vector<double> invert_multiplier(const CharacteristicExponent& psi, double t,
                                      const Grid1D& grid) {
    const std::size_t n = grid.n;
    const double h = grid.spacing();
    std::vector<std::complex<double>> fhat(n);
    for (std::size_t k = 0; k < n; ++k)
        fhat[k] = std::exp(-t * psi(fft::frequency(k, n, h)));
    return fft::grid_from_spectrum(fhat, grid);
}

struct TailTerm {
    double exponent = 0.0;  // p_k = k alpha + 1
    double coeff = 0.0;     // signed series coefficient
};

// asymptotic series of the symmetric stable density with exponent
// psi = kappa |xi|^alpha at time t:
// q_t(x) = (1/pi) sum_k (-1)^{k+1} Gamma(k alpha + 1) sin(k pi alpha / 2)
//          (t kappa)^k x^{-(k alpha + 1)} / k!
std::vector<TailTerm> stable_tail_terms(double alpha, double t_kappa, int count) {
    std::vector<TailTerm> terms;
    double sign = 1.0, factorial = 1.0, power = 1.0;
    for (int k = 1; k <= count; ++k) {
        factorial *= k;
        power *= t_kappa;
        const double s = std::sin(0.5 * k * std::numbers::pi * alpha);
        const double coeff =
            sign * std::tgamma(k * alpha + 1.0) * s * power / (factorial * std::numbers::pi);
        if (std::abs(s) > 1e-13)
            terms.push_back(TailTerm{k * alpha + 1.0, coeff});
        sign = -sign;
    }
    return terms;
}

double tail_value(const std::vector<TailTerm>& terms, double abs_x) {
    double v = 0.0;
    for (const TailTerm& t : terms) v += t.coeff * std::pow(abs_x, -t.exponent);
    return v;
}

// one-sided mass of a term beyond `from`
double term_mass(const TailTerm& t, double from) {
    return t.coeff * std::pow(from, 1.0 - t.exponent) / (t.exponent - 1.0);
}

// periodization images at x: sum over |m| >= 1 of the tail model at x + m*span,
// eight explicit images plus a midpoint-rule remainder for the rest
double wrap_estimate(double x, double span, const std::vector<TailTerm>& terms) {
    double s = 0.0;
    const int images = 8;
    for (int m = 1; m <= images; ++m) {
        s += tail_value(terms, std::abs(x - m * span));
        s += tail_value(terms, std::abs(x + m * span));
    }
    const double edge = (images + 0.5) * span;
    for (const TailTerm& t : terms) {
        s += t.coeff *
             (std::pow(edge - x, 1.0 - t.exponent) + std::pow(edge + x, 1.0 - t.exponent)) /
             ((t.exponent - 1.0) * span);
    }
    return s;
}

// refit the leading coefficient with the exponent held fixed, on the outer
// region of the (wrap- and higher-term-corrected) density; returns the
// coefficient and the rms relative misfit
std::pair<double, double> fit_leading_coeff(const GriddedFunction& q,
                                            const std::vector<TailTerm>& terms) {
    const double upper = q.grid.upper;
    const double p = terms.front().exponent;
    std::vector<double> samples;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double x = std::abs(q.grid.point(i));
        if (x < 0.25 * upper || x > 0.7 * upper) continue;
        double v = q.values[i];
        for (std::size_t k = 1; k < terms.size(); ++k)
            v -= terms[k].coeff * std::pow(x, -terms[k].exponent);
        if (v <= 0.0) continue;
        samples.push_back(std::log(v) + p * std::log(x));
    }
    if (samples.size() < 8)
        throw NumericError("transition_density: too few points to fit the tail");
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= static_cast<double>(samples.size());
    return {std::exp(mean), std::sqrt(var)};
}

}  // namespace

GriddedFunction transition_density(const CharacteristicExponent& psi, double t,
                                   const Grid1D& grid, TransitionDiagnostics* diag,
                                   double mass_tolerance) {
    if (!(t > 0.0)) throw ConfigError("transition_density: t must be > 0");
    if (!grid.symmetric_about_zero())
        throw ConfigError("transition_density: grid must be symmetric about zero");

    GriddedFunction q(grid, invert_multiplier(psi, t, grid));
    q.symmetrize_values();

    double tail_mass = 0.0;
    const auto stable = psi.stable_tail();
    if (stable) {
        // the raw inversion is the periodized density; peel off the images
        // of the neighbouring periods using the analytic tail expansion,
        // then refit the leading coefficient on the outer region
        const double span = grid.upper - grid.lower;
        std::vector<TailTerm> terms = stable_tail_terms(stable->alpha, t * stable->psi_coeff, 4);
        for (std::size_t i = 0; i < q.size(); ++i)
            q.values[i] -= wrap_estimate(grid.point(i), span, terms);
        q.symmetrize_values();
        const auto [fitted, dispersion] = fit_leading_coeff(q, terms);
        const double analytic = terms.front().coeff;
        terms.front().coeff = fitted;

        for (const TailTerm& term : terms) tail_mass += 2.0 * term_mass(term, grid.upper);
        // truncation + fit uncertainty of the tail mass
        const double leading_mass = 2.0 * std::abs(term_mass(terms.front(), grid.upper));
        const double last_mass = 2.0 * std::abs(term_mass(terms.back(), grid.upper));
        const double decay =
            terms.size() > 1
                ? std::abs(terms.back().coeff /
                           terms[terms.size() - 2].coeff) *
                      std::pow(grid.upper, terms[terms.size() - 2].exponent -
                                               terms.back().exponent)
                : 0.0;
        q.tail_uncertainty = last_mass * std::min(1.0, decay) +
                             std::abs(fitted - analytic) / std::max(fitted, 1e-300) *
                                 leading_mass +
                             dispersion * leading_mass;
        q.tail = TailModel{terms.front().exponent, fitted};
        for (std::size_t k = 1; k < terms.size(); ++k)
            q.tail->corrections.emplace_back(terms[k].exponent, terms[k].coeff);
    }

    TransitionDiagnostics local;
    TransitionDiagnostics& d = diag ? *diag : local;
    for (double& v : q.values) {
        if (v < 0.0) {
            d.max_clipped = std::max(d.max_clipped, -v);
            ++d.clipped_points;
            v = 0.0;
        }
    }

    const double mass = q.trapezoid_periodic() + tail_mass;
    d.raw_mass = mass;
    if (q.tail_uncertainty > mass_tolerance) {
        std::ostringstream msg;
        msg << "transition_density: estimated truncated-tail mass uncertainty "
            << q.tail_uncertainty << " exceeds the bound " << mass_tolerance
            << "; grid span too narrow for the tail expansion at t = " << t;
        throw NumericError(msg.str());
    }
    const double tolerance = std::max(mass_tolerance, 3.0 * q.tail_uncertainty);
    if (std::abs(mass - 1.0) > tolerance) {
        std::ostringstream msg;
        msg << "transition_density: mass " << mass << " violates |mass - 1| <= " << tolerance
            << "; grid too narrow or too coarse for t = " << t;
        throw NumericError(msg.str());
    }
    if (std::abs(mass - 1.0) <= 0.02) {
        d.renormalization = 1.0 / mass;
        for (double& v : q.values) v *= d.renormalization;
        if (q.tail) {
            q.tail->coeff *= d.renormalization;
            for (auto& [p, c] : q.tail->corrections) c *= d.renormalization;
        }
    }
    return q;
}

GriddedFunction transition_density(const LevyTriplet& sym, double t, const Grid1D& grid,
                                   TransitionDiagnostics* diag, double mass_tolerance) {
    return transition_density(CharacteristicExponent(sym), t, grid, diag, mass_tolerance);
}

GriddedFunction apply_semigroup(const CharacteristicExponent& psi, double t,
                                const GriddedFunction& f) {
    if (!(t > 0.0)) throw ConfigError("apply_semigroup: t must be > 0");
    const std::size_t n = f.grid.n;
    const double h = f.grid.spacing();
    std::vector<std::complex<double>> fhat = fft::spectrum_from_grid(f);
    for (std::size_t k = 0; k < n; ++k)
        fhat[k] *= std::exp(-t * psi(fft::frequency(k, n, h)));
    GriddedFunction out(f.grid, fft::grid_from_spectrum(fhat, f.grid), f.tail);
    return out;
}

GriddedFunction apply_semigroup(const LevyTriplet& sym, double t, const GriddedFunction& f) {
    return apply_semigroup(CharacteristicExponent(sym), t, f);
}

GriddedFunction resolvent(const CharacteristicExponent& psi, double alpha,
                          const GriddedFunction& f) {
    if (!(alpha > 0.0)) throw ConfigError("resolvent: alpha must be > 0");
    const std::size_t n = f.grid.n;
    const double h = f.grid.spacing();
    std::vector<std::complex<double>> fhat = fft::spectrum_from_grid(f);
    for (std::size_t k = 0; k < n; ++k)
        fhat[k] /= alpha + psi(fft::frequency(k, n, h));
    GriddedFunction out(f.grid, fft::grid_from_spectrum(fhat, f.grid), f.tail);
    if (out.tail) out.tail->coeff /= alpha;
    return out;
}

GriddedFunction resolvent(const LevyTriplet& sym, double alpha, const GriddedFunction& f) {
    return resolvent(CharacteristicExponent(sym), alpha, f);
}

Eigen::MatrixXd generator_matrix(const LevyTriplet& sym, const Grid1D& grid, double h) {
    if (!(h > 0.0 && h <= 0.05))
        throw ConfigError("generator_matrix: time step h must lie in (0, 0.05]");
    if (grid.n > 4096)
        throw BudgetError("generator_matrix: n > 4096 exceeds the dense solve budget");
    if (!grid.symmetric_about_zero())
        throw ConfigError("generator_matrix: grid must be symmetric about zero");

    const CharacteristicExponent psi(sym);
    const std::size_t n = grid.n;
    const double hx = grid.spacing();

    // cell masses of q_h on the coarse lattice, from a fine transform of
    // exp(-h psi) times the cell-indicator transform (exact cell averaging)
    const std::size_t refine =
        std::clamp<std::size_t>((1u << 18) / (2 * n), 8, 128);
    const std::size_t n_fine = 2 * n * refine;
    const Grid1D fine(2.0 * grid.lower, 2.0 * grid.upper, n_fine);
    const double hf = fine.spacing();

    std::vector<std::complex<double>> fhat(n_fine);
    for (std::size_t k = 0; k < n_fine; ++k) {
        const double xi = fft::frequency(k, n_fine, hf);
        const double box = xi == 0.0 ? hx : 2.0 * std::sin(0.5 * xi * hx) / xi;
        fhat[k] = std::exp(-h * psi(xi)) * box;
    }
    const std::vector<double> cell_mass = fft::grid_from_spectrum(fhat, fine);

    const long long zero_fine = static_cast<long long>(n_fine / 2);
    std::vector<double> m(2 * n - 1);  // offsets -(n-1)..(n-1)
    for (long long k = -(static_cast<long long>(n) - 1); k <= static_cast<long long>(n) - 1;
         ++k) {
        const long long j = zero_fine + k * static_cast<long long>(refine);
        m[static_cast<std::size_t>(k + static_cast<long long>(n) - 1)] =
            std::max(0.0, cell_mass[static_cast<std::size_t>(j)]);
    }
    // evenize and cap the total at 1 (clipping can add epsilon-level mass)
    for (std::size_t k = 0; k < n - 1; ++k) {
        const double avg = 0.5 * (m[k] + m[2 * n - 2 - k]);
        m[k] = m[2 * n - 2 - k] = avg;
    }
    double total = 0.0;
    for (double v : m) total += v;
    if (total > 1.0)
        for (double& v : m) v /= total;

    Eigen::MatrixXd L(n, n);
    const double inv_h = 1.0 / h;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const long long k = static_cast<long long>(j) - static_cast<long long>(i);
            double entry = m[static_cast<std::size_t>(k + static_cast<long long>(n) - 1)];
            if (i == j) entry -= 1.0;
            L(i, j) = entry * inv_h;
        }
    }
    return L;
}

}  // namespace idregret
