#include "idregret/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "idregret/fft.hpp"
#include "idregret/semigroup.hpp"

#include <numbers>

namespace idregret {

namespace {

constexpr double kUnderflowFloor = 1e-300;

// accuracy floor of the theta-window trapezoid: aliasing of the model
// characteristic function at the grid's Nyquist rate
double alias_proxy(const LevyTriplet& model, double spacing) {
    const CharacteristicExponent psi(model);
    return std::exp(-psi(2.0 * std::numbers::pi / spacing));
}

// survival of a gridded density beyond `from` (one side, from >= 0 expected
// small relative to the span)
double gridded_survival(const GriddedFunction& q, double from) {
    const Grid1D& g = q.grid;
    if (from >= g.upper) return q.tail ? q.tail->mass_beyond(from) : 0.0;
    double tail_mass = q.tail ? q.tail->mass_beyond(g.upper) : 0.0;
    // trapezoid from `from` to the right edge
    const double h = g.spacing();
    const double t = (from - g.lower) / h;
    std::size_t i = static_cast<std::size_t>(std::ceil(t));
    if (i >= g.n) return tail_mass;
    double acc = 0.0;
    for (std::size_t j = i; j + 1 < g.n; ++j) acc += 0.5 * (q.values[j] + q.values[j + 1]) * h;
    // partial first cell
    const double frac = static_cast<double>(i) - t;
    if (i > 0 && frac > 0.0) {
        const double x0 = g.point(i) - frac * h;
        const double v0 = q.eval(x0);
        acc += 0.5 * (v0 + q.values[i]) * frac * h;
    }
    return acc + tail_mass;
}

}  // namespace

std::vector<double> trapezoid_weights(const Grid1D& grid) {
    std::vector<double> w(grid.n, grid.spacing());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

PredictiveKernel PredictiveKernel::translation(GriddedFunction qtilde,
                                               std::shared_ptr<ModelDensity> noise) {
    PredictiveKernel k;
    k.translation_ = true;
    k.grid_ = qtilde.grid;
    k.qtilde_ = std::move(qtilde);
    k.noise_ = std::move(noise);
    return k;
}

PredictiveKernel PredictiveKernel::gridded(Grid1D grid, RowMatrix rows,
                                           std::vector<double> marginal_weights,
                                           std::vector<double> row_deficit,
                                           std::vector<std::uint8_t> untrusted) {
    PredictiveKernel k;
    k.translation_ = false;
    k.grid_ = grid;
    k.rows_ = std::move(rows);
    k.marginal_weights_ = std::move(marginal_weights);
    k.row_deficit_ = std::move(row_deficit);
    k.untrusted_ = std::move(untrusted);
    return k;
}

const GriddedFunction& PredictiveKernel::qtilde() const {
    if (!translation_) throw ConfigError("kernel is not a translation kernel");
    return qtilde_;
}

const PredictiveKernel::RowMatrix& PredictiveKernel::rows() const {
    if (translation_) throw ConfigError("translation kernel stores no row matrix");
    return rows_;
}

double PredictiveKernel::value(std::size_t i, std::size_t j) const {
    if (translation_)
        return qtilde_.at_offset(static_cast<long long>(j) - static_cast<long long>(i));
    return rows_(i, j);
}

GriddedFunction PredictiveKernel::row_function(std::size_t i) const {
    const std::size_t n = grid_.n;
    std::vector<double> vals(n);
    if (translation_) {
        for (std::size_t j = 0; j < n; ++j)
            vals[j] = qtilde_.at_offset(static_cast<long long>(j) - static_cast<long long>(i));
        return GriddedFunction(grid_, std::move(vals), qtilde_.tail);
    }
    for (std::size_t j = 0; j < n; ++j) vals[j] = rows_(i, j);
    return GriddedFunction(grid_, std::move(vals));
}

double PredictiveKernel::row_tail_deficit(std::size_t i) const {
    const double x = grid_.point(i);
    const double right = grid_.point(grid_.n - 1);
    if (translation_) {
        if (noise_) return noise_->survival(right - x) + noise_->survival(x - grid_.lower);
        return gridded_survival(qtilde_, right - x) +
               gridded_survival(qtilde_, x - grid_.lower);
    }
    return row_deficit_[i];
}

bool PredictiveKernel::row_untrusted(std::size_t i) const {
    if (translation_) return false;
    return untrusted_[i] != 0;
}

PredictiveKernel benchmark_predictive(const LevyTriplet& model, const Grid1D& grid) {
    if (model.dimension != 1)
        throw ConfigError("benchmark_predictive: numeric pipeline is d = 1");
    const LevyTriplet sym = model.symmetrized ? model : symmetrize(model);
    GriddedFunction qt = transition_density(sym, 1.0, grid);
    auto noise = std::make_shared<ModelDensity>(sym, grid);
    return PredictiveKernel::translation(std::move(qt), std::move(noise));
}

namespace {

struct WindowConvolution {
    // J(x_i, y_j) = sum_m a_i(m) F(j - m) with a_i(m) = w_m pi_m F(i - m);
    // everything is built from the lattice samples F(k) = f(k h).
    std::vector<double> lattice;                  // F(k), k = -n..n-1 stored circularly (2n)
    std::vector<std::complex<double>> kernel_hat;  // FFT of the circular kernel
    std::size_t n = 0;

    explicit WindowConvolution(const ModelDensity& f, const Grid1D& grid) : n(grid.n) {
        const double h = grid.spacing();
        lattice.resize(2 * n);
        for (std::size_t p = 0; p < 2 * n; ++p) {
            const long long k = p < n ? static_cast<long long>(p)
                                      : static_cast<long long>(p) - 2 * static_cast<long long>(n);
            lattice[p] = f.pdf(static_cast<double>(k) * h);
        }
        std::vector<std::complex<double>> c(lattice.begin(), lattice.end());
        kernel_hat = fft::dft(c);
    }

    double at(long long k) const {
        return lattice[static_cast<std::size_t>((k + 2 * static_cast<long long>(n)) %
                                                (2 * static_cast<long long>(n)))];
    }

    // direct Toeplitz correlation: out[j] = sum_m a[m] F(j - m); exact
    // nonnegativity for nonnegative inputs
    std::vector<double> correlate_direct(const std::vector<double>& a) const {
        std::vector<double> out(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t m = 0; m < n; ++m)
                acc += a[m] * lattice[(j - m + 2 * n) & (2 * n - 1)];
            out[j] = acc;
        }
        return out;
    }

    // linear correlation of `a` (length n, zero padded) with the lattice
    std::vector<double> correlate(const std::vector<double>& a) const {
        std::vector<std::complex<double>> buf(2 * n, 0.0);
        for (std::size_t m = 0; m < n; ++m) buf[m] = a[m];
        std::vector<std::complex<double>> ahat = fft::dft(buf);
        for (std::size_t k = 0; k < 2 * n; ++k) ahat[k] *= kernel_hat[k];
        std::vector<std::complex<double>> conv = fft::idft(ahat);
        std::vector<double> out(n);
        const double scale = 1.0 / static_cast<double>(2 * n);
        for (std::size_t j = 0; j < n; ++j) out[j] = conv[j].real() * scale;
        return out;
    }
};

std::optional<TailModel> marginal_tail_model(const ModelDensity& f, const PriorSpec& prior,
                                             const GriddedFunction& m_values) {
    const std::optional<double> prior_tail = prior.power_tail_exponent();
    const std::optional<TailModel> f_tail = f.tail();
    if (prior.kind == PriorKind::Uniform) return TailModel{0.0, 1.0};

    std::optional<double> exponent;
    double analytic_coeff = 0.0;
    const double prior_coeff =
        prior.proper() && prior_tail ? prior.density(0.0) * std::pow(prior.r0, prior.beta)
                                     : 1.0;  // improper power law: raw coefficient 1
    if (prior_tail && f_tail) {
        if (*prior_tail < f_tail->exponent) {
            exponent = *prior_tail;
            analytic_coeff = prior_coeff;
        } else if (f_tail->exponent < *prior_tail) {
            exponent = f_tail->exponent;
            analytic_coeff = f_tail->coeff;
        } else {
            exponent = *prior_tail;
            analytic_coeff = prior_coeff + f_tail->coeff;
        }
    } else if (prior_tail) {
        exponent = *prior_tail;
        analytic_coeff = prior_coeff;
    } else if (f_tail) {
        exponent = f_tail->exponent;
        analytic_coeff = f_tail->coeff;
    } else {
        return std::nullopt;
    }

    // refit the coefficient at the fixed exponent on the outer region
    const double upper = m_values.grid.upper;
    double log_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < m_values.size(); ++i) {
        const double x = std::abs(m_values.grid.point(i));
        if (x < 0.2 * upper || x > 0.6 * upper) continue;
        if (m_values.values[i] <= 0.0) continue;
        log_sum += std::log(m_values.values[i]) + *exponent * std::log(x);
        ++count;
    }
    const double coeff =
        count >= 8 ? std::exp(log_sum / static_cast<double>(count)) : analytic_coeff;
    return TailModel{*exponent, coeff};
}

}  // namespace

BayesSystem build_bayes_system(const LevyTriplet& model, const PriorSpec& prior,
                               const Grid1D& grid) {
    if (model.dimension != 1)
        throw ConfigError("bayes: numeric pipeline is d = 1");
    if (!grid.symmetric_about_zero())
        throw ConfigError("bayes: grid must be symmetric about zero");

    BayesSystem sys;

    // Uniform prior: the kernel is exactly the translation benchmark and the
    // marginal is identically 1 (int p(x|theta) dtheta = 1 in theta).
    if (prior.kind == PriorKind::Uniform) {
        sys.kernel = benchmark_predictive(model, grid);
        sys.noise = std::make_shared<ModelDensity>(
            model.symmetrized ? model : symmetrize(model), grid);
        std::vector<double> ones(grid.n, 1.0);
        sys.marginal = MarginalDensity{
            GriddedFunction(grid, std::move(ones), TailModel{0.0, 1.0}), false, 0.0};
        sys.escape_correction.assign(grid.n, 0.0);
        return sys;
    }

    sys.noise = std::make_shared<ModelDensity>(model, grid);
    const ModelDensity& f = *sys.noise;
    const std::size_t n = grid.n;
    const std::vector<double> w = trapezoid_weights(grid);

    // PointMass prior: rank-one joint f(x - t0) f(y - t0)
    if (prior.kind == PriorKind::PointMass) {
        const double t0 = prior.theta0;
        std::vector<double> m_vals(n);
        for (std::size_t i = 0; i < n; ++i) m_vals[i] = f.pdf(grid.point(i) - t0);
        const double esc =
            f.survival(grid.point(n - 1) - t0) + f.survival(t0 - grid.lower);

        PredictiveKernel::RowMatrix rows(n, n);
        std::vector<double> mw(n), deficit(n);
        std::vector<std::uint8_t> untrusted(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            mw[i] = m_vals[i];
            deficit[i] = esc;
            untrusted[i] = m_vals[i] < kUnderflowFloor;
            for (std::size_t j = 0; j < n; ++j) rows(i, j) = m_vals[j];
        }
        GriddedFunction m_fun(grid, std::move(m_vals), f.tail());
        double mass = m_fun.trapezoid() + esc;
        sys.marginal = MarginalDensity{std::move(m_fun), true, mass};
        if (std::abs(mass - 1.0) > 1e-6)
            throw NumericError("marginal_density: point-mass marginal mass " +
                               std::to_string(mass) + " violates 1 +- 1e-6");
        sys.kernel = PredictiveKernel::gridded(grid, std::move(rows), std::move(mw),
                                               std::move(deficit), std::move(untrusted));
        sys.escape_correction.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            sys.escape_correction[j] = sys.marginal.density.values[j] * esc;
        return sys;
    }

    // general prior: window quadrature over theta on the same lattice
    const WindowConvolution conv(f, grid);
    std::vector<double> weighted_prior(n), escape_weighted(n), s_escape(n);
    const double right_edge = grid.point(n - 1);
    for (std::size_t m = 0; m < n; ++m) {
        const double theta = grid.point(m);
        weighted_prior[m] = w[m] * prior.density(theta);
        s_escape[m] = f.survival(right_edge - theta) + f.survival(theta - grid.lower);
        escape_weighted[m] = weighted_prior[m] * s_escape[m];
    }

    // direct Toeplitz sums keep the marginal exactly nonnegative; the row
    // matrix below uses the FFT path
    std::vector<double> m_vals = conv.correlate_direct(weighted_prior);
    sys.escape_correction = conv.correlate_direct(escape_weighted);

    GriddedFunction m_fun(grid, m_vals);
    m_fun.tail = marginal_tail_model(f, prior, m_fun);
    for (double v : m_fun.values)
        if (!(v > 0.0) && prior.kind != PriorKind::PowerLaw)
            throw NumericError("marginal_density: nonpositive marginal value");

    const bool proper = prior.proper();
    double mass = 0.0;
    if (proper) {
        // window mass + f-escape + prior mass outside the window reassembles
        // the exact normalization
        double t1 = 0.0, t3 = 0.0;
        for (std::size_t i = 0; i < n; ++i) t1 += w[i] * m_vals[i];
        for (std::size_t m = 0; m < n; ++m) t3 += escape_weighted[m];
        mass = t1 + t3 + prior.mass_outside(grid.lower, right_edge);
        const double tol = std::max({1e-6, 3.0 * f.mass_uncertainty(),
                                     20.0 * alias_proxy(model, grid.spacing())});
        if (std::abs(mass - 1.0) > tol)
            throw NumericError("marginal_density: proper prior marginal mass " +
                               std::to_string(mass) + " violates 1 +- " +
                               std::to_string(tol));
    }
    sys.marginal = MarginalDensity{m_fun, proper, mass};

    // kernel rows J(x_i, .) / M_w(x_i), parallel over rows
    PredictiveKernel::RowMatrix rows(n, n);
    std::vector<double> mw(n), deficit(n);
    std::vector<std::uint8_t> untrusted(n, 0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        std::vector<double> a(n);
        for (std::size_t m = 0; m < n; ++m)
            a[m] = weighted_prior[m] *
                   conv.at(static_cast<long long>(i) - static_cast<long long>(m));
        double mwi = 0.0, defi = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            mwi += a[m];
            defi += a[m] * s_escape[m];
        }
        mw[i] = mwi;
        untrusted[i] = mwi < kUnderflowFloor;
        std::vector<double> j_row = conv.correlate(a);
        const double inv = untrusted[i] ? 0.0 : 1.0 / mwi;
        deficit[i] = untrusted[i] ? 1.0 : defi * inv;
        for (std::size_t j = 0; j < n; ++j) rows(i, j) = std::max(0.0, j_row[j]) * inv;
    }
    sys.kernel = PredictiveKernel::gridded(grid, std::move(rows), std::move(mw),
                                           std::move(deficit), std::move(untrusted));
    return sys;
}

MarginalDensity marginal_density(const LevyTriplet& model, const PriorSpec& prior,
                                 const Grid1D& grid) {
    // marginal-only path avoids materializing the n x n kernel
    if (prior.kind == PriorKind::Uniform) {
        std::vector<double> ones(grid.n, 1.0);
        return MarginalDensity{GriddedFunction(grid, std::move(ones), TailModel{0.0, 1.0}),
                               false, 0.0};
    }
    if (model.dimension != 1) throw ConfigError("marginal_density: numeric pipeline is d = 1");
    if (!grid.symmetric_about_zero())
        throw ConfigError("marginal_density: grid must be symmetric about zero");

    const ModelDensity f(model, grid);
    const std::size_t n = grid.n;
    const std::vector<double> w = trapezoid_weights(grid);

    if (prior.kind == PriorKind::PointMass) {
        const double t0 = prior.theta0;
        std::vector<double> m_vals(n);
        for (std::size_t i = 0; i < n; ++i) m_vals[i] = f.pdf(grid.point(i) - t0);
        GriddedFunction m_fun(grid, std::move(m_vals), f.tail());
        const double esc =
            f.survival(grid.point(n - 1) - t0) + f.survival(t0 - grid.lower);
        const double mass = m_fun.trapezoid() + esc;
        if (std::abs(mass - 1.0) > 1e-6)
            throw NumericError("marginal_density: point-mass marginal mass " +
                               std::to_string(mass) + " violates 1 +- 1e-6");
        return MarginalDensity{std::move(m_fun), true, mass};
    }

    const WindowConvolution conv(f, grid);
    std::vector<double> weighted_prior(n), escape_weighted(n);
    const double right_edge = grid.point(n - 1);
    for (std::size_t m = 0; m < n; ++m) {
        const double theta = grid.point(m);
        weighted_prior[m] = w[m] * prior.density(theta);
        escape_weighted[m] =
            weighted_prior[m] *
            (f.survival(right_edge - theta) + f.survival(theta - grid.lower));
    }
    std::vector<double> m_vals = conv.correlate_direct(weighted_prior);
    GriddedFunction m_fun(grid, std::move(m_vals));
    m_fun.tail = marginal_tail_model(f, prior, m_fun);

    const bool proper = prior.proper();
    double mass = 0.0;
    if (proper) {
        double t1 = 0.0, t3 = 0.0;
        for (std::size_t i = 0; i < n; ++i) t1 += w[i] * m_fun.values[i];
        for (std::size_t m = 0; m < n; ++m) t3 += escape_weighted[m];
        mass = t1 + t3 + prior.mass_outside(grid.lower, right_edge);
        const double tol = std::max({1e-6, 3.0 * f.mass_uncertainty(),
                                     20.0 * alias_proxy(model, grid.spacing())});
        if (std::abs(mass - 1.0) > tol)
            throw NumericError("marginal_density: proper prior marginal mass " +
                               std::to_string(mass) + " violates 1 +- " +
                               std::to_string(tol));
    }
    return MarginalDensity{std::move(m_fun), proper, mass};
}

PredictiveKernel bayes_predictive(const LevyTriplet& model, const PriorSpec& prior,
                                  const Grid1D& grid) {
    if (grid.n > 4096)
        throw BudgetError("bayes_predictive: n > 4096 exceeds the joint quadrature budget");
    return build_bayes_system(model, prior, grid).kernel;
}

double detailed_balance_residual(const BayesSystem& system) {
    const PredictiveKernel& k = system.kernel;
    const std::size_t n = k.grid().n;
    const std::vector<double>& m = system.marginal.density.values;

    if (k.is_translation()) {
        // M == 1 and the kernel is even; the residual is the evenness defect
        const GriddedFunction& q = k.qtilde();
        double worst = 0.0, peak = 0.0;
        for (std::size_t d = 1; d < n; ++d) {
            worst = std::max(worst, std::abs(q.at_offset(static_cast<long long>(d)) -
                                             q.at_offset(-static_cast<long long>(d))));
            peak = std::max(peak, q.at_offset(static_cast<long long>(d)));
        }
        peak = std::max(peak, q.at_offset(0));
        return peak > 0.0 ? worst / peak : worst;
    }

    const auto& rows = k.rows();
    double worst = 0.0, peak = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst, peak)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        for (std::size_t j = i; j < n; ++j) {
            const double a = m[i] * rows(i, j);
            const double b = m[j] * rows(j, i);
            worst = std::max(worst, std::abs(a - b));
            peak = std::max(peak, std::max(a, b));
        }
    }
    return peak > 0.0 ? worst / peak : worst;
}

double detailed_balance_residual(const LevyTriplet& model, const PriorSpec& prior,
                                 const Grid1D& grid) {
    return detailed_balance_residual(build_bayes_system(model, prior, grid));
}

double invariance_residual(const BayesSystem& system) {
    const PredictiveKernel& k = system.kernel;
    const Grid1D& grid = k.grid();
    const std::size_t n = grid.n;
    const std::vector<double> w = trapezoid_weights(grid);
    const std::vector<double>& m = system.marginal.density.values;

    std::vector<double> projected(n, 0.0);
    if (k.is_translation()) {
        for (std::size_t i = 0; i < n; ++i) {
            const double wm = w[i] * m[i];
            for (std::size_t j = 0; j < n; ++j)
                projected[j] += wm * k.value(i, j);
        }
        // escape correction: mass of the row started at x_j that leaves the
        // grid, weighted by the (constant-tail) marginal
        for (std::size_t j = 0; j < n; ++j)
            projected[j] += m[j] * k.row_tail_deficit(j);
    } else {
        const auto& rows = k.rows();
        for (std::size_t i = 0; i < n; ++i) {
            const double wm = w[i] * m[i];
            if (k.row_untrusted(i)) continue;
            for (std::size_t j = 0; j < n; ++j) projected[j] += wm * rows(i, j);
        }
        for (std::size_t j = 0; j < n; ++j) projected[j] += system.escape_correction[j];
    }

    double num = 0.0, den = 0.0;
    for (std::size_t j = n / 4; j < 3 * n / 4; ++j) {
        num += w[j] * std::abs(projected[j] - m[j]);
        den += w[j] * std::abs(m[j]);
    }
    return num / den;
}

double invariance_residual(const LevyTriplet& model, const PriorSpec& prior,
                           const Grid1D& grid) {
    return invariance_residual(build_bayes_system(model, prior, grid));
}

}  // namespace idregret
