#include "idregret/quad.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "idregret/errors.hpp"

namespace idregret::quad {

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double error = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 14, tol, &error);
    return value;
}

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(f, a, b, tol);
}

namespace {

GaussRule build_gauss_legendre(std::size_t n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev estimate.
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
    static std::mutex m;
    static std::map<std::size_t, GaussRule> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

double gauss_on(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

double levy_cos_integral(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw ConfigError("levy_cos_integral: alpha must be in (0, 2)");
    const double pi = std::numbers::pi;
    const double s = 1.0 + alpha;
    // near zero 1 - cos u loses all precision to cancellation; switch to the
    // series (1 - cos u) = u^2/2 - u^4/24 + u^6/720 well above that point
    auto integrand = [&](double u) {
        if (u < 1e-2) {
            const double u2 = u * u;
            return 0.5 * std::pow(u, 1.0 - alpha) * (1.0 - u2 / 12.0 + u2 * u2 / 360.0);
        }
        return (1.0 - std::cos(u)) * std::pow(u, -s);
    };

    // (0, 2pi]: integrand ~ u^{1-alpha}/2 at 0, integrable but with
    // unbounded derivatives for alpha > 1; tanh-sinh handles it.
    double total = integrate_singular(integrand, 0.0, 2.0 * pi, 1e-12);

    // one period at a time out to A = 2*pi*K
    const std::size_t periods = 4000;
    for (std::size_t k = 1; k < periods; ++k)
        total += gauss_on(integrand, 2.0 * pi * k, 2.0 * pi * (k + 1), 15);

    // tail: int_A^inf u^{-s} du minus the oscillatory part by parts
    const double A = 2.0 * pi * periods;
    const double plain = std::pow(A, -alpha) / alpha;
    const double c1 = -std::sin(A) * std::pow(A, -s);
    const double c2 = s * std::cos(A) * std::pow(A, -s - 1.0);
    const double c3 = s * (s + 1.0) * std::sin(A) * std::pow(A, -s - 2.0);
    const double cos_tail = c1 + c2 + c3;
    total += plain - cos_tail;

    return 2.0 * total;
}

double oscillatory_levy_integral(const std::function<double(double)>& w, double xi,
                                 double upper) {
    xi = std::abs(xi);
    if (xi == 0.0) return 0.0;
    // guards: the raw form is 0 * inf against singular weights near x = 0
    auto integrand = [&](double x) {
        if (x < 1e-100) return 0.0;
        const double u = xi * x;
        if (u < 1e-2) {
            const double u2 = u * u;
            return 0.5 * u2 * (1.0 - u2 / 12.0 + u2 * u2 / 360.0) * w(x);
        }
        return (1.0 - std::cos(u)) * w(x);
    };
    const double period = 2.0 * std::numbers::pi / xi;
    double total = integrate_singular(integrand, 0.0, std::min(period, upper), 1e-11);
    double a = period;
    while (a < upper) {
        const double b = std::min(a + period, upper);
        total += gauss_on(integrand, a, b, 15);
        a = b;
    }
    return total;
}

}  // namespace idregret::quad
