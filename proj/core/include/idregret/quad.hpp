#pragma once

#include <functional>
#include <vector>

namespace idregret::quad {

/// Adaptive Gauss-Kronrod on [a, b], relative tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

/// tanh-sinh on [a, b]; tolerates integrable endpoint singularities.
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

/// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(std::size_t n);

/// int f over [a, b] with an n-point Gauss-Legendre rule.
double gauss_on(const std::function<double(double)>& f, double a, double b, std::size_t n);

/// kappa0(alpha) = int_R (1 - cos u) |u|^{-(1+alpha)} du for alpha in (0,2),
/// by period-wise quadrature plus an integration-by-parts tail. Relative
/// accuracy ~1e-10.
double levy_cos_integral(double alpha);

/// int_0^inf (1 - cos(xi x)) w(x) dx for a nonnegative weight w that decays
/// fast enough for the integral to converge; handles the oscillation by
/// summing over periods of cos.
double oscillatory_levy_integral(const std::function<double(double)>& w, double xi,
                                 double upper = 1e4);

}  // namespace idregret::quad
