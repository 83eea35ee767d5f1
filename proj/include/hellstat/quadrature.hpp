#pragma once

#include <cmath>
#include <functional>

namespace hellstat {

/// Adaptive Gauss-Kronrod-free panel quadrature: fixed-order Gauss-Legendre
/// with interval bisection until the two-panel refinement stabilizes.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-12, int max_depth = 18);

/// tanh-sinh (double-exponential) quadrature on (a, b); handles integrable
/// endpoint singularities such as x^{-1/2}. Accuracy near the endpoints is
/// limited to ~1e-8 by the rounding of the abscissa itself; use the
/// two-argument overload when the integrand is singular.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-12);

/// tanh-sinh quadrature where the integrand receives the distances (x - a,
/// b - x), both computed without cancellation. Reaches near machine precision
/// for endpoint singularities because the distances stay exact at double-
/// exponentially small scales.
double integrate_tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                           double tol = 1e-12);

/// Semi-infinite tanh-sinh quadrature on (0, inf) via x = exp(t) mapping
/// combined with double-exponential damping.
double integrate_to_infinity(const std::function<double(double)>& f, double tol = 1e-10);

}  // namespace hellstat
