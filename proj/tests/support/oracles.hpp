#pragma once

#include <cmath>
#include <functional>

// Independent numerical oracles for tests. These deliberately avoid every
// code path of the library under test: plain adaptive Simpson quadrature,
// a plain fixed-step RK4 time integrator, and finite differences.

namespace testsupport {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m);
    const double right = simpson(f, m, b);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 40);
}

/// Fixed-step classical RK4 for y' = g(t, y) from (t0, y0) to t1.
inline double rk4(const std::function<double(double, double)>& g, double t0,
                  double y0, double t1, double dt) {
    double t = t0;
    double y = y0;
    while (t < t1 - 1e-12) {
        const double h = std::min(dt, t1 - t);
        const double k1 = g(t, y);
        const double k2 = g(t + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = g(t + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = g(t + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return y;
}

/// Fourth-order central difference derivative.
inline double fd_derivative(const std::function<double(double)>& f, double x,
                            double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) /
           (12.0 * h);
}

}  // namespace testsupport
