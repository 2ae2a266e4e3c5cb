#include "sfront/apsteady.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sfront/errors.hpp"

namespace sfront {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975362};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

// integral over [lo, hi] of exp(C(s) - shift) with C the exact forcing
// antiderivative; panels keep the quadrature sharp for oscillatory c.
double exp_integral(const QuasiPeriodicSignal& c, double lo, double hi,
                    double shift, double panel_width) {
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width)));
    const double w = (hi - lo) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * w;
        const double mid = a + 0.5 * w;
        double panel = 0.0;
        for (int g = 0; g < 8; ++g) {
            const double s = mid + 0.5 * w * kGlNodes[g];
            panel += kGlWeights[g] * std::exp(c.integral(s) - shift);
        }
        acc += 0.5 * w * panel;
    }
    return acc;
}

double hermite_value(double y0, double m0, double y1, double m1, double width,
                     double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * width * m0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * width * m1;
}

void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs,
                       std::vector<double>& out) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    out[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
    }
}

}  // namespace

double LimitStateTime::eval(double tt) const {
    if (tt <= t.front()) return u.front();
    if (tt >= t.back()) return u.back();
    const double step = dt();
    auto k = static_cast<std::size_t>((tt - t.front()) / step);
    k = std::min(k, t.size() - 2);
    const double s = (tt - t[k]) / step;
    auto slope = [&](std::size_t i) {
        return u[i] * (forcing.eval(t[i]) - u[i]);
    };
    return hermite_value(u[k], slope(k), u[k + 1], slope(k + 1), step, s);
}

LimitStateTime compute_uc(const QuasiPeriodicSignal& c, double t0, double t1,
                          double sample_dt, double tail_tol) {
    const double m = c.mean();
    if (!(m > 0.0)) {
        throw MeanConditionViolation("time forcing must have positive mean");
    }
    // tail of the closed form below exp(2B - m H)/m with B the bound on the
    // oscillatory part of the antiderivative
    const double B = c.oscillation_integral_bound();
    const double H = (2.0 * B - std::log(m * tail_tol)) / m;

    LimitStateTime out;
    out.horizon = H;
    out.forcing = c;
    const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / sample_dt)) + 1;
    out.t.resize(n);
    out.u.resize(n);

    // J(t) = exp(-C(t)) * integral over [t-H, t] of exp(C(s)) = 1/u_c(t),
    // advanced by exact one-panel recursion to keep every exponent bounded.
    double t_cur = t0;
    double J = exp_integral(c, t0 - H, t0, c.integral(t0), 0.25);
    out.t[0] = t0;
    out.u[0] = 1.0 / J;
    for (std::size_t i = 1; i < n; ++i) {
        const double t_next = t0 + i * sample_dt;
        const double Cn = c.integral(t_next);
        const double decay = std::exp(c.integral(t_cur) - Cn);
        J = decay * J + exp_integral(c, t_cur, t_next, Cn, 0.25);
        out.t[i] = t_next;
        out.u[i] = 1.0 / J;
        t_cur = t_next;
    }
    return out;
}

double LimitStateSpace::eval(double xx) const {
    if (xx <= x.front()) return v.front();
    if (xx >= x.back()) return v.back();
    const double step = dx();
    auto k = static_cast<std::size_t>((xx - x.front()) / step);
    k = std::min(k, x.size() - 2);
    const double s = (xx - x[k]) / step;
    return hermite_value(v[k], vp[k], v[k + 1], vp[k + 1], step, s);
}

LimitStateSpace compute_va(const QuasiPeriodicSignal& a, double x0, double x1,
                           const ComputeVaOptions& opt) {
    if (!(a.lower_bound() > 0.0)) {
        throw PositivityViolation("coefficient a(x) must be positive everywhere");
    }
    const double lo = x0 - opt.pad;
    const double hi = x1 + opt.pad;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / opt.dx)) + 1;
    const double dx = (hi - lo) / static_cast<double>(n - 1);

    std::vector<double> ax(n);
    for (std::size_t i = 0; i < n; ++i) ax[i] = a.eval(lo + i * dx);

    // relax v_t = v_xx + v(a - v) from the constant super-solution sup a;
    // the reaction stays plain-explicit so the settled state solves the
    // central-difference steady equation exactly
    std::vector<double> v(n, a.upper_bound());
    v.front() = ax.front();
    v.back() = ax.back();

    const double slope_bound = 3.0 * a.upper_bound();
    const double dt = std::min(opt.dt, 0.5 / slope_bound);
    const double r = dt / (dx * dx);

    std::vector<double> lower(n), diag(n), upper(n), rhs(n), v_new(n);
    long step = 0;
    for (;; ++step) {
        if (step >= opt.max_steps) {
            throw NoConvergence("steady-state relaxation did not settle");
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            rhs[i] = v[i] + dt * v[i] * (ax[i] - v[i]);
            lower[i] = -r;
            diag[i] = 1.0 + 2.0 * r;
            upper[i] = -r;
        }
        diag[0] = 1.0; upper[0] = 0.0; lower[0] = 0.0; rhs[0] = ax.front();
        diag[n - 1] = 1.0; lower[n - 1] = 0.0; upper[n - 1] = 0.0; rhs[n - 1] = ax.back();
        solve_tridiagonal(lower, diag, upper, rhs, v_new);

        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            delta = std::max(delta, std::abs(v_new[i] - v[i]));
        }
        v.swap(v_new);
        if (delta / dt < opt.settle_tol) break;
    }

    // return the central window with fourth-order sampled derivatives
    LimitStateSpace out;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = lo + i * dx;
        if (xi < x0 - 1e-12 || xi > x1 + 1e-12) continue;
        out.x.push_back(xi);
        out.v.push_back(v[i]);
        double d;
        if (i >= 2 && i + 2 < n) {
            d = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * dx);
        } else if (i >= 1 && i + 1 < n) {
            d = (v[i + 1] - v[i - 1]) / (2.0 * dx);
        } else {
            d = 0.0;
        }
        out.vp.push_back(d);
    }
    return out;
}

}  // namespace sfront
