#pragma once

#include <vector>

#include "sfront/quasiperiodic.hpp"

namespace sfront {

/// Sampled positive solution u_c(t) of u' = u(c(t) - u) on a time window,
/// evaluated from the closed form 1/u_c(t) = integral over s <= t of
/// exp(-integral of c over [s, t]) with the lower limit truncated at t - H.
struct LimitStateTime {
    std::vector<double> t;
    std::vector<double> u;
    double horizon = 0.0;  // truncation H actually used

    double dt() const { return t[1] - t[0]; }
    /// Hermite evaluation using the exact slopes u' = u(c - u).
    double eval(double tt) const;

    QuasiPeriodicSignal forcing;  // the c(t) the state was computed for
};

/// Throws MeanConditionViolation unless mean(c) > 0. The horizon H is sized
/// so the truncated tail is below tail_tol.
LimitStateTime compute_uc(const QuasiPeriodicSignal& c, double t0, double t1,
                          double sample_dt = 1e-3, double tail_tol = 1e-10);

/// Sampled positive steady state v_a(x) of v'' + v(a(x) - v) = 0 on a
/// window, obtained by parabolic relaxation from the constant
/// super-solution sup a on a padded interval with Dirichlet v = a at the
/// padded ends; only the central window is returned.
struct LimitStateSpace {
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> vp;  // sampled derivative, for Hermite evaluation

    double dx() const { return x[1] - x[0]; }
    double eval(double xx) const;
};

struct ComputeVaOptions {
    double dx = 0.01;
    double pad = 30.0;
    double dt = 0.05;
    double settle_tol = 1e-10;  // on max|dv|/dt
    long max_steps = 200000;
};

/// Throws PositivityViolation when inf a <= 0 and NoConvergence when the
/// relaxation fails to settle within max_steps.
LimitStateSpace compute_va(const QuasiPeriodicSignal& a, double x0, double x1,
                           const ComputeVaOptions& opt = {});

}  // namespace sfront
