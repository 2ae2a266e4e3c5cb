#include "sfront/fbsolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sfront/errors.hpp"

namespace sfront {

namespace {

// Thomas algorithm; diag/upper/lower/rhs are overwritten.
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

// out[i] = f(t, x0 + i*dx_abs, base[i] + coef*incr[i]) for i in [0, n].
// The kind switch sits outside the node loops; per-kind terms that do not
// depend on the node (c(t), the phase blend) are hoisted.
void reaction_stage(const NonlinearitySpec& spec, double t, double x0, double dx_abs,
                    const std::vector<double>& base, const std::vector<double>& incr,
                    double coef, std::vector<double>& out) {
    const std::size_t n = base.size();
    const double cap = spec.u_cap();
    auto arg = [&](std::size_t i) {
        return std::clamp(base[i] + coef * incr[i], 0.0, cap);
    };
    switch (spec.kind()) {
        case ReactionKind::homogeneous: {
            const HomogeneousF& f = spec.homogeneous_f();
            for (std::size_t i = 0; i < n; ++i) out[i] = f.value(arg(i));
            break;
        }
        case ReactionKind::kpp_time_ap: {
            const double c = spec.signal().eval(t);
            for (std::size_t i = 0; i < n; ++i) {
                const double u = arg(i);
                out[i] = u * (c - u);
            }
            break;
        }
        case ReactionKind::kpp_space_ap: {
            const QuasiPeriodicSignal& a = spec.signal();
            for (std::size_t i = 0; i < n; ++i) {
                const double u = arg(i);
                out[i] = u * (a.eval(x0 + i * dx_abs) - u);
            }
            break;
        }
        case ReactionKind::two_phase_time: {
            const TwoPhaseF& tp = spec.two_phase_f();
            const double b = tp.blend(t);
            if (b <= 0.0) {
                for (std::size_t i = 0; i < n; ++i) out[i] = tp.f1.value(arg(i));
            } else if (b >= 1.0) {
                for (std::size_t i = 0; i < n; ++i) out[i] = tp.f2.value(arg(i));
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    const double u = arg(i);
                    out[i] = (1.0 - b) * tp.f1.value(u) + b * tp.f2.value(u);
                }
            }
            break;
        }
    }
}

// Classic fourth-order increment of dw/dt = f(t, x(t), w) per node, with the
// node's absolute position moving linearly at the lagged front speed.
// Result accumulates into incr (same length as w).
struct Rk4Buffers {
    std::vector<double>*k1, *k2, *k3, *k4;
};

void reaction_increment(const NonlinearitySpec& spec, double t, double dt,
                        double x0, double x0_speed, double dx_abs,
                        const std::vector<double>& w, Rk4Buffers b,
                        std::vector<double>& incr) {
    const double th = t + 0.5 * dt;
    const double te = t + dt;
    const double x0h = x0 + x0_speed * 0.5 * dt;
    const double x0e = x0 + x0_speed * dt;
    reaction_stage(spec, t, x0, dx_abs, w, w, 0.0, *b.k1);
    reaction_stage(spec, th, x0h, dx_abs, w, *b.k1, 0.5 * dt, *b.k2);
    reaction_stage(spec, th, x0h, dx_abs, w, *b.k2, 0.5 * dt, *b.k3);
    reaction_stage(spec, te, x0e, dx_abs, w, *b.k3, dt, *b.k4);
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
        incr[i] = ((*b.k1)[i] + 2.0 * (*b.k2)[i] + 2.0 * (*b.k3)[i] + (*b.k4)[i]) / 6.0;
    }
}

// Second-order one-sided gradient toward the upwind boundary. speed is the
// advection coefficient multiplying w_xi; speed >= 0 pulls information from
// the front side (larger xi). Interior nodes only; callers fix boundaries.
inline double upwind_gradient(const std::vector<double>& w, std::size_t i,
                              std::size_t last, double inv2dx, double speed) {
    if (speed >= 0.0) {
        if (i + 2 <= last) {
            return (-3.0 * w[i] + 4.0 * w[i + 1] - w[i + 2]) * inv2dx;
        }
        return (w[i + 1] - w[i - 1]) * inv2dx;  // central fallback at last-1
    }
    if (i >= 2) {
        return (3.0 * w[i] - 4.0 * w[i - 1] + w[i - 2]) * inv2dx;
    }
    return (w[i + 1] - w[i - 1]) * inv2dx;
}

void enforce_positivity(std::vector<double>& w, double tol_pos, double cap) {
    for (double& v : w) {
        if (v < 0.0) {
            if (v < -tol_pos) {
                throw NonPositive("field undershoot " + std::to_string(v) +
                                  " beyond tolerance; refine dt/dx");
            }
            v = 0.0;
        }
    }
    for (double v : w) {
        if (!(std::abs(v) <= 10.0 * cap)) {
            throw BlowUp("field magnitude exceeded 10*u_cap: scheme instability");
        }
    }
}

}  // namespace

double stefan_speed(const FrontFixedState& s, double mu) {
    const int N = s.N;
    return -mu * (-4.0 * s.w[N - 1] + s.w[N - 2]) / (2.0 * s.dx());
}

// ---------------------------------------------------------------------------
// Initial data

FrontFixedState make_initial_semiwave(const SemiWaveProfile& prof, double L, int N,
                                      double h0) {
    FrontFixedState s;
    s.L = L;
    s.N = N;
    s.h = h0;
    s.w.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        s.w[i] = std::max(0.0, prof.samples.eval_q(-s.xi(i)));
    }
    s.w[N] = 0.0;
    s.h_dot = stefan_speed(s, prof.mu);
    return s;
}

FrontFixedState make_initial_step(double height, double support, double L, int N,
                                  double h0) {
    FrontFixedState s;
    s.L = L;
    s.N = N;
    s.h = h0;
    s.w.assign(N + 1, 0.0);
    for (int i = 0; i < N; ++i) {
        if (s.xi(i) >= -support) s.w[i] = height;
    }
    return s;
}

FrontFixedState make_initial_sampled(std::vector<double> w, double L, double h0) {
    if (w.size() < 4) {
        throw ShapeMismatch("sampled initial data needs at least 4 nodes");
    }
    for (double v : w) {
        if (v < 0.0) throw ShapeMismatch("sampled initial data has a negative entry");
    }
    FrontFixedState s;
    s.L = L;
    s.N = static_cast<int>(w.size()) - 1;
    s.h = h0;
    s.w = std::move(w);
    s.w[s.N] = 0.0;
    return s;
}

// ---------------------------------------------------------------------------
// One front

OneFrontStepper::OneFrontStepper(const NonlinearitySpec& spec, FrontFixedState init,
                                 const SolveParams& params)
    : spec_(spec), params_(params), state_(std::move(init)) {
    if (state_.N < 3) throw ShapeMismatch("grid needs N >= 3");
    slope_bound_ = spec_.reaction_slope_bound();
    state_.h_dot = stefan_speed(state_, params_.mu);
    const std::size_t n = state_.w.size();
    stage_.resize(n);
    k1_.resize(n); k2_.resize(n); k3_.resize(n); k4_.resize(n);
    rhs_.resize(n); diag_.resize(n); upper_.resize(n); lower_.resize(n);
}

double OneFrontStepper::stable_dt() const {
    const double dx = state_.dx();
    double dt = 1.0 / (2.0 * std::max(slope_bound_, 1e-12));
    const double speed = std::abs(state_.h_dot);
    if (speed > 0.0) dt = std::min(dt, dx / (2.0 * speed));
    return params_.safety * dt;
}

void OneFrontStepper::advance() {
    const double t_target = state_.t + params_.dt;
    int guard = 0;
    while (state_.t < t_target - 1e-12) {
        const double dt = std::min(stable_dt(), t_target - state_.t);
        if (!(dt > 1e-13)) throw Error("time step underflow: front speed diverged");
        substep(dt);
        if (++guard > 2000000) throw Error("sub-step limit exceeded");
    }
    state_.t = t_target;  // absorb rounding in the output clock
}

void OneFrontStepper::substep(double dt) {
    const int N = state_.N;
    const double dx = state_.dx();
    const double inv2dx = 1.0 / (2.0 * dx);
    const double hd = state_.h_dot;  // lagged one step
    const std::vector<double>& w = state_.w;

    // reaction increment; node 0 sits at absolute position h - L
    reaction_increment(spec_, state_.t, dt, state_.h - state_.L, hd, dx, w,
                       {&k1_, &k2_, &k3_, &k4_}, stage_);

    // explicit advection + reaction
    for (int i = 1; i < N; ++i) {
        const double grad = upwind_gradient(w, i, N, inv2dx, hd);
        rhs_[i] = w[i] + dt * (hd * grad + stage_[i]);
    }

    // implicit diffusion rows
    const double r = dt / (dx * dx);
    for (int i = 1; i < N; ++i) {
        lower_[i] = -r;
        diag_[i] = 1.0 + 2.0 * r;
        upper_[i] = -r;
    }
    const double h_new = state_.h + dt * hd;
    if (params_.left_bc.kind == LeftBoundary::Kind::neumann_zero) {
        // ghost reflection: w_xi(-L) = 0, advection vanishes at the wall
        diag_[0] = 1.0 + 2.0 * r;
        upper_[0] = -2.0 * r;
        rhs_[0] = w[0] + dt * stage_[0];
    } else {
        diag_[0] = 1.0;
        upper_[0] = 0.0;
        rhs_[0] = params_.left_bc.value(state_.t + dt, h_new - state_.L);
    }
    lower_[0] = 0.0;
    diag_[N] = 1.0;
    lower_[N] = 0.0;
    upper_[N] = 0.0;
    rhs_[N] = 0.0;

    solve_tridiagonal(lower_, diag_, upper_, rhs_, state_.w);
    enforce_positivity(state_.w, params_.tol_pos, spec_.u_cap());
    state_.w[N] = 0.0;

    state_.t += dt;
    state_.h = h_new;
    state_.h_dot = stefan_speed(state_, params_.mu);
}

Trajectory solve_one_front(const NonlinearitySpec& spec, FrontFixedState init,
                           const SolveParams& params) {
    OneFrontStepper stepper(spec, std::move(init), params);
    Trajectory traj;
    auto record = [&](const FrontFixedState& s) {
        traj.t.push_back(s.t);
        traj.h.push_back(s.h);
        traj.h_dot.push_back(s.h_dot);
    };
    std::size_t next_snap = 0;
    auto snapshot_due = [&](double t) {
        if (next_snap >= params.snapshot_times.size()) return false;
        return t >= params.snapshot_times[next_snap] - 0.5 * params.dt;
    };

    record(stepper.state());
    if (snapshot_due(stepper.state().t)) {
        traj.snapshots.push_back(stepper.state());
        ++next_snap;
    }
    if (params.observer) params.observer(stepper.state(), traj);

    const auto n_steps = static_cast<long>(std::llround(params.T_end / params.dt));
    for (long k = 0; k < n_steps; ++k) {
        stepper.advance();
        record(stepper.state());
        if (snapshot_due(stepper.state().t)) {
            traj.snapshots.push_back(stepper.state());
            ++next_snap;
        }
        if (params.observer) params.observer(stepper.state(), traj);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Two fronts

TwoFrontState make_two_front_initial(const std::function<double(double)>& u0,
                                     double g_minus, double g_plus, int M) {
    if (!(g_plus > g_minus)) throw ShapeMismatch("required: g_minus < g_plus");
    if (M < 4) throw ShapeMismatch("grid needs M >= 4");
    TwoFrontState s;
    s.M = M;
    s.g_minus = g_minus;
    s.g_plus = g_plus;
    s.v.resize(M + 1);
    for (int i = 0; i <= M; ++i) {
        const double x = s.midpoint() + s.half_width() * s.y(i);
        const double v = u0(x);
        if (v < 0.0) throw ShapeMismatch("two-front initial data has a negative entry");
        s.v[i] = v;
    }
    s.v[0] = 0.0;
    s.v[M] = 0.0;
    return s;
}

TwoFrontStepper::TwoFrontStepper(const NonlinearitySpec& spec, TwoFrontState init,
                                 const TwoFrontParams& params)
    : spec_(spec), params_(params), state_(std::move(init)) {
    slope_bound_ = spec_.reaction_slope_bound();
    collision_width_ = 10.0 * state_.half_width() * state_.dy();
    refresh_front_speeds();
    const std::size_t n = state_.v.size();
    stage_.resize(n);
    k1_.resize(n); k2_.resize(n); k3_.resize(n); k4_.resize(n);
    rhs_.resize(n); diag_.resize(n); upper_.resize(n); lower_.resize(n);
}

void TwoFrontStepper::refresh_front_speeds() {
    const int M = state_.M;
    const double s = state_.half_width();
    const double inv2dy = 1.0 / (2.0 * state_.dy());
    const double vy_plus = (-4.0 * state_.v[M - 1] + state_.v[M - 2]) * inv2dy;
    const double vy_minus = (4.0 * state_.v[1] - state_.v[2]) * inv2dy;
    state_.gdot_plus = -params_.mu * vy_plus / s;
    state_.gdot_minus = -params_.mu * vy_minus / s;
}

double TwoFrontStepper::stable_dt() const {
    const double s = state_.half_width();
    const double m_dot = 0.5 * (state_.gdot_plus + state_.gdot_minus);
    const double s_dot = 0.5 * (state_.gdot_plus - state_.gdot_minus);
    const double a_max = (std::abs(m_dot) + std::abs(s_dot)) / s;
    double dt = 1.0 / (2.0 * std::max(slope_bound_, 1e-12));
    if (a_max > 0.0) dt = std::min(dt, state_.dy() / (2.0 * a_max));
    return params_.safety * dt;
}

void TwoFrontStepper::advance() {
    const double t_target = state_.t + params_.dt;
    int guard = 0;
    while (state_.t < t_target - 1e-12) {
        const double dt = std::min(stable_dt(), t_target - state_.t);
        if (!(dt > 1e-13)) throw Error("time step underflow: front speed diverged");
        substep(dt);
        if (++guard > 2000000) throw Error("sub-step limit exceeded");
    }
    state_.t = t_target;
}

void TwoFrontStepper::substep(double dt) {
    const int M = state_.M;
    const double dy = state_.dy();
    const double inv2dy = 1.0 / (2.0 * dy);
    const double s = state_.half_width();
    const double m = state_.midpoint();
    const double s_dot = 0.5 * (state_.gdot_plus - state_.gdot_minus);
    const double m_dot = 0.5 * (state_.gdot_plus + state_.gdot_minus);
    const std::vector<double>& v = state_.v;

    // reaction on the moving physical positions x = m(t) + s(t) y; the map
    // is frozen to linear motion within the sub-step
    reaction_increment(spec_, state_.t, dt, m - s, m_dot - s_dot, s * dy, v,
                       {&k1_, &k2_, &k3_, &k4_}, stage_);

    for (int i = 1; i < M; ++i) {
        const double a = (m_dot + state_.y(i) * s_dot) / s;
        const double grad = (a == 0.0) ? 0.0 : upwind_gradient(v, i, M, inv2dy, a);
        rhs_[i] = v[i] + dt * (a * grad + stage_[i]);
    }

    const double r = dt / (s * s * dy * dy);
    for (int i = 1; i < M; ++i) {
        lower_[i] = -r;
        diag_[i] = 1.0 + 2.0 * r;
        upper_[i] = -r;
    }
    diag_[0] = 1.0; upper_[0] = 0.0; lower_[0] = 0.0; rhs_[0] = 0.0;
    diag_[M] = 1.0; lower_[M] = 0.0; upper_[M] = 0.0; rhs_[M] = 0.0;

    solve_tridiagonal(lower_, diag_, upper_, rhs_, state_.v);
    enforce_positivity(state_.v, params_.tol_pos, spec_.u_cap());
    state_.v[0] = 0.0;
    state_.v[M] = 0.0;

    state_.t += dt;
    state_.g_plus += dt * state_.gdot_plus;
    state_.g_minus += dt * state_.gdot_minus;
    if (state_.g_plus - state_.g_minus < collision_width_) {
        throw FrontCollision("front gap below 10 initial spacings: domain degenerates");
    }
    refresh_front_speeds();
}

TwoFrontTrajectory solve_two_front(const NonlinearitySpec& spec, TwoFrontState init,
                                   const TwoFrontParams& params) {
    TwoFrontStepper stepper(spec, std::move(init), params);
    TwoFrontTrajectory traj;
    auto record = [&](const TwoFrontState& s) {
        traj.t.push_back(s.t);
        traj.g_minus.push_back(s.g_minus);
        traj.g_plus.push_back(s.g_plus);
        traj.gdot_minus.push_back(s.gdot_minus);
        traj.gdot_plus.push_back(s.gdot_plus);
    };
    std::size_t next_snap = 0;
    auto snapshot_due = [&](double t) {
        if (next_snap >= params.snapshot_times.size()) return false;
        return t >= params.snapshot_times[next_snap] - 0.5 * params.dt;
    };

    record(stepper.state());
    if (snapshot_due(stepper.state().t)) {
        traj.snapshots.push_back(stepper.state());
        ++next_snap;
    }
    if (params.observer) params.observer(stepper.state(), traj);

    const auto n_steps = static_cast<long>(std::llround(params.T_end / params.dt));
    for (long k = 0; k < n_steps; ++k) {
        stepper.advance();
        record(stepper.state());
        if (snapshot_due(stepper.state().t)) {
            traj.snapshots.push_back(stepper.state());
            ++next_snap;
        }
        if (params.observer) params.observer(stepper.state(), traj);
    }
    return traj;
}

}  // namespace sfront
