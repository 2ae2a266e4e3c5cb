#pragma once

#include <functional>
#include <vector>

#include "sfront/nonlinearity.hpp"
#include "sfront/semiwave.hpp"
#include "sfront/trajectory.hpp"

namespace sfront {

/// Front speed from the field: second-order one-sided difference at the
/// front node,  h' = -mu * (-4 w[N-1] + w[N-2]) / (2 dx),  using w[N] = 0.
double stefan_speed(const FrontFixedState& s, double mu);

/// Left boundary at xi = -L. neumann_zero reflects (fronts are flat far
/// behind after transients); dirichlet pins the node to a supplied limit
/// state evaluated at (t, x_abs) with x_abs = h(t) - L.
struct LeftBoundary {
    enum class Kind { neumann_zero, dirichlet };
    Kind kind = Kind::neumann_zero;
    std::function<double(double t, double x_abs)> value;

    static LeftBoundary neumann_zero() { return {}; }
    static LeftBoundary dirichlet(std::function<double(double, double)> v) {
        return {Kind::dirichlet, std::move(v)};
    }
    static LeftBoundary dirichlet_const(double v) {
        return dirichlet([v](double, double) { return v; });
    }
};

struct SolveParams {
    double mu = 1.0;
    double dt = 1e-3;   // output step; internally sub-stepped for stability
    double T_end = 10.0;
    LeftBoundary left_bc{};
    std::vector<double> snapshot_times;
    double safety = 0.5;     // factor on the stability guidance
    double tol_pos = 1e-12;  // undershoot below -tol_pos raises NonPositive
    /// Called after every output step.
    std::function<void(const FrontFixedState&, Trajectory&)> observer;
};

FrontFixedState make_initial_semiwave(const SemiWaveProfile& prof, double L, int N,
                                      double h0 = 0.0);
/// w = height on xi >= -support (support >= L means the whole domain),
/// zero elsewhere; the front node is forced to 0.
FrontFixedState make_initial_step(double height, double support, double L, int N,
                                  double h0 = 0.0);
/// Throws ShapeMismatch on wrong length or negative entries.
FrontFixedState make_initial_sampled(std::vector<double> w, double L,
                                     double h0 = 0.0);

/// Semi-implicit stepper for  w_t = w_xixi + h' w_xi + f(t, xi + h, w),
/// h' = -mu w_xi(t, 0-): diffusion implicit (tridiagonal solve), advection
/// explicit one-sided toward the upwind boundary, reaction through an
/// explicit fourth-order increment, h' lagged one sub-step. A single run
/// mutates only its own state; distinct runs share the immutable spec.
class OneFrontStepper {
public:
    OneFrontStepper(const NonlinearitySpec& spec, FrontFixedState init,
                    const SolveParams& params);

    /// Advances by params.dt (with automatic sub-stepping).
    void advance();
    const FrontFixedState& state() const { return state_; }
    double time() const { return state_.t; }

private:
    void substep(double dt);
    double stable_dt() const;

    const NonlinearitySpec& spec_;
    SolveParams params_;
    FrontFixedState state_;
    double slope_bound_;
    std::vector<double> stage_, k1_, k2_, k3_, k4_, rhs_, diag_, upper_, lower_;
};

Trajectory solve_one_front(const NonlinearitySpec& spec, FrontFixedState init,
                           const SolveParams& params);

// ---------------------------------------------------------------------------
// Two moving fronts, Landau-mapped to [-1, 1].

struct TwoFrontParams {
    double mu = 1.0;
    double dt = 1e-3;
    double T_end = 10.0;
    std::vector<double> snapshot_times;
    double safety = 0.5;
    double tol_pos = 1e-12;
    std::function<void(const TwoFrontState&, TwoFrontTrajectory&)> observer;
};

/// Samples u0 on [g_minus, g_plus]; endpoint values forced to 0.
TwoFrontState make_two_front_initial(const std::function<double(double)>& u0,
                                     double g_minus, double g_plus, int M);

class TwoFrontStepper {
public:
    TwoFrontStepper(const NonlinearitySpec& spec, TwoFrontState init,
                    const TwoFrontParams& params);
    void advance();
    const TwoFrontState& state() const { return state_; }

private:
    void substep(double dt);
    double stable_dt() const;
    void refresh_front_speeds();

    const NonlinearitySpec& spec_;
    TwoFrontParams params_;
    TwoFrontState state_;
    double slope_bound_;
    double collision_width_;  // 10 initial physical spacings
    std::vector<double> stage_, k1_, k2_, k3_, k4_, rhs_, diag_, upper_, lower_;
};

TwoFrontTrajectory solve_two_front(const NonlinearitySpec& spec, TwoFrontState init,
                                   const TwoFrontParams& params);

}  // namespace sfront
