#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfront/nonlinearity.hpp"
#include "sfront/semiwave.hpp"
#include "sfront/trajectory.hpp"

namespace sfront {

/// Pairwise front-speed quotients (h(t)-h(s))/(t-s) over gaps >= delta_min.
/// The spread quantifies whether a single propagation rate exists over the
/// window; it stays at discretization level for a rigid front and stays
/// bounded away from zero when the run mixes two genuinely different
/// speeds.
struct SpeedReport {
    struct Sample {
        double t = 0.0, s = 0.0, quotient = 0.0;
    };
    std::vector<Sample> samples;
    double spread = 0.0;
    double mean_estimate = 0.0;

    nlohmann::json to_json() const;
};

SpeedReport estimate_global_mean_speed(std::span<const double> t,
                                       std::span<const double> h,
                                       double delta_min, int max_points = 512);
SpeedReport estimate_global_mean_speed(const Trajectory& traj, double delta_min);

/// Offset-corrected front drift against a reference speed: G_hat is the
/// tail mean of h - c_ref t, sup_drift the sup of |h - c_ref t - G_hat|
/// over the whole window and tail_drift the same over the last quarter.
struct DriftReport {
    double c_ref = 0.0;
    double g_hat = 0.0;
    double sup_drift = 0.0;
    double tail_drift = 0.0;

    nlohmann::json to_json() const;
};

DriftReport drift(std::span<const double> t, std::span<const double> h, double c_ref);
DriftReport drift(const Trajectory& traj, double c_ref);

/// sup over grid nodes of |w(xi) - q(-xi)|.
double profile_distance(const FrontFixedState& state, const SemiWaveProfile& prof);

/// Part metric between ordered positive fields vanishing at the front:
/// ln of the largest of the nodewise ratios w2/w1, the one-sided slope
/// ratio at the shared zero, and 1. Preconditions: w1 <= w2 + 1e-12
/// nodewise (NotOrdered), w1 > 0 on interior nodes, both slopes negative
/// (DegenerateSlope).
double part_metric(std::span<const double> w1, std::span<const double> w2,
                   std::pair<double, double> slope_at_0);

/// Distance from the front of the level-lambda crossing nearest to it, per
/// snapshot; returns the sup over snapshots. Throws LevelNotAttained when
/// a snapshot never crosses the level.
double level_set_width(const Trajectory& traj, double lambda);
double level_set_width(const FrontFixedState& state, double lambda);

/// Nodewise and front ordering between two runs on matching grids/times.
struct OrderingReport {
    bool pass = true;
    double max_front_violation = 0.0;
    double max_field_violation = 0.0;
    double first_violation_time = 0.0;

    nlohmann::json to_json() const;
};

OrderingReport verify_ordering(const Trajectory& a, const Trajectory& b, double tol);

/// Weighted energy of the co-moving field: the trapezoid quadrature of
/// exp(c* z) (w_xi^2/2 - F(w)) over the domain, z = xi + h(t) - c* t. The
/// exponential weight makes the truncated left tail negligible.
double energy_functional(const FrontFixedState& state, double c_star,
                         const HomogeneousF& f);

}  // namespace sfront
