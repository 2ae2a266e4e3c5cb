#include "sfront/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "sfront/errors.hpp"

namespace sfront {

SpeedReport estimate_global_mean_speed(std::span<const double> t,
                                       std::span<const double> h,
                                       double delta_min, int max_points) {
    const std::size_t n = t.size();
    if (n < 2 || t[n - 1] - t[0] < 2.0 * delta_min) {
        throw WindowTooShort("trajectory must span at least 2*delta_min");
    }
    // decimate to keep the pairwise set small
    const std::size_t stride = std::max<std::size_t>(1, n / max_points);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);

    SpeedReport rep;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const double dt = t[idx[b]] - t[idx[a]];
            if (dt < delta_min) continue;
            const double quot = std::abs(h[idx[b]] - h[idx[a]]) / dt;
            rep.samples.push_back({t[idx[b]], t[idx[a]], quot});
            lo = std::min(lo, quot);
            hi = std::max(hi, quot);
            sum += quot;
        }
    }
    if (rep.samples.empty()) {
        throw WindowTooShort("no sample pair with gap >= delta_min");
    }
    rep.spread = hi - lo;
    rep.mean_estimate = sum / static_cast<double>(rep.samples.size());
    return rep;
}

SpeedReport estimate_global_mean_speed(const Trajectory& traj, double delta_min) {
    return estimate_global_mean_speed(traj.t, traj.h, delta_min);
}

nlohmann::json SpeedReport::to_json() const {
    return {{"spread", spread},
            {"mean_estimate", mean_estimate},
            {"n_samples", samples.size()}};
}

DriftReport drift(std::span<const double> t, std::span<const double> h, double c_ref) {
    DriftReport rep;
    rep.c_ref = c_ref;
    const std::size_t n = t.size();
    const double t_tail = t[0] + 0.75 * (t[n - 1] - t[0]);

    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (t[i] >= t_tail) {
            sum += h[i] - c_ref * t[i];
            ++count;
        }
    }
    rep.g_hat = sum / static_cast<double>(std::max<std::size_t>(count, 1));

    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(h[i] - c_ref * t[i] - rep.g_hat);
        rep.sup_drift = std::max(rep.sup_drift, d);
        if (t[i] >= t_tail) rep.tail_drift = std::max(rep.tail_drift, d);
    }
    return rep;
}

DriftReport drift(const Trajectory& traj, double c_ref) {
    return drift(traj.t, traj.h, c_ref);
}

nlohmann::json DriftReport::to_json() const {
    return {{"c_ref", c_ref},
            {"g_hat", g_hat},
            {"sup_drift", sup_drift},
            {"tail_drift", tail_drift}};
}

double profile_distance(const FrontFixedState& state, const SemiWaveProfile& prof) {
    double sup = 0.0;
    for (int i = 0; i <= state.N; ++i) {
        const double q = prof.samples.eval_q(-state.xi(i));
        sup = std::max(sup, std::abs(state.w[i] - q));
    }
    return sup;
}

double part_metric(std::span<const double> w1, std::span<const double> w2,
                   std::pair<double, double> slope_at_0) {
    const std::size_t n = w1.size();
    double ratio = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (w1[i] > w2[i] + 1e-12) {
            throw NotOrdered("w1 <= w2 fails at node " + std::to_string(i));
        }
        if (i == 0) continue;  // the left boundary may be pinned to the limit state
        if (!(w1[i] > 0.0)) {
            throw DegenerateSlope("w1 must be positive on interior nodes");
        }
        ratio = std::max(ratio, w2[i] / w1[i]);
    }
    if (!(slope_at_0.first < 0.0) || !(slope_at_0.second < 0.0)) {
        throw DegenerateSlope("one-sided slopes at the front must be negative");
    }
    // the 0/0 ratio at the shared zero resolves to the slope ratio
    ratio = std::max(ratio, slope_at_0.second / slope_at_0.first);
    return std::log(ratio);
}

double level_set_width(const FrontFixedState& state, double lambda) {
    // scan from the front toward the interior for the nearest crossing
    for (int i = state.N; i-- > 0;) {
        if (state.w[i] >= lambda) {
            const double w_hi = state.w[i];
            const double w_lo = state.w[i + 1];
            const double frac = (w_hi > w_lo) ? (w_hi - lambda) / (w_hi - w_lo) : 0.0;
            const double xi_cross = state.xi(i) + frac * state.dx();
            return -xi_cross;
        }
    }
    throw LevelNotAttained("field never reaches level " + std::to_string(lambda));
}

double level_set_width(const Trajectory& traj, double lambda) {
    if (traj.snapshots.empty()) {
        throw LevelNotAttained("trajectory holds no snapshots");
    }
    double sup = 0.0;
    for (const FrontFixedState& s : traj.snapshots) {
        sup = std::max(sup, level_set_width(s, lambda));
    }
    return sup;
}

OrderingReport verify_ordering(const Trajectory& a, const Trajectory& b, double tol) {
    OrderingReport rep;
    rep.first_violation_time = std::numeric_limits<double>::quiet_NaN();
    auto note = [&](double t, double violation, double& slot) {
        slot = std::max(slot, violation);
        if (violation > tol) {
            if (rep.pass) rep.first_violation_time = t;
            rep.pass = false;
        }
    };
    const std::size_t n = std::min(a.t.size(), b.t.size());
    for (std::size_t i = 0; i < n; ++i) {
        note(a.t[i], a.h[i] - b.h[i], rep.max_front_violation);
    }
    const std::size_t m = std::min(a.snapshots.size(), b.snapshots.size());
    for (std::size_t k = 0; k < m; ++k) {
        const auto& sa = a.snapshots[k];
        const auto& sb = b.snapshots[k];
        for (int i = 0; i <= sa.N; ++i) {
            note(sa.t, sa.w[i] - sb.w[i], rep.max_field_violation);
        }
    }
    return rep;
}

nlohmann::json OrderingReport::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["max_front_violation"] = max_front_violation;
    j["max_field_violation"] = max_field_violation;
    if (!pass) j["first_violation_time"] = first_violation_time;
    return j;
}

double energy_functional(const FrontFixedState& state, double c_star,
                         const HomogeneousF& f) {
    const int N = state.N;
    const double dx = state.dx();
    const double b = state.h - c_star * state.t;  // front position in co-moving frame

    // integrand exp(c* z) (w_z^2/2 - F(w)) with z = xi + b
    auto integrand = [&](int i) {
        double wz;
        if (i == 0) {
            wz = (state.w[1] - state.w[0]) / dx;
        } else if (i == N) {
            wz = (-4.0 * state.w[N - 1] + state.w[N - 2]) / (2.0 * dx);
        } else {
            wz = (state.w[i + 1] - state.w[i - 1]) / (2.0 * dx);
        }
        return std::exp(c_star * (state.xi(i) + b)) *
               (0.5 * wz * wz - f.antiderivative(state.w[i]));
    };

    double acc = 0.5 * (integrand(0) + integrand(N));
    for (int i = 1; i < N; ++i) acc += integrand(i);
    return acc * dx;
}

}  // namespace sfront
