#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sfront {

/// One time slice of the front-fixed field w(t, xi) on xi in [-L, 0].
/// Node i sits at xi = -L + i * dx with dx = L/N; w[N] (the front) is 0.
struct FrontFixedState {
    double t = 0.0;
    double h = 0.0;      // front position in the lab frame
    double h_dot = 0.0;  // front speed, -mu * w_xi(t, 0-)
    double L = 40.0;
    int N = 0;
    std::vector<double> w;  // N+1 values, w[N] == 0

    double dx() const { return L / N; }
    double xi(int i) const { return -L + i * dx(); }
};

/// Two-front slice on the Landau-mapped interval y in [-1, 1]:
/// y_i = -1 + i * dy, dy = 2/M, v[0] = v[M] = 0.
struct TwoFrontState {
    double t = 0.0;
    int M = 0;
    std::vector<double> v;  // M+1 values
    double g_minus = -1.0;
    double g_plus = 1.0;
    double gdot_minus = 0.0;
    double gdot_plus = 0.0;

    double dy() const { return 2.0 / M; }
    double y(int i) const { return -1.0 + i * dy(); }
    double half_width() const { return 0.5 * (g_plus - g_minus); }
    double midpoint() const { return 0.5 * (g_plus + g_minus); }
};

/// Time series of (t, h, h') plus sparse field snapshots and named scalar
/// diagnostic channels aligned with the time series.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> h;
    std::vector<double> h_dot;
    std::vector<FrontFixedState> snapshots;
    std::map<std::string, std::vector<double>> channels;

    double t_begin() const { return t.front(); }
    double t_end() const { return t.back(); }
    double span() const { return t.back() - t.front(); }
};

struct TwoFrontTrajectory {
    std::vector<double> t;
    std::vector<double> g_minus;
    std::vector<double> g_plus;
    std::vector<double> gdot_minus;
    std::vector<double> gdot_plus;
    std::vector<TwoFrontState> snapshots;
};

void write_trajectory_csv(const Trajectory& traj, std::ostream& os);
void write_snapshot_csv(const FrontFixedState& s, std::ostream& os);
void write_two_front_csv(const TwoFrontTrajectory& traj, std::ostream& os);

/// Parses the formats written above (used by the diagnose CLI).
Trajectory read_trajectory_csv(std::istream& is);
FrontFixedState read_snapshot_csv(std::istream& is);

}  // namespace sfront
