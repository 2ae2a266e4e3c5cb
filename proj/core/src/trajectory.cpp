#include "sfront/trajectory.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sfront {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << "t,h,h_dot";
    for (const auto& [name, series] : traj.channels) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        os << num17(traj.t[i]) << ',' << num17(traj.h[i]) << ','
           << num17(traj.h_dot[i]);
        for (const auto& [name, series] : traj.channels) {
            os << ',' << (i < series.size() ? num17(series[i]) : "");
        }
        os << '\n';
    }
}

void write_snapshot_csv(const FrontFixedState& s, std::ostream& os) {
    os << "# t=" << num17(s.t) << " h=" << num17(s.h) << " h_dot=" << num17(s.h_dot)
       << " L=" << num17(s.L) << " N=" << s.N << '\n';
    os << "xi,w\n";
    for (int i = 0; i <= s.N; ++i) {
        os << num17(s.xi(i)) << ',' << num17(s.w[i]) << '\n';
    }
}

void write_two_front_csv(const TwoFrontTrajectory& traj, std::ostream& os) {
    os << "t,g_minus,g_plus,gdot_minus,gdot_plus\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        os << num17(traj.t[i]) << ',' << num17(traj.g_minus[i]) << ','
           << num17(traj.g_plus[i]) << ',' << num17(traj.gdot_minus[i]) << ','
           << num17(traj.gdot_plus[i]) << '\n';
    }
}

Trajectory read_trajectory_csv(std::istream& is) {
    Trajectory traj;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty trajectory csv");
    std::vector<std::string> names;
    {
        std::stringstream header(line);
        std::string cell;
        while (std::getline(header, cell, ',')) names.push_back(cell);
    }
    if (names.size() < 3 || names[0] != "t") {
        throw std::runtime_error("unexpected trajectory csv header");
    }
    for (std::size_t k = 3; k < names.size(); ++k) traj.channels[names[k]] = {};
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(row, cell, ',')) {
            const double v = cell.empty() ? 0.0 : std::stod(cell);
            if (col == 0) traj.t.push_back(v);
            else if (col == 1) traj.h.push_back(v);
            else if (col == 2) traj.h_dot.push_back(v);
            else traj.channels[names[col]].push_back(v);
            ++col;
        }
    }
    return traj;
}

FrontFixedState read_snapshot_csv(std::istream& is) {
    FrontFixedState s;
    std::string line;
    if (!std::getline(is, line) || line.empty() || line[0] != '#') {
        throw std::runtime_error("snapshot csv must start with a '#' header");
    }
    {
        std::stringstream header(line.substr(1));
        std::string tok;
        while (header >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "t") s.t = std::stod(val);
            else if (key == "h") s.h = std::stod(val);
            else if (key == "h_dot") s.h_dot = std::stod(val);
            else if (key == "L") s.L = std::stod(val);
            else if (key == "N") s.N = std::stoi(val);
        }
    }
    std::getline(is, line);  // column header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        s.w.push_back(std::stod(line.substr(comma + 1)));
    }
    if (s.N == 0) s.N = static_cast<int>(s.w.size()) - 1;
    return s;
}

}  // namespace sfront
