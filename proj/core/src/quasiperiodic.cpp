#include "sfront/quasiperiodic.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace sfront {

QuasiPeriodicSignal::QuasiPeriodicSignal(double mean, std::vector<Mode> modes)
    : mean_(mean), modes_(std::move(modes)) {
    for (const Mode& m : modes_) {
        if (!(m.frequency > 0.0)) {
            throw std::invalid_argument("QuasiPeriodicSignal: frequency must be > 0");
        }
    }
}

double QuasiPeriodicSignal::eval(double s) const {
    double v = mean_;
    for (const Mode& m : modes_) {
        v += m.amplitude * std::cos(m.frequency * s + m.phase);
    }
    return v;
}

double QuasiPeriodicSignal::integral(double s) const {
    double v = mean_ * s;
    for (const Mode& m : modes_) {
        v += m.amplitude / m.frequency *
             (std::sin(m.frequency * s + m.phase) - std::sin(m.phase));
    }
    return v;
}

double QuasiPeriodicSignal::lower_bound() const {
    double v = mean_;
    for (const Mode& m : modes_) v -= std::abs(m.amplitude);
    return v;
}

double QuasiPeriodicSignal::upper_bound() const {
    double v = mean_;
    for (const Mode& m : modes_) v += std::abs(m.amplitude);
    return v;
}

double QuasiPeriodicSignal::oscillation_integral_bound() const {
    double v = 0.0;
    for (const Mode& m : modes_) v += std::abs(m.amplitude) / m.frequency;
    return v;
}

nlohmann::json QuasiPeriodicSignal::to_json() const {
    nlohmann::json j;
    j["mean"] = mean_;
    j["modes"] = nlohmann::json::array();
    for (const Mode& m : modes_) {
        j["modes"].push_back({m.amplitude, m.frequency, m.phase});
    }
    return j;
}

QuasiPeriodicSignal QuasiPeriodicSignal::from_json(const nlohmann::json& j) {
    std::vector<Mode> modes;
    if (j.contains("modes")) {
        for (const auto& row : j.at("modes")) {
            Mode m;
            m.amplitude = row.at(0).get<double>();
            m.frequency = row.at(1).get<double>();
            m.phase = row.size() > 2 ? row.at(2).get<double>() : 0.0;
            modes.push_back(m);
        }
    }
    return {j.at("mean").get<double>(), std::move(modes)};
}

}  // namespace sfront
