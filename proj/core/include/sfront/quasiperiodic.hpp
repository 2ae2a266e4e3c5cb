#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sfront {

/// Finite trigonometric sum  mean + sum_i a_i * cos(w_i s + phi_i).
///
/// With at least one irrational frequency ratio the signal is genuinely
/// non-periodic; it is exact and needs no seeds or tables.
class QuasiPeriodicSignal {
public:
    struct Mode {
        double amplitude = 0.0;
        double frequency = 1.0;  // must be > 0
        double phase = 0.0;
    };

    QuasiPeriodicSignal() = default;
    QuasiPeriodicSignal(double mean, std::vector<Mode> modes);

    static QuasiPeriodicSignal constant(double value) { return {value, {}}; }

    double eval(double s) const;

    /// Exact antiderivative: integral of the signal over [0, s].
    double integral(double s) const;

    double mean() const { return mean_; }
    const std::vector<Mode>& modes() const { return modes_; }

    /// min/max over all s (mean -/+ sum of |amplitudes|).
    double lower_bound() const;
    double upper_bound() const;

    /// Bound on |integral(s) - mean*s|, i.e. sum |a_i| / w_i.
    double oscillation_integral_bound() const;

    nlohmann::json to_json() const;
    static QuasiPeriodicSignal from_json(const nlohmann::json& j);

private:
    double mean_ = 0.0;
    std::vector<Mode> modes_;
};

}  // namespace sfront
