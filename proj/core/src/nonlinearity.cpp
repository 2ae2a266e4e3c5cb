#include "sfront/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <nlohmann/json.hpp>

#include "sfront/errors.hpp"

namespace sfront {

namespace {

constexpr double kSignTol = 1e-12;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// HomogeneousF

HomogeneousF HomogeneousF::logistic() {
    return polynomial({1.0, -1.0}, "logistic");
}

HomogeneousF HomogeneousF::bistable(double theta) {
    // u(1-u)(u-theta) = -theta u + (1+theta) u^2 - u^3
    return polynomial({-theta, 1.0 + theta, -1.0},
                      "bistable(" + std::to_string(theta) + ")");
}

HomogeneousF HomogeneousF::combustion(double theta) {
    HomogeneousF f;
    f.rep_ = Rep::combustion;
    f.theta_ = theta;
    f.name_ = "combustion(" + std::to_string(theta) + ")";
    return f;
}

HomogeneousF HomogeneousF::polynomial(std::vector<double> coeffs, std::string name) {
    HomogeneousF f;
    f.rep_ = Rep::polynomial;
    f.coeffs_ = std::move(coeffs);
    f.name_ = name.empty() ? "poly" : std::move(name);
    return f;
}

double HomogeneousF::value(double u) const {
    if (rep_ == Rep::polynomial) {
        // Horner on u * (c_1 + c_2 u + ...) so that f(0) == 0 exactly.
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
        return u * acc;
    }
    if (u <= theta_) return 0.0;
    return (u - theta_) * (1.0 - u);
}

double HomogeneousF::derivative(double u) const {
    if (rep_ == Rep::polynomial) {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            acc = acc * u + static_cast<double>(k + 1) * coeffs_[k];
        }
        return acc;
    }
    if (u <= theta_) return 0.0;
    return 1.0 + theta_ - 2.0 * u;
}

double HomogeneousF::antiderivative(double s) const {
    if (rep_ == Rep::polynomial) {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            acc = acc * s + coeffs_[k] / static_cast<double>(k + 2);
        }
        return s * s * acc;
    }
    if (s <= theta_) return 0.0;
    // integral of (r-theta)(1-r) over [theta, s]
    const double d = s - theta_;
    return d * d * (0.5 * (1.0 - theta_) - d / 3.0);
}

double HomogeneousF::max_slope(double hi) const {
    const int n = 512;
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
        m = std::max(m, std::abs(derivative(hi * i / n)));
    }
    return m;
}

nlohmann::json HomogeneousF::to_json() const {
    nlohmann::json j;
    if (rep_ == Rep::combustion) {
        j["name"] = "combustion";
        j["theta"] = theta_;
        return j;
    }
    if (name_ == "logistic") {
        j["name"] = "logistic";
        return j;
    }
    if (name_.rfind("bistable", 0) == 0 && coeffs_.size() == 3 && coeffs_[2] == -1.0) {
        j["name"] = "bistable";
        j["theta"] = -coeffs_[0];
        return j;
    }
    j["poly"] = coeffs_;
    if (!name_.empty()) j["label"] = name_;
    return j;
}

HomogeneousF HomogeneousF::from_json(const nlohmann::json& j) {
    if (j.contains("name")) {
        const std::string name = j.at("name").get<std::string>();
        if (name == "logistic") return logistic();
        if (name == "bistable") return bistable(j.at("theta").get<double>());
        if (name == "combustion") return combustion(j.at("theta").get<double>());
        throw Error("unknown homogeneous reaction name: " + name);
    }
    return polynomial(j.at("poly").get<std::vector<double>>(),
                      j.value("label", std::string{}));
}

// ---------------------------------------------------------------------------
// Hypothesis check and classification

void check_hypothesis(const HomogeneousF& f, int grid_n) {
    if (std::abs(f.value(0.0)) > kSignTol) {
        throw HypothesisViolation("f(0) != 0 for " + f.name());
    }
    if (std::abs(f.value(1.0)) > kSignTol) {
        throw HypothesisViolation("f(1) != 0 for " + f.name());
    }
    if (!(f.derivative(1.0) < -kSignTol)) {
        throw HypothesisViolation("f'(1) >= 0 for " + f.name());
    }
    for (int i = 1; i <= grid_n; ++i) {
        const double u = 1.0 + static_cast<double>(i) / grid_n;
        if (f.value(u) > kSignTol) {
            throw HypothesisViolation("f > 0 above u=1 for " + f.name());
        }
    }
}

HomogeneousClass classify(const HomogeneousF& f, int grid_n) {
    check_hypothesis(f, grid_n);

    // Sign pattern of f on the interior grid, ties at zero as equality.
    int n_neg = 0, n_pos = 0, n_zero = 0;
    int last_nonpos = 0;   // last index i with f(u_i) <= tol
    int first_pos = -1;
    bool ordered = true;   // nonpositive prefix followed by positive suffix
    for (int i = 1; i < grid_n; ++i) {
        const double v = f.value(static_cast<double>(i) / grid_n);
        if (v > kSignTol) {
            ++n_pos;
            if (first_pos < 0) first_pos = i;
        } else {
            if (v < -kSignTol) ++n_neg; else ++n_zero;
            last_nonpos = i;
            if (first_pos >= 0) ordered = false;
        }
    }
    (void)last_nonpos;

    if (n_pos == 0) return HomogeneousClass::generic;

    if (n_neg == 0 && n_zero == 0) {
        // positive throughout (0,1): monostable needs f'(0) > 0
        if (f.derivative(0.0) > kSignTol) return HomogeneousClass::monostable;
        return HomogeneousClass::generic;
    }

    if (!ordered) return HomogeneousClass::generic;

    const double theta_est = static_cast<double>(first_pos - 1) / grid_n;
    if (n_neg == 0) {
        // dead zone [0, theta] then positive: combustion needs f increasing
        // just past the threshold
        bool increasing = true;
        double prev = f.value(theta_est);
        for (int k = 1; k <= 4; ++k) {
            const double v = f.value(theta_est + 0.01 * k * (1.0 - theta_est));
            if (v < prev - kSignTol) increasing = false;
            prev = v;
        }
        if (increasing && std::abs(f.derivative(0.0)) <= kSignTol) {
            return HomogeneousClass::combustion;
        }
        return HomogeneousClass::generic;
    }

    // strictly negative then positive: bistable needs f'(0) < 0 and a
    // positive mass integral
    if (f.derivative(0.0) < -kSignTol && f.antiderivative(1.0) > kSignTol) {
        return HomogeneousClass::bistable;
    }
    return HomogeneousClass::generic;
}

const char* to_string(HomogeneousClass c) {
    switch (c) {
        case HomogeneousClass::monostable: return "monostable";
        case HomogeneousClass::bistable: return "bistable";
        case HomogeneousClass::combustion: return "combustion";
        case HomogeneousClass::generic: return "generic";
    }
    return "?";
}

const char* to_string(ReactionKind k) {
    switch (k) {
        case ReactionKind::homogeneous: return "homogeneous";
        case ReactionKind::kpp_time_ap: return "kpp_time_ap";
        case ReactionKind::kpp_space_ap: return "kpp_space_ap";
        case ReactionKind::two_phase_time: return "two_phase_time";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// TwoPhaseF

double TwoPhaseF::blend(double t) const {
    if (t <= t1) return 0.0;
    if (t >= t2) return 1.0;
    return 0.5 * (1.0 - std::cos(std::numbers::pi * (t - t1) / (t2 - t1)));
}

double TwoPhaseF::value(double t, double u) const {
    if (t <= t1) return f1.value(u);
    if (t >= t2) return f2.value(u);
    const double b = blend(t);
    return (1.0 - b) * f1.value(u) + b * f2.value(u);
}

// ---------------------------------------------------------------------------
// NonlinearitySpec

NonlinearitySpec NonlinearitySpec::homogeneous(HomogeneousF f, double u_cap) {
    NonlinearitySpec s;
    s.kind_ = ReactionKind::homogeneous;
    s.u_cap_ = u_cap;
    s.payload_ = std::move(f);
    return s;
}

NonlinearitySpec NonlinearitySpec::kpp_time_ap(QuasiPeriodicSignal c, double u_cap) {
    if (!(c.mean() > 0.0)) {
        throw MeanConditionViolation("time forcing must have positive mean");
    }
    NonlinearitySpec s;
    s.kind_ = ReactionKind::kpp_time_ap;
    s.u_cap_ = u_cap;
    s.payload_ = std::move(c);
    return s;
}

NonlinearitySpec NonlinearitySpec::kpp_space_ap(QuasiPeriodicSignal a, double u_cap) {
    if (!(a.lower_bound() > 0.0)) {
        throw MeanConditionViolation("space coefficient must be positive: mean - sum|amp| <= 0");
    }
    NonlinearitySpec s;
    s.kind_ = ReactionKind::kpp_space_ap;
    s.u_cap_ = u_cap;
    s.payload_ = std::move(a);
    return s;
}

NonlinearitySpec NonlinearitySpec::two_phase(HomogeneousF f1, HomogeneousF f2,
                                             double t1, double t2, double u_cap) {
    if (!(t1 < t2)) throw BadWindow("two-phase window requires t1 < t2");
    check_hypothesis(f1, 1000);
    check_hypothesis(f2, 1000);
    NonlinearitySpec s;
    s.kind_ = ReactionKind::two_phase_time;
    s.u_cap_ = u_cap;
    s.payload_ = TwoPhaseF{std::move(f1), std::move(f2), t1, t2};
    return s;
}

double NonlinearitySpec::eval(double t, double x, double u) const {
    u = std::clamp(u, 0.0, u_cap_);
    switch (kind_) {
        case ReactionKind::homogeneous:
            return std::get<HomogeneousF>(payload_).value(u);
        case ReactionKind::kpp_time_ap:
            return u * (std::get<QuasiPeriodicSignal>(payload_).eval(t) - u);
        case ReactionKind::kpp_space_ap:
            return u * (std::get<QuasiPeriodicSignal>(payload_).eval(x) - u);
        case ReactionKind::two_phase_time:
            return std::get<TwoPhaseF>(payload_).value(t, u);
    }
    return 0.0;
}

double NonlinearitySpec::reaction_slope_bound() const {
    switch (kind_) {
        case ReactionKind::homogeneous:
            return std::get<HomogeneousF>(payload_).max_slope(u_cap_);
        case ReactionKind::kpp_time_ap:
        case ReactionKind::kpp_space_ap: {
            // f_u = c - 2u on the clamped range
            const auto& sig = std::get<QuasiPeriodicSignal>(payload_);
            return std::max(std::abs(sig.upper_bound()),
                            std::abs(sig.lower_bound() - 2.0 * u_cap_));
        }
        case ReactionKind::two_phase_time: {
            const auto& tp = std::get<TwoPhaseF>(payload_);
            return std::max(tp.f1.max_slope(u_cap_), tp.f2.max_slope(u_cap_));
        }
    }
    return 0.0;
}

const HomogeneousF& NonlinearitySpec::homogeneous_f() const {
    return std::get<HomogeneousF>(payload_);
}

const TwoPhaseF& NonlinearitySpec::two_phase_f() const {
    return std::get<TwoPhaseF>(payload_);
}

const QuasiPeriodicSignal& NonlinearitySpec::signal() const {
    return std::get<QuasiPeriodicSignal>(payload_);
}

nlohmann::json NonlinearitySpec::to_json() const {
    nlohmann::json j;
    j["kind"] = to_string(kind_);
    j["u_cap"] = u_cap_;
    nlohmann::json params;
    switch (kind_) {
        case ReactionKind::homogeneous:
            params["f"] = std::get<HomogeneousF>(payload_).to_json();
            break;
        case ReactionKind::kpp_time_ap:
            params["c"] = std::get<QuasiPeriodicSignal>(payload_).to_json();
            break;
        case ReactionKind::kpp_space_ap:
            params["a"] = std::get<QuasiPeriodicSignal>(payload_).to_json();
            break;
        case ReactionKind::two_phase_time: {
            const auto& tp = std::get<TwoPhaseF>(payload_);
            params["f1"] = tp.f1.to_json();
            params["f2"] = tp.f2.to_json();
            params["t1"] = tp.t1;
            params["t2"] = tp.t2;
            break;
        }
    }
    j["params"] = params;
    return j;
}

NonlinearitySpec NonlinearitySpec::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double u_cap = j.value("u_cap", 2.0);
    const auto& params = j.at("params");
    if (kind == "homogeneous") {
        return homogeneous(HomogeneousF::from_json(params.at("f")), u_cap);
    }
    if (kind == "kpp_time_ap") {
        return kpp_time_ap(QuasiPeriodicSignal::from_json(params.at("c")), u_cap);
    }
    if (kind == "kpp_space_ap") {
        return kpp_space_ap(QuasiPeriodicSignal::from_json(params.at("a")), u_cap);
    }
    if (kind == "two_phase_time") {
        return two_phase(HomogeneousF::from_json(params.at("f1")),
                         HomogeneousF::from_json(params.at("f2")),
                         params.at("t1").get<double>(), params.at("t2").get<double>(),
                         u_cap);
    }
    throw Error("unknown reaction kind: " + kind);
}

std::uint64_t NonlinearitySpec::hash() const {
    return fnv1a64(to_json().dump());
}

NonlinearitySpec make_two_phase(const HomogeneousF& f1, const HomogeneousF& f2,
                                double t1, double t2) {
    return NonlinearitySpec::two_phase(f1, f2, t1, t2);
}

NonlinearitySpec make_kpp_time_ap(const QuasiPeriodicSignal& c) {
    return NonlinearitySpec::kpp_time_ap(c);
}

NonlinearitySpec make_kpp_space_ap(const QuasiPeriodicSignal& a) {
    return NonlinearitySpec::kpp_space_ap(a);
}

}  // namespace sfront
