#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfront/quasiperiodic.hpp"

namespace sfront {

/// Homogeneous reaction term f(u) with analytic derivative and
/// antiderivative F(s) = integral of f over [0, s].
///
/// Two representations cover the shipped families:
///   - polynomial: f(u) = sum_{k>=1} c_k u^k   (constant term forced to 0)
///   - combustion: f(u) = 0 on [0,theta],  (u-theta)(1-u)  for u > theta
class HomogeneousF {
public:
    static HomogeneousF logistic();                 // u(1-u)
    static HomogeneousF bistable(double theta);     // u(1-u)(u-theta)
    static HomogeneousF combustion(double theta);
    /// coeffs[k] is the coefficient of u^(k+1).
    static HomogeneousF polynomial(std::vector<double> coeffs, std::string name = "");

    double value(double u) const;
    double derivative(double u) const;
    double antiderivative(double s) const;

    const std::string& name() const { return name_; }

    /// max of f' over a sampled range [0, hi].
    double max_slope(double hi) const;

    nlohmann::json to_json() const;
    static HomogeneousF from_json(const nlohmann::json& j);

private:
    enum class Rep { polynomial, combustion };
    Rep rep_ = Rep::polynomial;
    std::vector<double> coeffs_;  // polynomial: c_1..c_n
    double theta_ = 0.0;          // combustion ignition threshold
    std::string name_;
};

enum class HomogeneousClass { monostable, bistable, combustion, generic };

const char* to_string(HomogeneousClass c);

/// Verifies f(0)=f(1)=0, f'(1)<0 and f<0 on (1, 2] on a sampled grid.
/// Throws HypothesisViolation when any condition fails.
void check_hypothesis(const HomogeneousF& f, int grid_n);

/// Sampled sign/derivative tests over grid_n points with tolerance 1e-12;
/// ties at zero count as equality. Throws HypothesisViolation when the
/// standing hypothesis fails on the grid.
HomogeneousClass classify(const HomogeneousF& f, int grid_n);

enum class ReactionKind { homogeneous, kpp_time_ap, kpp_space_ap, two_phase_time };

const char* to_string(ReactionKind k);

/// Reaction switching from f1 to f2 across the window (t1, t2) through a
/// smooth monotone cosine ramp; matches f1 exactly for t <= t1 and f2
/// exactly for t >= t2.
struct TwoPhaseF {
    HomogeneousF f1;
    HomogeneousF f2;
    double t1 = 0.0;
    double t2 = 1.0;

    /// Ramp weight in [0,1]: 0 for t<=t1, 1 for t>=t2.
    double blend(double t) const;
    double value(double t, double u) const;
};

/// A reaction term f(t,x,u). Field values are clamped to [0, u_cap]
/// before evaluation, which makes eval total. Immutable after
/// construction and safe to share across concurrent solver runs.
class NonlinearitySpec {
public:
    static NonlinearitySpec homogeneous(HomogeneousF f, double u_cap = 2.0);
    static NonlinearitySpec kpp_time_ap(QuasiPeriodicSignal c, double u_cap = 2.0);
    static NonlinearitySpec kpp_space_ap(QuasiPeriodicSignal a, double u_cap = 2.0);
    static NonlinearitySpec two_phase(HomogeneousF f1, HomogeneousF f2,
                                      double t1, double t2, double u_cap = 2.0);

    ReactionKind kind() const { return kind_; }
    double u_cap() const { return u_cap_; }

    /// f(t, x, clamp(u, 0, u_cap)); exact zero at u = 0.
    double eval(double t, double x, double u) const;

    /// sup |f_u| over the clamped range; drives the time-step guidance.
    double reaction_slope_bound() const;

    const HomogeneousF& homogeneous_f() const;
    const TwoPhaseF& two_phase_f() const;
    const QuasiPeriodicSignal& signal() const;

    nlohmann::json to_json() const;
    static NonlinearitySpec from_json(const nlohmann::json& j);

    /// FNV-1a hash of the canonical JSON form; used as run metadata.
    std::uint64_t hash() const;

private:
    NonlinearitySpec() = default;
    ReactionKind kind_ = ReactionKind::homogeneous;
    double u_cap_ = 2.0;
    std::variant<HomogeneousF, QuasiPeriodicSignal, TwoPhaseF> payload_;
};

// Free-function spellings for the constructors.
NonlinearitySpec make_two_phase(const HomogeneousF& f1, const HomogeneousF& f2,
                                double t1, double t2);
NonlinearitySpec make_kpp_time_ap(const QuasiPeriodicSignal& c);
NonlinearitySpec make_kpp_space_ap(const QuasiPeriodicSignal& a);

}  // namespace sfront
