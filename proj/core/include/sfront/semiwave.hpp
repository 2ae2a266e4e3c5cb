#pragma once

#include <iosfwd>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfront/nonlinearity.hpp"

namespace sfront {

/// One phase-plane trajectory of  P dP/dq = c P - f(q)  at fixed speed c.
///
/// Backward curves start on the unstable direction at (1, 0) and run toward
/// q = 0; samples are ordered strictly decreasing in q with P > 0 at all
/// interior samples.  terminal == axis_contact means P fell below the
/// contact tolerance at contact_q in (0,1); the appended last sample then
/// carries the interpolated contact point.
struct PhaseCurve {
    enum class Terminal { reached_q0, axis_contact };

    double c = 0.0;
    Terminal terminal = Terminal::reached_q0;
    double contact_q = 0.0;     // meaningful when terminal == axis_contact
    std::vector<double> q;      // strictly decreasing
    std::vector<double> p;      // P(q) >= 0
    std::vector<double> zspan;  // arc position along the march, dz = |dq|/P

    double p_end() const { return p.back(); }
};

struct PhaseShootOptions {
    double eps0 = 1e-6;         // start offset from the saddle (1,0)
    double rel_tol = 1e-10;     // integrator relative tolerance
    double abs_tol_energy = 1e-24;
    int checkpoints = 2048;     // uniform q-samples recorded on the curve
    double axis_p_tol = 1e-10;  // P below this with q > contact_q_min: contact
    double contact_q_min = 1e-6;
};

/// Integrates backward from (1 - eps0, -lambda(c) * eps0) where
/// lambda(c) = (c - sqrt(c^2 - 4 f'(1))) / 2 is the saddle exit slope.
/// Throws HypothesisViolation when f'(1) >= 0.
PhaseCurve phase_trajectory(const HomogeneousF& f, double c,
                            const PhaseShootOptions& opt = {});

/// Forward trajectory from (0, p0) toward q = 1; used for sub-speed
/// comparison profiles whose curves leave the axis at the origin intercept.
PhaseCurve phase_trajectory_forward(const HomogeneousF& f, double c, double p0,
                                    const PhaseShootOptions& opt = {});

/// Shooting residual R(c) = P_c(0) - c/mu, or the axis-contact sentinel
/// which the root finder orders below every negative residual.
struct ShootResult {
    bool axis_contact = false;
    double residual = 0.0;  // valid when !axis_contact
    double contact_q = 0.0; // valid when axis_contact
    bool negative_side() const { return axis_contact || residual < 0.0; }
};

ShootResult shoot_residual(const HomogeneousF& f, double c, double mu,
                           const PhaseShootOptions& opt = {});

/// Equispaced residual scan over [c_lo, c_hi]; n values inclusive.
std::vector<ShootResult> residual_scan(const HomogeneousF& f, double mu,
                                       double c_lo, double c_hi, int n,
                                       const PhaseShootOptions& opt = {});

/// Monotone sampled profile with slopes; z increasing, q(0) = 0.
struct ProfileSamples {
    std::vector<double> z;
    std::vector<double> q;
    std::vector<double> p;  // dq/dz at the sample points

    double z_max() const { return z.back(); }
    /// Cubic Hermite evaluation; clamps beyond the sampled range.
    double eval_q(double zz) const;
    double eval_p(double zz) const;
    /// First z with q(z) = level; requires level within the sampled range.
    double inverse(double level) const;
};

/// The semi-wave pair: speed, Stefan parameter and spatial profile q(z)
/// with q(0) = 0, q' > 0, q(z) -> 1 and q'(0) = c*/mu.
struct SemiWaveProfile {
    double c_star = 0.0;
    double mu = 1.0;
    double residual = 0.0;  // P(0) - c*/mu at the returned speed
    double slope0 = 0.0;    // q'(0)
    ProfileSamples samples;
};

/// Reparameterizes a reached-q0 curve through z(q) = integral dq/P and
/// inverts onto a uniform z-grid [0, z_max]. Beyond the sampled arc the
/// tail is continued with the saddle's exponential approach to 1.
/// Throws DegenerateCurve when the curve contacted the axis or P(0) is
/// below tolerance (the z-integral diverges at the origin).
ProfileSamples profile_from_trajectory(const PhaseCurve& curve, double z_max,
                                       double dz = 0.01);

struct FindCStarOptions {
    double tol_c = 1e-8;
    double resid_tol = 1e-9;
    int scan_points = 64;        // uniqueness scan inside the bracket
    double bracket_cap = 64.0;   // cap factor on sqrt(sup f')
    double z_max = 40.0;
    double dz = 0.01;
    PhaseShootOptions shoot{};
};

/// Bisection on R(c) over [0, c_hi] (c_hi found by doubling); verifies a
/// single sign change on the scan, then bisects to |dc| <= tol_c and
/// |R| <= resid_tol. Throws NoSemiWave when no sign change exists up to
/// the cap and NonMonotoneScan when the scan shows more than one change.
SemiWaveProfile find_cstar(const HomogeneousF& f, double mu, double tol_c);
SemiWaveProfile find_cstar(const HomogeneousF& f, double mu,
                           const FindCStarOptions& opt);

/// Sub-speed comparison wing: forward trajectory from (0, p0) at speed
/// c < c*, reparameterized over z in [0, x_c] where q reaches its
/// axis-contact level q_top = Q^c. Used to assemble explicit comparison
/// solutions. Throws DegenerateCurve when the forward curve reaches q=1
/// instead of contacting the axis.
struct SubSpeedWing {
    double c = 0.0;
    double q_top = 0.0;  // contact level Q^c
    ProfileSamples samples;  // z in [0, x_c], q in [0, q_top]
};
SubSpeedWing sub_speed_wing(const HomogeneousF& f, double c, double p0,
                            double dz = 0.01);

void write_profile_csv(const SemiWaveProfile& prof, std::ostream& os);
nlohmann::json profile_header_json(const SemiWaveProfile& prof);

}  // namespace sfront
