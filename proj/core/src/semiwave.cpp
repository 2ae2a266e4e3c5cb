#include "sfront/semiwave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "sfront/errors.hpp"

namespace sfront {

namespace {

// The trajectory is integrated in the energy variable e = P^2/2 whose
// equation  de/dq = c*sqrt(2e) - f(q)  stays finite as P -> 0, so axis
// contact is a regular crossing instead of a stiff blow-up of f/P. The
// arc position z (dz = dq/P) rides along as a second error-controlled
// component; near the saddle it carries the logarithmic approach exactly.
struct PhaseOde {
    const HomogeneousF& f;
    double c;
    double z_sign;  // -1 for the backward march, +1 forward

    void rhs(double q, const double y[2], double out[2]) const {
        const double p = std::sqrt(2.0 * std::max(y[0], 0.0));
        out[0] = c * p - f.value(q);
        out[1] = z_sign / std::max(p, 1e-8);
    }
};

struct StepResult {
    double y5[2];
    double err[2];
};

StepResult cash_karp_step(const PhaseOde& ode, double q, const double y[2], double h) {
    constexpr double b21 = 1.0 / 5.0;
    constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    constexpr double b41 = 3.0 / 10.0, b42 = -9.0 / 10.0, b43 = 6.0 / 5.0;
    constexpr double b51 = -11.0 / 54.0, b52 = 5.0 / 2.0, b53 = -70.0 / 27.0,
                     b54 = 35.0 / 27.0;
    constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                     b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                     b65 = 253.0 / 4096.0;
    constexpr double a2 = 1.0 / 5.0, a3 = 3.0 / 10.0, a4 = 3.0 / 5.0, a5 = 1.0,
                     a6 = 7.0 / 8.0;
    constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                     c6 = 512.0 / 1771.0;
    constexpr double d1 = c1 - 2825.0 / 27648.0;
    constexpr double d3 = c3 - 18575.0 / 48384.0;
    constexpr double d4 = c4 - 13525.0 / 55296.0;
    constexpr double d5 = -277.0 / 14336.0;
    constexpr double d6 = c6 - 1.0 / 4.0;

    double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], tmp[2];
    ode.rhs(q, y, k1);
    for (int j = 0; j < 2; ++j) tmp[j] = y[j] + h * b21 * k1[j];
    ode.rhs(q + a2 * h, tmp, k2);
    for (int j = 0; j < 2; ++j) tmp[j] = y[j] + h * (b31 * k1[j] + b32 * k2[j]);
    ode.rhs(q + a3 * h, tmp, k3);
    for (int j = 0; j < 2; ++j) {
        tmp[j] = y[j] + h * (b41 * k1[j] + b42 * k2[j] + b43 * k3[j]);
    }
    ode.rhs(q + a4 * h, tmp, k4);
    for (int j = 0; j < 2; ++j) {
        tmp[j] = y[j] + h * (b51 * k1[j] + b52 * k2[j] + b53 * k3[j] + b54 * k4[j]);
    }
    ode.rhs(q + a5 * h, tmp, k5);
    for (int j = 0; j < 2; ++j) {
        tmp[j] = y[j] + h * (b61 * k1[j] + b62 * k2[j] + b63 * k3[j] +
                             b64 * k4[j] + b65 * k5[j]);
    }
    ode.rhs(q + a6 * h, tmp, k6);

    StepResult r;
    for (int j = 0; j < 2; ++j) {
        r.y5[j] = y[j] + h * (c1 * k1[j] + c3 * k3[j] + c4 * k4[j] + c6 * k6[j]);
        r.err[j] = std::abs(h * (d1 * k1[j] + d3 * k3[j] + d4 * k4[j] +
                                 d5 * k5[j] + d6 * k6[j]));
    }
    return r;
}

struct SegmentOutcome {
    bool contact = false;
    double contact_q = 0.0;
    double contact_z = 0.0;
};

// Advances (E, Z) from q to q_to in place; returns early on axis contact.
SegmentOutcome integrate_segment(const PhaseOde& ode, double& q, double y[2],
                                 double q_to, double e_floor, double contact_q_min,
                                 bool forward, const PhaseShootOptions& opt) {
    const double dir = (q_to > q) ? 1.0 : -1.0;
    double h = dir * std::abs(q_to - q);

    int iter = 0;
    while (dir * (q_to - q) > 0.0) {
        if (++iter > 200000) {
            throw Error("phase integrator: step limit exceeded");
        }
        if (std::abs(h) > std::abs(q_to - q)) h = q_to - q;
        const StepResult r = cash_karp_step(ode, q, y, h);
        const double tol_e = opt.abs_tol_energy +
                             opt.rel_tol * std::max(std::abs(y[0]), std::abs(r.y5[0]));
        const double tol_z =
            1e-10 + opt.rel_tol * std::max(std::abs(y[1]), std::abs(r.y5[1]));
        const double err_norm = std::max(r.err[0] / tol_e, r.err[1] / tol_z);
        if (err_norm > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(1.0 / err_norm, 0.25));
            if (std::abs(h) < 1e-15) {
                throw Error("phase integrator: step underflow");
            }
            continue;
        }
        const double q_new = q + h;
        if (r.y5[0] <= e_floor) {
            const bool interior = forward ? (q_new > 0.0) : (q_new > contact_q_min);
            if (interior) {
                double qc = q_new;
                if (r.y5[0] < 0.0) {
                    // linear crossing between (q, E>0) and (q_new, E<0)
                    qc = q + (q_new - q) * (y[0] / (y[0] - r.y5[0]));
                }
                return {true, qc, r.y5[1]};
            }
            y[0] = std::max(r.y5[0], 0.0);
            y[1] = r.y5[1];
            q = q_new;
        } else {
            y[0] = r.y5[0];
            y[1] = r.y5[1];
            q = q_new;
        }
        if (err_norm > 0.0) {
            h *= std::min(5.0, 0.9 * std::pow(1.0 / err_norm, 0.2));
        } else {
            h *= 5.0;
        }
    }
    return {};
}

PhaseCurve run_trajectory(const HomogeneousF& f, double c, double q_start,
                          double e_start, double q_end, bool forward,
                          const PhaseShootOptions& opt) {
    const PhaseOde ode{f, c, forward ? 1.0 : -1.0};
    const double e_floor = 0.5 * opt.axis_p_tol * opt.axis_p_tol;

    PhaseCurve curve;
    curve.c = c;
    curve.q.reserve(opt.checkpoints + 1);
    curve.p.reserve(opt.checkpoints + 1);
    curve.zspan.reserve(opt.checkpoints + 1);
    curve.q.push_back(q_start);
    curve.p.push_back(std::sqrt(2.0 * std::max(e_start, 0.0)));
    curve.zspan.push_back(0.0);

    double q = q_start;
    double y[2] = {e_start, 0.0};
    for (int k = 1; k <= opt.checkpoints; ++k) {
        const double q_next =
            q_start + (q_end - q_start) * (static_cast<double>(k) / opt.checkpoints);
        const SegmentOutcome seg = integrate_segment(
            ode, q, y, q_next, e_floor, opt.contact_q_min, forward, opt);
        if (seg.contact) {
            curve.terminal = PhaseCurve::Terminal::axis_contact;
            curve.contact_q = seg.contact_q;
            curve.q.push_back(seg.contact_q);
            curve.p.push_back(0.0);
            curve.zspan.push_back(seg.contact_z);
            return curve;
        }
        curve.q.push_back(q);
        curve.p.push_back(std::sqrt(2.0 * std::max(y[0], 0.0)));
        curve.zspan.push_back(y[1]);
    }
    curve.terminal = PhaseCurve::Terminal::reached_q0;
    return curve;
}

double saddle_exit_slope(const HomogeneousF& f, double c) {
    const double fp1 = f.derivative(1.0);
    if (!(fp1 < 0.0)) {
        throw HypothesisViolation(
            "f'(1) >= 0: no negative exit slope at the saddle for " + f.name());
    }
    return 0.5 * (c - std::sqrt(c * c - 4.0 * fp1));
}

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

PhaseCurve phase_trajectory(const HomogeneousF& f, double c,
                            const PhaseShootOptions& opt) {
    const double lambda = saddle_exit_slope(f, c);
    const double q_start = 1.0 - opt.eps0;
    const double p_start = -lambda * opt.eps0;
    return run_trajectory(f, c, q_start, 0.5 * p_start * p_start, 0.0,
                          /*forward=*/false, opt);
}

PhaseCurve phase_trajectory_forward(const HomogeneousF& f, double c, double p0,
                                    const PhaseShootOptions& opt) {
    return run_trajectory(f, c, 0.0, 0.5 * p0 * p0, 1.0 - opt.eps0,
                          /*forward=*/true, opt);
}

ShootResult shoot_residual(const HomogeneousF& f, double c, double mu,
                           const PhaseShootOptions& opt) {
    const PhaseCurve curve = phase_trajectory(f, c, opt);
    ShootResult r;
    if (curve.terminal == PhaseCurve::Terminal::axis_contact) {
        r.axis_contact = true;
        r.contact_q = curve.contact_q;
        return r;
    }
    r.residual = curve.p_end() - c / mu;
    return r;
}

std::vector<ShootResult> residual_scan(const HomogeneousF& f, double mu,
                                       double c_lo, double c_hi, int n,
                                       const PhaseShootOptions& opt) {
    std::vector<ShootResult> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double c = c_lo + (c_hi - c_lo) * i / (n - 1);
        out.push_back(shoot_residual(f, c, mu, opt));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Profile reconstruction

namespace {

double hermite(double y0, double m0, double y1, double m1, double width, double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * width * m0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * width * m1;
}

double hermite_deriv(double y0, double m0, double y1, double m1, double width,
                     double s) {
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * width * m0 +
            (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * width * m1) /
           width;
}

}  // namespace

double ProfileSamples::eval_q(double zz) const {
    if (zz <= z.front()) return q.front();
    if (zz >= z.back()) return q.back();
    const double dz = z[1] - z[0];
    auto k = static_cast<std::size_t>((zz - z.front()) / dz);
    k = std::min(k, z.size() - 2);
    const double s = (zz - z[k]) / dz;
    return hermite(q[k], p[k], q[k + 1], p[k + 1], dz, s);
}

double ProfileSamples::eval_p(double zz) const {
    if (zz <= z.front()) return p.front();
    if (zz >= z.back()) return p.back();
    const double dz = z[1] - z[0];
    auto k = static_cast<std::size_t>((zz - z.front()) / dz);
    k = std::min(k, z.size() - 2);
    const double s = (zz - z[k]) / dz;
    return hermite_deriv(q[k], p[k], q[k + 1], p[k + 1], dz, s);
}

double ProfileSamples::inverse(double level) const {
    if (level < q.front() || level > q.back()) {
        throw LevelNotAttained("profile does not attain level " + std::to_string(level));
    }
    std::size_t lo = 0, hi = q.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (q[mid] <= level) lo = mid; else hi = mid;
    }
    const double dz = z[1] - z[0];
    double s = (q[hi] > q[lo]) ? (level - q[lo]) / (q[hi] - q[lo]) : 0.0;
    for (int it = 0; it < 8; ++it) {
        const double val = hermite(q[lo], p[lo], q[hi], p[hi], dz, s) - level;
        const double der = hermite_deriv(q[lo], p[lo], q[hi], p[hi], dz, s) * dz;
        if (der == 0.0) break;
        s -= val / der;
        s = std::clamp(s, 0.0, 1.0);
    }
    return z[lo] + s * dz;
}

namespace {

// Inverts a sampled monotone arc (qa, pa ascending, za = z positions) onto
// a uniform z-grid. Narrow intervals use cubic Hermite on q itself; wide
// intervals sit deep in the exponential approach to `top` and use Hermite
// on ln(top - q), which is nearly linear there and keeps the pieces C^1 at
// the sample joints. Beyond the sampled arc the last sample's exponential
// continues toward the limit value.
ProfileSamples invert_arc(const std::vector<double>& qa, const std::vector<double>& pa,
                          const std::vector<double>& za, double top, double z_max,
                          double dz) {
    ProfileSamples prof;
    const auto n_out = static_cast<std::size_t>(std::floor(z_max / dz)) + 1;
    prof.z.resize(n_out);
    prof.q.resize(n_out);
    prof.p.resize(n_out);
    const std::size_t n = qa.size();
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_out; ++j) {
        const double zj = j * dz;
        prof.z[j] = zj;
        while (k + 2 < n && za[k + 1] < zj) ++k;
        if (zj > za.back() || k + 2 >= n) {
            // beyond the arc: anchored exponential toward the limit value
            const double tau = top - qa.back();
            const double kappa = (tau > 0.0) ? pa.back() / tau : 0.0;
            const double t = tau * std::exp(-kappa * (zj - za.back()));
            prof.q[j] = top - t;
            prof.p[j] = kappa * t;
            continue;
        }
        const double width = za[k + 1] - za[k];
        const double s = (zj - za[k]) / width;
        const double tau0 = top - qa[k];
        const double tau1 = top - qa[k + 1];
        if (width > 0.05 && tau0 > 0.0 && tau1 > 0.0) {
            const double g = hermite(std::log(tau0), -pa[k] / tau0, std::log(tau1),
                                     -pa[k + 1] / tau1, width, s);
            const double gp = hermite_deriv(std::log(tau0), -pa[k] / tau0,
                                            std::log(tau1), -pa[k + 1] / tau1,
                                            width, s);
            const double tau = std::exp(g);
            prof.q[j] = top - tau;
            prof.p[j] = -tau * gp;
        } else {
            prof.q[j] = hermite(qa[k], pa[k], qa[k + 1], pa[k + 1], width, s);
            prof.p[j] = hermite_deriv(qa[k], pa[k], qa[k + 1], pa[k + 1], width, s);
        }
    }
    prof.q[0] = 0.0;  // exact boundary value
    return prof;
}

}  // namespace

ProfileSamples profile_from_trajectory(const PhaseCurve& curve, double z_max,
                                       double dz) {
    if (curve.terminal != PhaseCurve::Terminal::reached_q0) {
        throw DegenerateCurve("curve contacted the axis at q = " +
                              std::to_string(curve.contact_q));
    }
    if (!(curve.p_end() > 1e-8)) {
        throw DegenerateCurve("P(0) below tolerance: z-integral diverges at the origin");
    }

    // ascend in q; the backward curve is stored from near 1 down to 0 with
    // zspan growing along the march, so z(q) = zspan_end - zspan
    const std::size_t n = curve.q.size();
    std::vector<double> qa(n), pa(n), za(n);
    const double z_end = curve.zspan.back();
    for (std::size_t i = 0; i < n; ++i) {
        qa[i] = curve.q[n - 1 - i];
        pa[i] = curve.p[n - 1 - i];
        za[i] = z_end - curve.zspan[n - 1 - i];
    }
    return invert_arc(qa, pa, za, 1.0, z_max, dz);
}

// ---------------------------------------------------------------------------
// Speed selection

SemiWaveProfile find_cstar(const HomogeneousF& f, double mu, double tol_c) {
    FindCStarOptions opt;
    opt.tol_c = tol_c;
    return find_cstar(f, mu, opt);
}

SemiWaveProfile find_cstar(const HomogeneousF& f, double mu,
                           const FindCStarOptions& opt) {
    check_hypothesis(f, 1000);

    const auto side_negative = [&](double c) {
        return shoot_residual(f, c, mu, opt.shoot).negative_side();
    };

    if (side_negative(0.0)) {
        throw NoSemiWave(
            "residual at c = 0 is already on the non-positive side; the "
            "profile equation has no admissible intercept for " + f.name());
    }

    double sup_fp = 0.0;
    for (int i = 0; i <= 512; ++i) {
        sup_fp = std::max(sup_fp, f.derivative(i / 512.0));
    }
    const double cap = opt.bracket_cap * std::sqrt(std::max(sup_fp, 1e-12));

    double c_hi = 1.0;
    while (!side_negative(c_hi)) {
        c_hi *= 2.0;
        if (c_hi > cap) {
            throw NoSemiWave(
                "no residual sign change up to the speed cap " + num17(cap) +
                " for " + f.name() +
                "; a missing semi-wave and a speed beyond the cap are "
                "indistinguishable here");
        }
    }

    // uniqueness echo: the scan across the bracket must flip side exactly once
    const auto scan = residual_scan(f, mu, 0.0, c_hi, opt.scan_points, opt.shoot);
    int changes = 0;
    std::size_t flip = 0;
    for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
        if (scan[i].negative_side() != scan[i + 1].negative_side()) {
            ++changes;
            flip = i;
        }
    }
    if (changes != 1) {
        throw NonMonotoneScan("residual scan shows " + std::to_string(changes) +
                              " sign changes over [0, " + num17(c_hi) +
                              "]; resolution must be increased");
    }

    double lo = c_hi * static_cast<double>(flip) / (opt.scan_points - 1);
    double hi = c_hi * static_cast<double>(flip + 1) / (opt.scan_points - 1);
    double c_best = lo;
    double r_best = shoot_residual(f, lo, mu, opt.shoot).residual;
    for (int it = 0; it < 300; ++it) {
        if (hi - lo <= opt.tol_c && std::abs(r_best) <= opt.resid_tol) break;
        const double mid = 0.5 * (lo + hi);
        const ShootResult r = shoot_residual(f, mid, mu, opt.shoot);
        if (r.negative_side()) hi = mid; else lo = mid;
        if (!r.axis_contact && std::abs(r.residual) < std::abs(r_best)) {
            c_best = mid;
            r_best = r.residual;
        }
    }

    const PhaseCurve curve = phase_trajectory(f, c_best, opt.shoot);
    SemiWaveProfile prof;
    prof.c_star = c_best;
    prof.mu = mu;
    prof.residual = r_best;
    prof.samples = profile_from_trajectory(curve, opt.z_max, opt.dz);
    prof.slope0 = prof.samples.p.front();
    return prof;
}

SubSpeedWing sub_speed_wing(const HomogeneousF& f, double c, double p0, double dz) {
    PhaseShootOptions opt;
    const PhaseCurve curve = phase_trajectory_forward(f, c, p0, opt);
    if (curve.terminal != PhaseCurve::Terminal::axis_contact) {
        throw DegenerateCurve("forward trajectory reached the far equilibrium; "
                              "no finite comparison wing at speed " + num17(c));
    }
    const double q_top = curve.contact_q;
    const double f_top = f.value(q_top);
    if (!(f_top > 0.0)) {
        throw DegenerateCurve("axis contact in a reaction dead zone: wing length is infinite");
    }

    // keep samples away from the contact, then continue with the local
    // square-root law P = sqrt(2 f_top (q_top - q)) up to the flat top
    std::vector<double> qa, pa, za;
    for (std::size_t i = 0; i < curve.q.size(); ++i) {
        if (curve.p[i] > 1e-3 || i == 0) {
            qa.push_back(curve.q[i]);
            pa.push_back(curve.p[i]);
            za.push_back(curve.zspan[i]);
        }
    }
    // z_top from dz = dq / sqrt(2 f_top (q_top - q)):
    //   z_top - z_ref = sqrt(2 (q_top - q_ref) / f_top)
    const double z_top_exact =
        za.back() + std::sqrt(2.0 * (q_top - qa.back()) / f_top);

    SubSpeedWing wing;
    wing.c = c;
    wing.q_top = q_top;
    const double z_cover = z_top_exact + 1.0;
    const auto n_out = static_cast<std::size_t>(std::ceil(z_cover / dz)) + 1;
    wing.samples.z.resize(n_out);
    wing.samples.q.resize(n_out);
    wing.samples.p.resize(n_out);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_out; ++j) {
        const double zj = j * dz;
        wing.samples.z[j] = zj;
        if (zj >= z_top_exact) {
            wing.samples.q[j] = q_top;
            wing.samples.p[j] = 0.0;
        } else if (zj >= za.back()) {
            const double d = z_top_exact - zj;
            wing.samples.q[j] = q_top - 0.5 * f_top * d * d;
            wing.samples.p[j] = f_top * d;
        } else {
            while (k + 2 < za.size() && za[k + 1] < zj) ++k;
            const double width = za[k + 1] - za[k];
            const double s = (zj - za[k]) / width;
            wing.samples.q[j] = hermite(qa[k], pa[k], qa[k + 1], pa[k + 1], width, s);
            wing.samples.p[j] =
                hermite_deriv(qa[k], pa[k], qa[k + 1], pa[k + 1], width, s);
        }
    }
    wing.samples.q[0] = 0.0;
    return wing;
}

void write_profile_csv(const SemiWaveProfile& prof, std::ostream& os) {
    os << "z,q\n";
    for (std::size_t i = 0; i < prof.samples.z.size(); ++i) {
        os << num17(prof.samples.z[i]) << ',' << num17(prof.samples.q[i]) << '\n';
    }
}

nlohmann::json profile_header_json(const SemiWaveProfile& prof) {
    nlohmann::json j;
    j["c_star"] = prof.c_star;
    j["mu"] = prof.mu;
    j["residual"] = prof.residual;
    j["grid"] = {{"z_max", prof.samples.z.back()},
                 {"dz", prof.samples.z.size() > 1 ? prof.samples.z[1] - prof.samples.z[0] : 0.0},
                 {"n", prof.samples.z.size()}};
    return j;
}

}  // namespace sfront
