#include "sfront/semiwave.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "support/checks.hpp"
#include "support/oracles.hpp"

#include "sfront/errors.hpp"

using namespace sfront;
using testsupport::check_close;
using testsupport::integrate;
using testsupport::pass;

namespace {

// At zero speed the phase equation integrates exactly: P(q)^2 = 2 F(1) - 2 F(q)
// with F the antiderivative. The oracle uses independent quadrature of f.
void test_energy_identity_at_zero_speed() {
    struct Case {
        HomogeneousF f;
        double p0;  // sqrt(2 * mass integral), analytic
    };
    const Case cases[] = {
        {HomogeneousF::logistic(), 0.57735026918962576},      // sqrt(1/3)
        {HomogeneousF::bistable(0.25), 0.28867513459481287},  // sqrt(1/12)
    };
    for (const auto& [f, p0] : cases) {
        const PhaseCurve curve = phase_trajectory(f, 0.0);
        REQUIRE(curve.terminal == PhaseCurve::Terminal::reached_q0,
                "zero-speed curve must reach q = 0 for " + f.name());
        check_close("P(0) at c=0 for " + f.name(), curve.p_end(), p0, 1e-6);

        // pointwise energy identity along the samples
        double sup = 0.0;
        for (std::size_t i = 0; i < curve.q.size(); ++i) {
            const double want = 2.0 * integrate([&](double u) { return f.value(u); },
                                                curve.q[i], 1.0, 1e-13);
            sup = std::max(sup, std::abs(curve.p[i] * curve.p[i] - want));
        }
        REQUIRE(sup <= 1e-6, "energy identity sup error " + std::to_string(sup));
    }
    pass("energy identity at zero speed (quadrature oracle)");
}

// Interior-sample residual of P P_q - cP + f(q) with P_q from fourth-order
// central differences of the uniform samples. Skips a neighborhood of the
// combustion kink where the difference stencil itself is invalid.
void check_curve_residual(const HomogeneousF& f, double c, double skip_lo = 1.0,
                          double skip_hi = -1.0) {
    const PhaseCurve curve = phase_trajectory(f, c);
    REQUIRE(curve.q.size() >= 5, "curve must carry samples");
    const double h = curve.q[0] - curve.q[1];
    double sup = 0.0;
    for (std::size_t i = 2; i + 2 < curve.q.size(); ++i) {
        const double q = curve.q[i];
        if (q >= skip_hi && q <= skip_lo) continue;
        // samples are descending in q
        const double pq = (curve.p[i + 2] - 8.0 * curve.p[i + 1] +
                           8.0 * curve.p[i - 1] - curve.p[i - 2]) /
                          (12.0 * h);
        sup = std::max(sup, std::abs(curve.p[i] * pq - c * curve.p[i] + f.value(q)));
    }
    REQUIRE(sup <= 1e-8, "phase ODE residual " + std::to_string(sup) + " for " +
                             f.name() + " at c=" + std::to_string(c));
}

void test_defining_equation_residual() {
    for (double c : {0.0, 0.3, 1.0, 1.9}) {
        check_curve_residual(HomogeneousF::logistic(), c);
    }
    check_curve_residual(HomogeneousF::bistable(0.25), 0.1);
    // kink of the piecewise reaction at theta: exclude [theta-3h, theta+3h]
    check_curve_residual(HomogeneousF::combustion(0.3), 0.1, 0.3 + 0.002, 0.3 - 0.002);
    pass("defining-equation residual <= 1e-8 along samples");
}

void test_residual_scan_single_sign_change() {
    for (const auto& f : {HomogeneousF::logistic(), HomogeneousF::bistable(0.25),
                          HomogeneousF::combustion(0.3)}) {
        for (double mu : {0.5, 1.0, 2.0}) {
            // brute-force bracket: double until the negative side appears
            double c_hi = 1.0;
            while (!shoot_residual(f, c_hi, mu).negative_side()) c_hi *= 2.0;
            const auto scan = residual_scan(f, mu, 0.0, c_hi, 64);
            int changes = 0;
            for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
                if (scan[i].negative_side() != scan[i + 1].negative_side()) ++changes;
            }
            REQUIRE(changes == 1, "expected exactly one sign change, got " +
                                      std::to_string(changes) + " for " + f.name() +
                                      " mu=" + std::to_string(mu));
        }
    }
    pass("residual scan flips sign exactly once (scan oracle, 3 reactions x 3 mu)");
}

void test_find_cstar_logistic() {
    const auto f = HomogeneousF::logistic();
    const SemiWaveProfile prof = find_cstar(f, 1.0, 1e-8);
    REQUIRE(prof.c_star > 0.0 && prof.c_star < 2.0, "c* in (0, 2)");
    REQUIRE(std::abs(prof.residual) <= 1e-8, "bisection residual");
    std::cout << "  logistic mu=1: c* = " << prof.c_star << "\n";

    // profile contract: strictly increasing until the tail saturates at the
    // resolution of double near 1, nondecreasing beyond, slope positive
    // everywhere
    REQUIRE(prof.samples.q.front() == 0.0, "q(0) must be exactly 0");
    for (std::size_t i = 0; i + 1 < prof.samples.q.size(); ++i) {
        REQUIRE(prof.samples.q[i + 1] >= prof.samples.q[i],
                "profile must be nondecreasing");
        if (prof.samples.q[i] < 1.0 - 1e-12) {
            REQUIRE(prof.samples.q[i + 1] > prof.samples.q[i],
                    "profile must be strictly increasing below saturation");
        }
        REQUIRE(prof.samples.p[i] > 0.0, "slope samples must stay positive");
    }
    check_close("q'(0) = c*/mu", prof.slope0, prof.c_star / 1.0, 1e-6);
    REQUIRE(std::abs(prof.samples.q.back() - 1.0) <= 1e-6,
            "profile tail must approach 1");

    // profile solves q'' - c q' + f(q) = 0: finite differences on the grid
    const auto& z = prof.samples.z;
    const auto& q = prof.samples.q;
    const double dz = z[1] - z[0];
    double sup = 0.0;
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
        if (z[i] < 0.1 * z.back() || z[i] > 0.9 * z.back()) continue;
        const double qpp = (q[i + 1] - 2.0 * q[i] + q[i - 1]) / (dz * dz);
        const double qp = (q[i + 1] - q[i - 1]) / (2.0 * dz);
        sup = std::max(sup, std::abs(qpp - prof.c_star * qp + f.value(q[i])));
    }
    REQUIRE(sup <= 1e-6, "profile ODE residual " + std::to_string(sup));
    pass("find_cstar on the logistic reaction");
}

void test_mu_monotonicity() {
    const auto f = HomogeneousF::logistic();
    const double c_01 = find_cstar(f, 0.1, 1e-8).c_star;
    const double c_1 = find_cstar(f, 1.0, 1e-8).c_star;
    const double c_10 = find_cstar(f, 10.0, 1e-8).c_star;
    REQUIRE(c_01 < c_1 && c_1 < c_10, "c* must increase strictly with mu");
    std::cout << "  c*(0.1) = " << c_01 << ", c*(1) = " << c_1
              << ", c*(10) = " << c_10 << "\n";
    pass("mu-monotonicity of the selected speed");
}

void test_refinement_stability() {
    const auto f = HomogeneousF::bistable(0.25);
    FindCStarOptions opt;
    opt.tol_c = 1e-8;
    const double c_base = find_cstar(f, 1.0, opt).c_star;
    opt.shoot.eps0 *= 0.5;
    opt.shoot.rel_tol *= 0.5;
    const double c_fine = find_cstar(f, 1.0, opt).c_star;
    REQUIRE(std::abs(c_base - c_fine) < 10.0 * opt.tol_c,
            "halving eps0 and the tolerance moved c* by " +
                std::to_string(std::abs(c_base - c_fine)));
    pass("refinement stability of the selected speed");
}

void test_axis_contact() {
    // far above the selected speed the bistable backward trajectory dies on
    // the axis inside the dead zone (0, theta)
    const auto f = HomogeneousF::bistable(0.25);
    double c_probe = 2.0;
    PhaseCurve curve = phase_trajectory(f, c_probe);
    while (curve.terminal != PhaseCurve::Terminal::axis_contact && c_probe < 64.0) {
        c_probe *= 2.0;
        curve = phase_trajectory(f, c_probe);
    }
    REQUIRE(curve.terminal == PhaseCurve::Terminal::axis_contact,
            "large-speed bistable trajectory must contact the axis");
    REQUIRE(curve.contact_q > 0.0 && curve.contact_q < 1.0, "contact inside (0,1)");
    REQUIRE(curve.p.back() <= 1e-10, "terminal sample must sit below the contact tolerance");

    // the curve cannot be reparameterized into a profile
    REQUIRE_THROWS(DegenerateCurve, profile_from_trajectory(curve, 40.0));
    pass("axis contact detection and ordering");
}

void test_no_semi_wave() {
    // negative mass integral: spreading fails, no intercept match up to the cap
    REQUIRE_THROWS(NoSemiWave, find_cstar(HomogeneousF::bistable(0.75), 1.0, 1e-8));
    pass("NoSemiWave verdict for a non-spreading reaction");
}

void test_sub_speed_wing() {
    const auto f = HomogeneousF::logistic();
    const SemiWaveProfile prof = find_cstar(f, 1.0, 1e-8);
    const double c_hat = 0.8 * prof.c_star;
    const SubSpeedWing wing = sub_speed_wing(f, c_hat, prof.c_star / 1.0);
    REQUIRE(wing.q_top > 0.0 && wing.q_top < 1.0, "contact level inside (0,1)");
    REQUIRE(wing.samples.q.front() == 0.0, "wing starts at 0");
    // q rises to the contact level and stays there
    const double top = wing.samples.q.back();
    check_close("wing top equals contact level", top, wing.q_top, 1e-6);
    for (std::size_t i = 0; i + 1 < wing.samples.q.size(); ++i) {
        REQUIRE(wing.samples.q[i + 1] >= wing.samples.q[i] - 1e-12,
                "wing must be nondecreasing");
    }
    pass("sub-speed comparison wing");
}

void test_profile_eval_and_inverse() {
    const auto prof = find_cstar(HomogeneousF::logistic(), 1.0, 1e-8);
    for (double level : {0.1, 0.5, 0.9}) {
        const double z = prof.samples.inverse(level);
        check_close("inverse consistency at level " + std::to_string(level),
                    prof.samples.eval_q(z), level, 1e-10);
    }
    REQUIRE_THROWS(LevelNotAttained, prof.samples.inverse(1.5));
    pass("profile evaluation and inversion");
}

}  // namespace

int main() {
    test_energy_identity_at_zero_speed();
    test_defining_equation_residual();
    test_residual_scan_single_sign_change();
    test_find_cstar_logistic();
    test_mu_monotonicity();
    test_refinement_stability();
    test_axis_contact();
    test_no_semi_wave();
    test_sub_speed_wing();
    test_profile_eval_and_inverse();
    std::cout << "all semi-wave tests passed\n";
    return 0;
}
