#include "sfront/nonlinearity.hpp"

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "support/checks.hpp"
#include "support/oracles.hpp"

#include "sfront/errors.hpp"

using namespace sfront;
using testsupport::check_close;
using testsupport::integrate;
using testsupport::pass;

namespace {

void test_eval_basics() {
    const auto logistic = NonlinearitySpec::homogeneous(HomogeneousF::logistic());
    REQUIRE(logistic.eval(0.0, 0.0, 0.0) == 0.0, "f(0) must be exactly zero");
    check_close("logistic f(0.5)", logistic.eval(0, 0, 0.5), 0.25, 1e-15);

    const auto kpp =
        make_kpp_time_ap(QuasiPeriodicSignal::constant(1.0));
    check_close("kpp constant at u=1", kpp.eval(3.0, 0.0, 1.0), 0.0, 1e-15);
    check_close("kpp reduces to logistic", kpp.eval(7.0, 2.0, 0.5), 0.25, 1e-15);

    // clamping makes eval total
    check_close("clamped above u_cap", logistic.eval(0, 0, 5.0),
                HomogeneousF::logistic().value(2.0), 1e-15);
    check_close("clamped below zero", logistic.eval(0, 0, -3.0), 0.0, 1e-15);
    pass("eval basics");
}

void test_zero_at_origin_everywhere() {
    std::vector<NonlinearitySpec> specs;
    specs.push_back(NonlinearitySpec::homogeneous(HomogeneousF::logistic()));
    specs.push_back(NonlinearitySpec::homogeneous(HomogeneousF::bistable(0.25)));
    specs.push_back(NonlinearitySpec::homogeneous(HomogeneousF::combustion(0.3)));
    specs.push_back(make_kpp_time_ap(
        {1.0, {{0.3, 1.0, 0.0}, {0.3, std::sqrt(2.0), 0.0}}}));
    specs.push_back(make_kpp_space_ap(
        {1.0, {{0.3, 1.0, 0.0}, {0.3, std::sqrt(2.0), 0.0}}}));
    specs.push_back(make_two_phase(HomogeneousF::logistic(),
                                   HomogeneousF::bistable(0.25), 2.0, 5.0));
    for (const auto& spec : specs) {
        for (int ti = -3; ti <= 3; ++ti) {
            for (int xi = -3; xi <= 3; ++xi) {
                REQUIRE(spec.eval(1.7 * ti, 2.3 * xi, 0.0) == 0.0,
                        "eval(t,x,0) must be exactly 0");
            }
        }
    }
    pass("f(t,x,0) == 0 for every constructed reaction");
}

void test_antiderivative_matches_quadrature() {
    const std::vector<HomogeneousF> fs = {
        HomogeneousF::logistic(), HomogeneousF::bistable(0.25),
        HomogeneousF::combustion(0.3),
        HomogeneousF::polynomial({2.0, -2.0}, "fast_logistic"),
        HomogeneousF::polynomial({0.5, 1.0, -1.5})};
    for (const auto& f : fs) {
        for (int i = 1; i <= 16; ++i) {
            const double s = i / 16.0;
            const double want =
                integrate([&](double u) { return f.value(u); }, 0.0, s, 1e-13);
            check_close("F(" + std::to_string(s) + ") of " + f.name(),
                        f.antiderivative(s), want, 1e-10);
        }
    }
    pass("antiderivative agrees with independent quadrature to 1e-10");
}

void test_derivative_consistency() {
    const std::vector<HomogeneousF> fs = {HomogeneousF::logistic(),
                                          HomogeneousF::bistable(0.25),
                                          HomogeneousF::polynomial({0.5, 1.0, -1.5})};
    for (const auto& f : fs) {
        for (int i = 1; i < 10; ++i) {
            const double u = i / 10.0;
            const double fd = testsupport::fd_derivative(
                [&](double v) { return f.value(v); }, u, 1e-4);
            check_close("f'(" + std::to_string(u) + ") of " + f.name(),
                        f.derivative(u), fd, 1e-9);
        }
    }
    pass("analytic derivative agrees with finite differences");
}

void test_classify() {
    REQUIRE(classify(HomogeneousF::logistic(), 1000) == HomogeneousClass::monostable,
            "logistic is monostable");

    // mass integral of u(1-u)(u-theta) is (1-2 theta)/12; positive for
    // theta = 0.25 (independent quadrature cross-check)
    const auto bi = HomogeneousF::bistable(0.25);
    const double mass =
        integrate([&](double u) { return bi.value(u); }, 0.0, 1.0, 1e-14);
    check_close("bistable mass integral", mass, 1.0 / 24.0, 1e-12);
    REQUIRE(classify(bi, 1000) == HomogeneousClass::bistable, "bistable(0.25)");

    REQUIRE(classify(HomogeneousF::combustion(0.3), 1000) ==
                HomogeneousClass::combustion,
            "combustion(0.3)");

    // negative mass integral: satisfies the standing hypothesis but none of
    // the three named classes
    REQUIRE(classify(HomogeneousF::bistable(0.75), 1000) ==
                HomogeneousClass::generic,
            "bistable shape with negative mass is generic");

    // refinement invariance for the shipped reactions
    for (const auto& f : {HomogeneousF::logistic(), HomogeneousF::bistable(0.25),
                          HomogeneousF::combustion(0.3)}) {
        REQUIRE(classify(f, 1000) == classify(f, 10000),
                "classification must be grid-refinement invariant");
    }

    REQUIRE_THROWS(HypothesisViolation,
                   classify(HomogeneousF::polynomial({1.0}), 1000));  // f(1) != 0
    REQUIRE_THROWS(HypothesisViolation,
                   classify(HomogeneousF::polynomial({-1.0, 1.0}), 1000));  // f'(1) > 0
    pass("classification of the shipped reaction classes");
}

void test_two_phase() {
    const auto f1 = HomogeneousF::logistic();
    const auto f2 = HomogeneousF::polynomial({2.0, -2.0}, "fast_logistic");
    const auto spec = make_two_phase(f1, f2, 2.0, 5.0);

    for (double u : {0.1, 0.5, 0.9}) {
        // exact match outside the ramp window, on both sides
        for (double t : {-10.0, 0.0, 2.0}) {
            REQUIRE(spec.eval(t, 0, u) == f1.value(u), "f == f1 for t <= t1");
        }
        for (double t : {5.0, 8.0, 100.0}) {
            REQUIRE(spec.eval(t, 0, u) == f2.value(u), "f == f2 for t >= t2");
        }
    }
    // shared zeros inside the window
    check_close("two-phase at u=0 mid-window", spec.eval(3.5, 0, 0.0), 0.0, 1e-15);
    check_close("two-phase at u=1 mid-window", spec.eval(3.5, 0, 1.0), 0.0, 1e-15);

    // identical phases degenerate to a time-independent reaction
    const auto same = make_two_phase(f1, f1, 2.0, 5.0);
    for (double t : {0.0, 3.0, 3.7, 10.0}) {
        check_close("degenerate two-phase is time-independent",
                    same.eval(t, 0, 0.37), f1.value(0.37), 1e-15);
    }

    REQUIRE_THROWS(BadWindow, make_two_phase(f1, f2, 5.0, 2.0));
    REQUIRE_THROWS(HypothesisViolation,
                   make_two_phase(HomogeneousF::polynomial({1.0}), f2, 0.0, 1.0));
    pass("two-phase reaction construction");
}

void test_kpp_makers() {
    // zero-mean forcing violates the standing mean condition
    REQUIRE_THROWS(MeanConditionViolation,
                   make_kpp_time_ap({0.0, {{0.3, 1.0, 0.0}}}));
    // spatial coefficient must be positive: 1 - 0.6 - 0.6 < 0
    REQUIRE_THROWS(MeanConditionViolation,
                   make_kpp_space_ap({1.0, {{0.6, 1.0, 0.0}, {0.6, 2.0, 0.0}}}));
    // the shipped coefficient has inf a >= 0.4 > 0
    const auto ok = make_kpp_space_ap(
        {1.0, {{0.3, 1.0, 0.0}, {0.3, std::sqrt(2.0), 0.0}}});
    REQUIRE(ok.signal().lower_bound() >= 0.4 - 1e-12, "inf a >= 0.4");
    pass("kpp constructors enforce the mean conditions");
}

void test_signal() {
    const QuasiPeriodicSignal c{1.0, {{0.3, 1.0, 0.0}, {0.3, std::sqrt(2.0), 0.0}}};
    check_close("signal at 0", c.eval(0.0), 1.6, 1e-15);

    // long-window average approaches the mean
    const double T = 2000.0;
    const double avg = c.integral(T) / T;
    check_close("long-window average", avg, c.mean(), 1e-3);

    // exact antiderivative against quadrature
    const double quad = integrate([&](double s) { return c.eval(s); }, 0.0, 7.3);
    check_close("antiderivative vs quadrature", c.integral(7.3), quad, 1e-10);
    pass("quasi-periodic signal");
}

void test_json_round_trip() {
    std::vector<NonlinearitySpec> specs;
    specs.push_back(NonlinearitySpec::homogeneous(HomogeneousF::bistable(0.25)));
    specs.push_back(NonlinearitySpec::homogeneous(
        HomogeneousF::polynomial({0.5, 1.0, -1.5})));
    specs.push_back(make_kpp_time_ap({1.0, {{0.3, 1.0, 0.0}}}));
    specs.push_back(make_two_phase(HomogeneousF::logistic(),
                                   HomogeneousF::combustion(0.3), 1.0, 2.0));
    for (const auto& spec : specs) {
        const auto j = spec.to_json();
        const auto back = NonlinearitySpec::from_json(j);
        REQUIRE(back.to_json() == j, "JSON round trip must be stable");
        REQUIRE(back.hash() == spec.hash(), "hash must be stable");
        for (double t : {0.0, 1.5, 3.0}) {
            for (double u : {0.2, 0.8}) {
                REQUIRE(back.eval(t, 0.3, u) == spec.eval(t, 0.3, u),
                        "deserialized spec must evaluate identically");
            }
        }
    }
    pass("spec JSON round trip");
}

}  // namespace

int main() {
    test_eval_basics();
    test_zero_at_origin_everywhere();
    test_antiderivative_matches_quadrature();
    test_derivative_consistency();
    test_classify();
    test_two_phase();
    test_kpp_makers();
    test_signal();
    test_json_round_trip();
    std::cout << "all reaction-term tests passed\n";
    return 0;
}
