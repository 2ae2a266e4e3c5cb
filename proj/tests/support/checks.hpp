#pragma once

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>

// Minimal always-on test harness: first failure prints and exits nonzero.

#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

#define REQUIRE_THROWS(ExType, expr)                                             \
    do {                                                                         \
        bool caught_ = false;                                                    \
        try {                                                                    \
            (void)(expr);                                                        \
        } catch (const ExType&) {                                                \
            caught_ = true;                                                      \
        }                                                                        \
        REQUIRE(caught_, "expected " #ExType " from " #expr);                    \
    } while (0)

namespace testsupport {

inline void check_close(const std::string& name, double got, double want,
                        double tol) {
    if (!(std::abs(got - want) <= tol)) {
        std::cerr << "[FAIL] " << name << ": got " << got << " want " << want
                  << " tol " << tol << " (diff " << std::abs(got - want) << ")\n";
        std::exit(1);
    }
}

inline void pass(const std::string& name) {
    std::cout << "[PASS] " << name << "\n";
}

}  // namespace testsupport
