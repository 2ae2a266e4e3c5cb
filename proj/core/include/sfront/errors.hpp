#pragma once

#include <stdexcept>

namespace sfront {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reaction-term construction and classification.
struct HypothesisViolation : Error { using Error::Error; };
struct MeanConditionViolation : Error { using Error::Error; };
struct BadWindow : Error { using Error::Error; };

// Wave-speed shooting.
struct NoSemiWave : Error { using Error::Error; };
struct NonMonotoneScan : Error { using Error::Error; };
struct DegenerateCurve : Error { using Error::Error; };

// Moving-boundary time stepping.
struct BlowUp : Error { using Error::Error; };
struct NonPositive : Error { using Error::Error; };
struct FrontCollision : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };

// Diagnostics.
struct NotOrdered : Error { using Error::Error; };
struct DegenerateSlope : Error { using Error::Error; };
struct LevelNotAttained : Error { using Error::Error; };
struct WindowTooShort : Error { using Error::Error; };

// Limit states.
struct PositivityViolation : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

}  // namespace sfront
