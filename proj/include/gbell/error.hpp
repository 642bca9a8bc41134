#pragma once

#include <stdexcept>
#include <string>

namespace gbell {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario construction / composition.
struct InvalidScenarioError : Error { using Error::Error; };
struct UnsupportedCompositionError : Error { using Error::Error; };

// Behavior validation and manipulation.
struct InvalidProbabilityError : Error { using Error::Error; };
struct NormalizationError : Error { using Error::Error; };
struct NotABehaviorError : Error { using Error::Error; };
struct IncompatibleSetError : Error { using Error::Error; };
struct ConditioningOnNullError : Error { using Error::Error; };
struct InvalidMixtureError : Error { using Error::Error; };
struct SignalingError : Error { using Error::Error; };
struct ScenarioMismatchError : Error { using Error::Error; };

// Geometry / LP.
struct UnboundedPolytopeError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct BudgetExceededError : Error { using Error::Error; };

// Inequalities.
struct DegenerateInequalityError : Error { using Error::Error; };
struct InvalidPairError : Error { using Error::Error; };

// Quantum.
struct IncompatibleContextError : Error { using Error::Error; };
struct ConstructionError : Error { using Error::Error; };

// File formats.
struct ParseError : Error { using Error::Error; };

} // namespace gbell
