#pragma once

#include <stdexcept>
#include <string>

namespace pimass {

struct LocalityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotErgodic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotMixedWithin : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SampleCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GammaInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroBackProbability : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pimass
