#pragma once

#include <cstdint>

#include "pimass/chain.hpp"
#include "pimass/sum_approx.hpp"

namespace pimass {

struct ReturnTimeConfig {
    std::uint64_t truncation = 1; // max walk length per trial
    std::uint64_t trials = 1;
};

// Truncated return-time baseline: pi(v) = 1/E[T_v+]. Each trial walks
// from v until it returns or the truncation is hit; truncated walks are
// censored (they contribute the truncation value), which biases the
// estimate downward rather than discarding mass.
EstimatorReport return_time_estimate(const ReversibleChain& chain, StateId v,
                                     const ReturnTimeConfig& config,
                                     std::uint64_t seed);

} // namespace pimass
