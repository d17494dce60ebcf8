#pragma once

#include <cstdint>
#include <vector>

#include "pimass/chain.hpp"

namespace pimass {

struct MixingProfile {
    std::vector<double> d_values; // d(t) for t = 0, 1, ...
    std::uint64_t tau = 0;        // smallest t with d(t) <= 1/4
};

// pi(u) = s(u) / sum_w s(w); verifies the fixed-point residual
// ||pi P - pi||_1 <= 1e-9 before returning. Throws NotErgodic on a
// disconnected graph.
DistributionVector stationary_exact(const ReversibleChain& chain);

// Exact d(t) = max over point-mass starts of tvd(delta_u P^t, pi); the
// maximizing initial distribution is always a point mass. Stops at tau
// unless continue_past_tau, in which case the full curve up to t_max is
// produced. Throws NotMixedWithin if d(t_max) > 1/4, TooLarge if
// n > 20000. Parallel over start states; result independent of thread
// count.
MixingProfile mixing_profile(const ReversibleChain& chain,
                             std::uint64_t t_max,
                             bool continue_past_tau = false);

// l2 norm of a distribution; in [1/sqrt(n), 1]
double pi_norm(const DistributionVector& pi);

} // namespace pimass
