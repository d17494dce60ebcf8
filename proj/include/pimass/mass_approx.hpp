#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pimass/chain.hpp"
#include "pimass/sum_approx.hpp"

namespace pimass {

// gamma_u = pi(u)/pi(v) for every visited state u, anchored at
// gamma_v = 1. Values propagate along walks via detailed-balance probe
// ratios. Optionally stored in log space for chains with extreme weight
// ratios.
class GammaLedger {
  public:
    GammaLedger(StateId num_states, StateId anchor, bool log_space = false);

    bool recorded(StateId u) const { return set_[u] != 0; }
    double gamma(StateId u) const; // throws DomainError if unrecorded
    void record_ratio(StateId from, StateId to, double ratio);
    StateId anchor() const { return anchor_; }
    std::uint64_t recorded_count() const { return count_; }

  private:
    StateId anchor_;
    bool log_space_;
    std::vector<double> values_; // gamma or log gamma
    std::vector<std::uint8_t> set_;
    std::uint64_t count_ = 0;
};

struct WalkConfig {
    std::uint64_t t = 1;        // walk length per sample / sampling period
    std::uint64_t burn_in = 0;  // FullMassApprox only
    double c_constant = 1.0;    // multiplier when t is derived from tau
    bool log_space_gamma = false;
    std::optional<std::uint64_t> sample_cap;
    std::optional<std::uint64_t> step_budget; // abort with BudgetExceeded
};

// gamma_{u_next} = gamma_u * probe(u, u_next) / probe(u_next, u); records
// the value on first sight, two metered probe calls. Throws
// ZeroBackProbability if the reverse transition has probability 0.
double gamma_step(GammaLedger& ledger, QuerySession& session, StateId u,
                  StateId u_next);

// ceil(tau * c * ln(pi_norm^-1 eps^-1 ln(3/delta)) / ln 2), at least 1
std::uint64_t walk_length_from_tau(std::uint64_t tau, double pi_norm,
                                   double epsilon, double delta,
                                   double c_constant);

// Fresh t-step walk from v per sample; the endpoint (u, gamma_u) feeds a
// collision counter with threshold 4 * repeat_threshold(eps, delta).
// Returns r/w, an estimate of pi(v).
EstimatorReport mass_approx(const ReversibleChain& chain, StateId v,
                            double epsilon, double delta,
                            const WalkConfig& walk, std::uint64_t seed);

// One long walk sampled every t steps; every state visited along the way
// joins the collision set after the round's repeat check.
EstimatorReport full_mass_approx(const ReversibleChain& chain, StateId v,
                                 double epsilon, double delta,
                                 const WalkConfig& walk, std::uint64_t seed);

} // namespace pimass
