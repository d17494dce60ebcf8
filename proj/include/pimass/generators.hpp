#pragma once

#include <cstdint>
#include <vector>

#include "pimass/chain.hpp"
#include "pimass/sum_approx.hpp"

namespace pimass {

enum class TorusWeighting { uniform, inverse_uniform };

struct TorusSpec {
    StateId rows = 1;
    StateId cols = 1;
    double shortcut_fraction = 0.0; // edges added = fraction * n
    TorusWeighting weighting = TorusWeighting::uniform;
    std::uint64_t seed = 0;
};

// Periodic grid with 4-neighbor arcs, floor(fraction*n) random shortcut
// edges (no duplicates or self-pairs) and a self-loop of weight 1 on
// every node. uniform: arc weight 1; inverse_uniform: arc weight 1/X
// with X ~ U(0,1]. Parallel arcs (2-row/2-column wraparound) merge by
// weight addition.
ReversibleChain torus_chain(const TorusSpec& spec);

enum class StarExpanderVariant { G, G_prime };

struct StarExpanderSpec {
    StateId n0 = 8;       // expander nodes
    StateId d = 8;        // expander degree
    StateId delta = 8;    // star size
    StarExpanderVariant variant = StarExpanderVariant::G;
    double eps_attach = 0.01; // G' padding arc weight budget
    std::uint64_t seed = 0;
};

struct StarExpanderChain {
    ReversibleChain chain;
    std::vector<StateId> star_centers;
    StateId original_nodes; // nodes inherited from the expander
};

// Every arc of a random d-regular multigraph (configuration model,
// seeded, retried until connected) is replaced by a (Delta+1)-node star:
// weight-1 arcs from the two endpoints and from Delta-2 leaf nodes to the
// center; each leaf carries a self-loop of weight d-1. G' is built on
// n0/2 expander nodes and padded with extra leaves attached to node 0
// with total weight eps_attach, so it has exactly as many nodes as G.
// Throws ConstructionFailure if no connected pairing is found.
StarExpanderChain star_expander_chain(const StarExpanderSpec& spec);

// General (not necessarily reversible) chain as an explicit dense
// row-stochastic table. Kept separate from ReversibleChain on purpose:
// the estimators reject it at the type level.
struct TransitionTable {
    StateId n = 0;
    std::vector<double> probs; // row-major, n*n
    bool reversible_hint = false;

    double at(StateId u, StateId v) const { return probs[std::size_t(u) * n + v]; }
};

// Hub-and-satellites chain with the indistinguishability arc
// p_{u_{n-1}, u_1} = 1 added, which breaks detailed balance. Rows are
// exactly stochastic; throws DomainError if any entry leaves [0,1].
TransitionTable nonreversible_lb_chain(StateId n, std::uint64_t tau_fn,
                                       double p_fn);

// stationary distribution of a general table by power iteration
DistributionVector table_stationary(const TransitionTable& table);

// detailed-balance check for a general table against pi
bool table_reversible(const TransitionTable& table,
                      const DistributionVector& pi);

enum class AdversarialVariant { x, x_prime };

struct AdversarialVector {
    std::vector<double> gamma; // permuted entries
    double gamma_sum = 0.0;

    DiscreteSampler sampler() const { return DiscreteSampler(gamma); }
    WeightedSampleSource source(std::uint64_t seed) const;
};

// k unit entries (2k for x'), the rest sqrt(k)/n, under a seeded uniform
// random permutation of the indices
AdversarialVector adversarial_sum_vector(std::uint64_t n, std::uint64_t k,
                                         AdversarialVariant variant,
                                         std::uint64_t seed);

} // namespace pimass
