#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pimass/rng.hpp"

namespace pimass {

using StateId = std::uint32_t;

// One undirected edge, listed once. A self-loop has u == v.
struct Edge {
    StateId u;
    StateId v;
    double weight;

    bool operator==(const Edge&) const = default;
};

// Time-reversible Markov chain represented as a weighted undirected graph.
// p_{uu'} = w_{uu'} / s(u) where s(u) is the sum of u's incident weights
// (a self-loop weight counted once). Immutable after construction.
class ReversibleChain {
  public:
    // Duplicate edges {u,v} are merged by summing their weights.
    ReversibleChain(StateId n, const std::vector<Edge>& edges);

    StateId num_states() const { return n_; }
    std::size_t num_edges() const { return edge_count_; }

    double strength(StateId u) const { return strength_[u]; }
    double total_strength() const { return total_strength_; }

    // w_{uu'} or 0 if not adjacent
    double edge_weight(StateId u, StateId v) const;
    // p_{uu'} = w_{uu'}/s(u)
    double transition_prob(StateId u, StateId v) const;

    // neighbor sampled with probability w_{uu'}/s(u)
    StateId sample_neighbor(StateId u, Rng& rng) const;

    std::size_t degree(StateId u) const { return offsets_[u + 1] - offsets_[u]; }
    const StateId* neighbors(StateId u) const { return &targets_[offsets_[u]]; }
    const double* weights(StateId u) const { return &weights_[offsets_[u]]; }

    // each undirected edge once, u <= v, sorted; the serialization order
    std::vector<Edge> edge_list() const;

    bool connected() const;

  private:
    StateId n_;
    std::size_t edge_count_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<StateId> targets_;  // sorted per state
    std::vector<double> weights_;
    std::vector<double> cumweights_; // per-state prefix sums over weights_
    std::vector<double> strength_;
    double total_strength_ = 0.0;
};

// Dense probability vector.
struct DistributionVector {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    double operator[](std::size_t i) const { return probs[i]; }

    // throws DomainError unless entries are nonnegative and sum to 1
    // within absolute tolerance 1e-9
    void validate() const;
};

// half the l1 distance; throws DimensionMismatch
double tv_distance(const DistributionVector& a, const DistributionVector& b);

// detailed balance pi(u) p_{uu'} = pi(u') p_{u'u} on every edge,
// relative tolerance 1e-9; throws DimensionMismatch
bool validate_reversibility(const ReversibleChain& chain,
                            const DistributionVector& pi);

// Metered step()/probe() access. Both queries are restricted to states
// already visited; the start state is visited from the outset.
class QuerySession {
  public:
    QuerySession(const ReversibleChain& chain, StateId start,
                 std::uint64_t seed);

    StateId step(StateId u);                 // throws LocalityViolation
    double probe(StateId u, StateId u2);     // throws LocalityViolation

    bool visited(StateId u) const { return visited_[u] != 0; }
    std::uint64_t footprint() const { return footprint_; }
    std::uint64_t step_calls() const { return step_calls_; }
    std::uint64_t probe_calls() const { return probe_calls_; }
    StateId start_state() const { return start_; }
    const ReversibleChain& chain() const { return chain_; }

  private:
    const ReversibleChain& chain_;
    StateId start_;
    std::vector<std::uint8_t> visited_;
    std::uint64_t footprint_ = 0;
    std::uint64_t step_calls_ = 0;
    std::uint64_t probe_calls_ = 0;
    Rng rng_;

    void mark_visited(StateId u);
};

// Line-oriented chain format: header "n m", then m lines "u v weight"
// (undirected, each edge once, self-loop as "u u weight"). Reals are
// written with 17 significant digits so round-trips are exact.
void write_chain(const ReversibleChain& chain, std::ostream& out);
void write_chain_file(const ReversibleChain& chain, const std::string& path);
ReversibleChain read_chain(std::istream& in);
ReversibleChain read_chain_file(const std::string& path);

} // namespace pimass
