#include "pimass/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "pimass/errors.hpp"

namespace pimass {

ReversibleChain::ReversibleChain(StateId n, const std::vector<Edge>& edges)
    : n_(n) {
    if (n == 0) throw DomainError("chain must have at least one state");
    std::map<std::pair<StateId, StateId>, double> merged;
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n)
            throw DomainError("edge endpoint out of range");
        if (!(e.weight > 0.0))
            throw DomainError("edge weights must be strictly positive");
        auto key = std::minmax(e.u, e.v);
        merged[{key.first, key.second}] += e.weight;
    }
    edge_count_ = merged.size();

    std::vector<std::size_t> deg(n, 0);
    for (const auto& [key, w] : merged) {
        deg[key.first]++;
        if (key.second != key.first) deg[key.second]++;
    }
    offsets_.assign(n + 1, 0);
    for (StateId u = 0; u < n; ++u) offsets_[u + 1] = offsets_[u] + deg[u];
    targets_.resize(offsets_[n]);
    weights_.resize(offsets_[n]);

    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [key, w] : merged) {
        auto [a, b] = key;
        targets_[fill[a]] = b;
        weights_[fill[a]++] = w;
        if (b != a) {
            targets_[fill[b]] = a;
            weights_[fill[b]++] = w;
        }
    }
    // neighbor lists are emitted in ascending order already (map iteration),
    // except the lower endpoints interleave; sort each list to be safe
    for (StateId u = 0; u < n; ++u) {
        std::vector<std::pair<StateId, double>> row;
        row.reserve(deg[u]);
        for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i)
            row.emplace_back(targets_[i], weights_[i]);
        std::sort(row.begin(), row.end());
        for (std::size_t i = 0; i < row.size(); ++i) {
            targets_[offsets_[u] + i] = row[i].first;
            weights_[offsets_[u] + i] = row[i].second;
        }
    }

    strength_.assign(n, 0.0);
    cumweights_.resize(offsets_[n]);
    for (StateId u = 0; u < n; ++u) {
        double acc = 0.0;
        for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
            acc += weights_[i];
            cumweights_[i] = acc;
        }
        strength_[u] = acc;
        total_strength_ += acc;
        if (acc <= 0.0)
            throw DomainError("state " + std::to_string(u) + " has no edges");
    }
}

double ReversibleChain::edge_weight(StateId u, StateId v) const {
    const StateId* beg = &targets_[offsets_[u]];
    const StateId* end = &targets_[offsets_[u + 1]];
    const StateId* it = std::lower_bound(beg, end, v);
    if (it == end || *it != v) return 0.0;
    return weights_[offsets_[u] + static_cast<std::size_t>(it - beg)];
}

double ReversibleChain::transition_prob(StateId u, StateId v) const {
    return edge_weight(u, v) / strength_[u];
}

StateId ReversibleChain::sample_neighbor(StateId u, Rng& rng) const {
    const double x = rng.uniform01() * strength_[u];
    const double* beg = &cumweights_[offsets_[u]];
    const double* end = &cumweights_[offsets_[u + 1]];
    const double* it = std::upper_bound(beg, end, x);
    std::size_t idx = static_cast<std::size_t>(it - beg);
    if (idx >= offsets_[u + 1] - offsets_[u]) idx = offsets_[u + 1] - offsets_[u] - 1;
    return targets_[offsets_[u] + idx];
}

std::vector<Edge> ReversibleChain::edge_list() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (StateId u = 0; u < n_; ++u)
        for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i)
            if (targets_[i] >= u) out.push_back({u, targets_[i], weights_[i]});
    return out;
}

bool ReversibleChain::connected() const {
    std::vector<std::uint8_t> seen(n_, 0);
    std::vector<StateId> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        StateId u = stack.back();
        stack.pop_back();
        for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
            StateId v = targets_[i];
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n_;
}

void DistributionVector::validate() const {
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw DomainError("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw DomainError("probabilities sum to " + std::to_string(sum));
}

double tv_distance(const DistributionVector& a, const DistributionVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("distribution lengths differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::abs(a.probs[i] - b.probs[i]);
    return 0.5 * acc;
}

bool validate_reversibility(const ReversibleChain& chain,
                            const DistributionVector& pi) {
    if (pi.size() != chain.num_states())
        throw DimensionMismatch("pi length != chain size");
    for (StateId u = 0; u < chain.num_states(); ++u) {
        const StateId* nbr = chain.neighbors(u);
        for (std::size_t i = 0; i < chain.degree(u); ++i) {
            StateId v = nbr[i];
            double lhs = pi[u] * chain.transition_prob(u, v);
            double rhs = pi[v] * chain.transition_prob(v, u);
            double scale = std::max(std::abs(lhs), std::abs(rhs));
            if (std::abs(lhs - rhs) > 1e-9 * scale) return false;
        }
    }
    return true;
}

QuerySession::QuerySession(const ReversibleChain& chain, StateId start,
                           std::uint64_t seed)
    : chain_(chain), start_(start), visited_(chain.num_states(), 0),
      rng_(seed) {
    if (start >= chain.num_states())
        throw DomainError("start state out of range");
    mark_visited(start);
}

void QuerySession::mark_visited(StateId u) {
    if (!visited_[u]) {
        visited_[u] = 1;
        ++footprint_;
    }
}

StateId QuerySession::step(StateId u) {
    if (u >= chain_.num_states() || !visited_[u])
        throw LocalityViolation("step() on unvisited state " +
                                std::to_string(u));
    ++step_calls_;
    StateId next = chain_.sample_neighbor(u, rng_);
    mark_visited(next);
    return next;
}

double QuerySession::probe(StateId u, StateId u2) {
    if (u >= chain_.num_states() || !visited_[u])
        throw LocalityViolation("probe() on unvisited state " +
                                std::to_string(u));
    if (u2 >= chain_.num_states() || !visited_[u2])
        throw LocalityViolation("probe() on unvisited state " +
                                std::to_string(u2));
    ++probe_calls_;
    return chain_.transition_prob(u, u2);
}

void write_chain(const ReversibleChain& chain, std::ostream& out) {
    auto edges = chain.edge_list();
    out << chain.num_states() << ' ' << edges.size() << '\n';
    char buf[64];
    for (const Edge& e : edges) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
        out << e.u << ' ' << e.v << ' ' << buf << '\n';
    }
}

void write_chain_file(const ReversibleChain& chain, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    write_chain(chain, out);
    if (!out) throw IoError("write failed: " + path);
}

ReversibleChain read_chain(std::istream& in) {
    std::uint64_t n = 0, m = 0;
    if (!(in >> n >> m)) throw IoError("bad chain header");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        StateId u, v;
        double w;
        if (!(in >> u >> v >> w)) throw IoError("bad edge line");
        edges.push_back({u, v, w});
    }
    return ReversibleChain(static_cast<StateId>(n), edges);
}

ReversibleChain read_chain_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_chain(in);
}

} // namespace pimass
