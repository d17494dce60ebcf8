#include "pimass/generators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <utility>

#include "pimass/errors.hpp"
#include "pimass/rng.hpp"

namespace pimass {

namespace {

double arc_weight(TorusWeighting weighting, Rng& rng) {
    if (weighting == TorusWeighting::uniform) return 1.0;
    return 1.0 / rng.uniform_open01();
}

} // namespace

ReversibleChain torus_chain(const TorusSpec& spec) {
    const std::uint64_t n64 = std::uint64_t(spec.rows) * spec.cols;
    if (n64 < 2) throw DomainError("torus needs at least 2 nodes");
    if (spec.shortcut_fraction < 0.0)
        throw DomainError("shortcut_fraction must be >= 0");
    const StateId n = static_cast<StateId>(n64);
    Rng rng(splitmix64(spec.seed ^ 0x746f727573ULL));

    auto id = [&](StateId r, StateId c) { return r * spec.cols + c; };
    std::vector<Edge> edges;
    std::set<std::pair<StateId, StateId>> used;
    auto add_arc = [&](StateId a, StateId b, double w) {
        edges.push_back({a, b, w});
        auto key = std::minmax(a, b);
        used.insert({key.first, key.second});
    };

    for (StateId r = 0; r < spec.rows; ++r) {
        for (StateId c = 0; c < spec.cols; ++c) {
            if (spec.cols >= 2)
                add_arc(id(r, c), id(r, (c + 1) % spec.cols),
                        arc_weight(spec.weighting, rng));
            if (spec.rows >= 2)
                add_arc(id(r, c), id((r + 1) % spec.rows, c),
                        arc_weight(spec.weighting, rng));
        }
    }

    const std::uint64_t shortcuts =
        static_cast<std::uint64_t>(spec.shortcut_fraction * n);
    std::uint64_t placed = 0;
    while (placed < shortcuts) {
        StateId a = static_cast<StateId>(rng.below(n));
        StateId b = static_cast<StateId>(rng.below(n));
        if (a == b) continue;
        auto key = std::minmax(a, b);
        if (used.count({key.first, key.second})) continue;
        add_arc(a, b, arc_weight(spec.weighting, rng));
        ++placed;
    }

    for (StateId u = 0; u < n; ++u) edges.push_back({u, u, 1.0});
    return ReversibleChain(n, edges);
}

namespace {

// configuration-model pairing; arcs may include self-loops and parallels
std::vector<std::pair<StateId, StateId>> regular_multigraph(StateId n0,
                                                            StateId d,
                                                            Rng& rng) {
    std::vector<StateId> stubs;
    stubs.reserve(std::size_t(n0) * d);
    for (StateId u = 0; u < n0; ++u)
        for (StateId i = 0; i < d; ++i) stubs.push_back(u);
    // Fisher-Yates
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
        std::swap(stubs[i], stubs[rng.below(i + 1)]);
    std::vector<std::pair<StateId, StateId>> arcs;
    arcs.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        arcs.emplace_back(stubs[i], stubs[i + 1]);
    return arcs;
}

bool multigraph_connected(StateId n0,
                          const std::vector<std::pair<StateId, StateId>>& arcs) {
    std::vector<std::vector<StateId>> adj(n0);
    for (auto [a, b] : arcs) {
        if (a == b) continue;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::uint8_t> seen(n0, 0);
    std::vector<StateId> stack{0};
    seen[0] = 1;
    StateId count = 1;
    while (!stack.empty()) {
        StateId u = stack.back();
        stack.pop_back();
        for (StateId v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n0;
}

struct StarBuild {
    std::vector<Edge> edges;
    std::vector<StateId> centers;
    StateId next_node;
};

StarBuild build_stars(StateId n0, StateId d, StateId delta, Rng& rng) {
    auto arcs = regular_multigraph(n0, d, rng);
    int attempts = 0;
    while (!multigraph_connected(n0, arcs)) {
        if (++attempts > 200)
            throw ConstructionFailure(
                "no connected d-regular pairing after 200 attempts");
        arcs = regular_multigraph(n0, d, rng);
    }
    StarBuild out;
    out.next_node = n0;
    for (auto [a, b] : arcs) {
        StateId center = out.next_node++;
        out.centers.push_back(center);
        out.edges.push_back({a, center, 1.0});
        out.edges.push_back({b, center, 1.0});
        for (StateId leaf = 0; leaf + 2 < delta; ++leaf) {
            StateId node = out.next_node++;
            out.edges.push_back({node, center, 1.0});
            out.edges.push_back({node, node, double(d) - 1.0});
        }
    }
    return out;
}

StateId star_node_count(StateId n0, StateId d, StateId delta) {
    return n0 + StateId(std::uint64_t(n0) * d / 2 * (delta - 1));
}

} // namespace

StarExpanderChain star_expander_chain(const StarExpanderSpec& spec) {
    if (spec.d < 3) throw DomainError("expander degree must be >= 3");
    if (spec.delta < 2) throw DomainError("star size must be >= 2");
    if ((std::uint64_t(spec.n0) * spec.d) % 2 != 0)
        throw DomainError("n0 * d must be even");
    Rng rng(splitmix64(spec.seed ^ 0x73746172ULL));

    if (spec.variant == StarExpanderVariant::G) {
        StarBuild b = build_stars(spec.n0, spec.d, spec.delta, rng);
        return {ReversibleChain(b.next_node, b.edges), std::move(b.centers),
                spec.n0};
    }

    // G': half the expander nodes, padded back to |G| with light leaves on
    // node 0, total attached weight eps_attach
    if (spec.n0 % 2 != 0)
        throw DomainError("G' requires even n0");
    StateId half = spec.n0 / 2;
    if ((std::uint64_t(half) * spec.d) % 2 != 0)
        throw DomainError("G' requires (n0/2) * d even");
    if (!(spec.eps_attach > 0.0))
        throw DomainError("eps_attach must be positive");
    StarBuild b = build_stars(half, spec.d, spec.delta, rng);
    StateId target = star_node_count(spec.n0, spec.d, spec.delta);
    if (target < b.next_node)
        throw ConstructionFailure("G' base larger than target size");
    StateId k = target - b.next_node;
    double w = spec.eps_attach / double(k);
    for (StateId i = 0; i < k; ++i) {
        StateId node = b.next_node++;
        b.edges.push_back({0, node, w});
    }
    return {ReversibleChain(b.next_node, b.edges), std::move(b.centers),
            half};
}

TransitionTable nonreversible_lb_chain(StateId n, std::uint64_t tau_fn,
                                       double p_fn) {
    if (n < 3) throw DomainError("need n >= 3");
    if (tau_fn < 1) throw DomainError("tau_fn must be >= 1");
    const double tau = static_cast<double>(tau_fn);
    const double hub_stay = 1.0 - double(n - 1) * p_fn / tau;
    const double hub_out = p_fn / tau;
    const double sat_stay = 1.0 - 1.0 / tau;
    const double sat_back = 1.0 / tau;
    for (double p : {hub_stay, hub_out, sat_stay, sat_back})
        if (!(p >= 0.0 && p <= 1.0))
            throw DomainError("transition probability outside [0,1]");

    TransitionTable table;
    table.n = n;
    table.probs.assign(std::size_t(n) * n, 0.0);
    auto set = [&](StateId u, StateId v, double p) {
        table.probs[std::size_t(u) * n + v] = p;
    };
    set(0, 0, hub_stay);
    for (StateId i = 1; i < n; ++i) {
        set(0, i, hub_out);
        set(i, i, sat_stay);
        set(i, 0, sat_back);
    }
    // the distinguishing arc from the lower-bound argument; it introduces
    // a one-way flow u_{n-1} -> u_1 and makes the chain non-reversible
    for (StateId v = 0; v < n; ++v) set(n - 1, v, 0.0);
    set(n - 1, 1, 1.0);

    // renormalize rows exactly (guards accumulated rounding in row 0)
    for (StateId u = 0; u < n; ++u) {
        double row = 0.0;
        for (StateId v = 0; v < n; ++v) row += table.at(u, v);
        for (StateId v = 0; v < n; ++v)
            table.probs[std::size_t(u) * n + v] /= row;
    }
    return table;
}

DistributionVector table_stationary(const TransitionTable& table) {
    const StateId n = table.n;
    std::vector<double> cur(n, 1.0 / n), nxt(n);
    for (int iter = 0; iter < 2000000; ++iter) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (StateId u = 0; u < n; ++u) {
            const double xu = cur[u];
            if (xu == 0.0) continue;
            for (StateId v = 0; v < n; ++v) nxt[v] += xu * table.at(u, v);
        }
        double diff = 0.0;
        for (StateId v = 0; v < n; ++v) diff += std::abs(nxt[v] - cur[v]);
        cur.swap(nxt);
        if (diff < 1e-14) break;
    }
    return DistributionVector{std::move(cur)};
}

bool table_reversible(const TransitionTable& table,
                      const DistributionVector& pi) {
    if (pi.size() != table.n) throw DimensionMismatch("pi length != n");
    for (StateId u = 0; u < table.n; ++u)
        for (StateId v = 0; v < table.n; ++v) {
            double lhs = pi[u] * table.at(u, v);
            double rhs = pi[v] * table.at(v, u);
            double scale = std::max(std::abs(lhs), std::abs(rhs));
            if (std::abs(lhs - rhs) > 1e-9 * scale && scale > 0.0)
                return false;
        }
    return true;
}

WeightedSampleSource AdversarialVector::source(std::uint64_t seed) const {
    auto sampler = std::make_shared<DiscreteSampler>(gamma);
    auto rng = std::make_shared<Rng>(seed);
    return [sampler, rng]() -> WeightedSample {
        std::uint64_t id = sampler->draw(*rng);
        return {id, sampler->weight(id)};
    };
}

AdversarialVector adversarial_sum_vector(std::uint64_t n, std::uint64_t k,
                                         AdversarialVariant variant,
                                         std::uint64_t seed) {
    if (k < 1 || k > n / 2) throw DomainError("need 1 <= k <= n/2");
    const std::uint64_t units =
        variant == AdversarialVariant::x ? k : 2 * k;
    const double light = std::sqrt(double(k)) / double(n);
    AdversarialVector out;
    out.gamma.assign(n, light);
    for (std::uint64_t j = 0; j < units; ++j) out.gamma[j] = 1.0;
    Rng rng(splitmix64(seed ^ 0x616476ULL));
    for (std::uint64_t i = n - 1; i > 0; --i)
        std::swap(out.gamma[i], out.gamma[rng.below(i + 1)]);
    for (double g : out.gamma) out.gamma_sum += g;
    return out;
}

} // namespace pimass
