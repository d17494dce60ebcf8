#pragma once

#include <vector>

#include "pimass/chain.hpp"
#include "pimass/generators.hpp"

namespace testutil {

using namespace pimass;

// 0-1-2 path, all weights 1
inline ReversibleChain path3() {
    return ReversibleChain(3, {{0, 1, 1.0}, {1, 2, 1.0}});
}

inline ReversibleChain single_state() {
    return ReversibleChain(1, {{0, 0, 1.0}});
}

// two states, edge weight 1, self-loops weight 1 each
inline ReversibleChain two_state_lazy() {
    return ReversibleChain(2, {{0, 1, 1.0}, {0, 0, 1.0}, {1, 1, 1.0}});
}

// n-cycle, self-loop weight 1, edge weights 1
inline ReversibleChain lazy_cycle(StateId n) {
    std::vector<Edge> edges;
    for (StateId u = 0; u < n; ++u) {
        edges.push_back({u, StateId((u + 1) % n), 1.0});
        edges.push_back({u, u, 1.0});
    }
    return ReversibleChain(n, edges);
}

} // namespace testutil
