#include "pimass/exact.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pimass/errors.hpp"

namespace pimass {

DistributionVector stationary_exact(const ReversibleChain& chain) {
    if (!chain.connected())
        throw NotErgodic("chain graph is disconnected");
    const StateId n = chain.num_states();
    DistributionVector pi;
    pi.probs.resize(n);
    const double total = chain.total_strength();
    for (StateId u = 0; u < n; ++u) pi.probs[u] = chain.strength(u) / total;

    // one matrix-vector product to confirm the fixed point
    std::vector<double> next(n, 0.0);
    for (StateId u = 0; u < n; ++u) {
        const StateId* nbr = chain.neighbors(u);
        const double* w = chain.weights(u);
        const double inv_s = 1.0 / chain.strength(u);
        for (std::size_t i = 0; i < chain.degree(u); ++i)
            next[nbr[i]] += pi.probs[u] * w[i] * inv_s;
    }
    double residual = 0.0;
    for (StateId u = 0; u < n; ++u)
        residual += std::abs(next[u] - pi.probs[u]);
    if (residual > 1e-9)
        throw NotErgodic("stationary fixed-point residual " +
                         std::to_string(residual));
    return pi;
}

namespace {

// one transition applied to a block of rows; rows are start distributions
void advance_rows(const ReversibleChain& chain, const double* cur,
                  double* nxt, StateId row_begin, StateId row_end,
                  const std::vector<double>& pi, double* out_max) {
    const StateId n = chain.num_states();
    double local_max = 0.0;
    for (StateId r = row_begin; r < row_end; ++r) {
        const double* x = cur + static_cast<std::size_t>(r) * n;
        double* y = nxt + static_cast<std::size_t>(r) * n;
        std::fill(y, y + n, 0.0);
        for (StateId u = 0; u < n; ++u) {
            const double xu = x[u];
            if (xu == 0.0) continue;
            const StateId* nbr = chain.neighbors(u);
            const double* w = chain.weights(u);
            const double scale = xu / chain.strength(u);
            for (std::size_t i = 0; i < chain.degree(u); ++i)
                y[nbr[i]] += scale * w[i];
        }
        double acc = 0.0;
        for (StateId u = 0; u < n; ++u) acc += std::abs(y[u] - pi[u]);
        local_max = std::max(local_max, 0.5 * acc);
    }
    *out_max = local_max;
}

} // namespace

MixingProfile mixing_profile(const ReversibleChain& chain,
                             std::uint64_t t_max, bool continue_past_tau) {
    const StateId n = chain.num_states();
    if (n > 20000) throw TooLarge("mixing_profile guard: n > 20000");
    DistributionVector pi = stationary_exact(chain);

    MixingProfile profile;
    // tvd(delta_u, pi) = 1 - pi(u), so d(0) = 1 - min_u pi(u)
    double d0 = 1.0 - *std::min_element(pi.probs.begin(), pi.probs.end());
    profile.d_values.push_back(d0);

    bool mixed = d0 <= 0.25;
    if (mixed) profile.tau = 0;

    if (!(mixed && !continue_past_tau) && t_max > 0) {
        const std::size_t nn = static_cast<std::size_t>(n) * n;
        std::vector<double> cur(nn, 0.0), nxt(nn);
        for (StateId u = 0; u < n; ++u)
            cur[static_cast<std::size_t>(u) * n + u] = 1.0;

        unsigned hw = std::thread::hardware_concurrency();
        unsigned num_threads =
            std::max(1u, std::min(hw == 0 ? 1u : hw, static_cast<unsigned>(n)));
        std::vector<double> maxima(num_threads);

        for (std::uint64_t t = 1; t <= t_max; ++t) {
            if (num_threads == 1) {
                advance_rows(chain, cur.data(), nxt.data(), 0, n, pi.probs,
                             &maxima[0]);
            } else {
                std::vector<std::thread> workers;
                StateId chunk = (n + num_threads - 1) / num_threads;
                for (unsigned k = 0; k < num_threads; ++k) {
                    StateId lo = static_cast<StateId>(
                        std::min<std::uint64_t>(k * std::uint64_t(chunk), n));
                    StateId hi = static_cast<StateId>(std::min<std::uint64_t>(
                        (k + 1) * std::uint64_t(chunk), n));
                    workers.emplace_back(advance_rows, std::cref(chain),
                                         cur.data(), nxt.data(), lo, hi,
                                         std::cref(pi.probs), &maxima[k]);
                }
                for (auto& th : workers) th.join();
            }
            double d = 0.0;
            for (double m : maxima) d = std::max(d, m);
            profile.d_values.push_back(d);
            cur.swap(nxt);
            if (!mixed && d <= 0.25) {
                mixed = true;
                profile.tau = t;
                if (!continue_past_tau) break;
            }
        }
    }
    if (!mixed)
        throw NotMixedWithin("d(t) > 1/4 for all t <= " +
                             std::to_string(t_max));
    return profile;
}

double pi_norm(const DistributionVector& pi) {
    double acc = 0.0;
    for (double p : pi.probs) acc += p * p;
    return std::sqrt(acc);
}

} // namespace pimass
