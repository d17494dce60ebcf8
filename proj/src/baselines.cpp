#include "pimass/baselines.hpp"

#include <chrono>

#include "pimass/errors.hpp"

namespace pimass {

EstimatorReport return_time_estimate(const ReversibleChain& chain, StateId v,
                                     const ReturnTimeConfig& config,
                                     std::uint64_t seed) {
    if (config.truncation < 1 || config.trials < 1)
        throw DomainError("truncation and trials must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    QuerySession session(chain, v, seed);
    double total_time = 0.0;
    for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        StateId u = v;
        std::uint64_t time = config.truncation; // censored value
        for (std::uint64_t i = 1; i <= config.truncation; ++i) {
            u = session.step(u);
            if (u == v) {
                time = i;
                break;
            }
        }
        total_time += static_cast<double>(time);
    }
    EstimatorReport report;
    report.samples = config.trials;
    report.estimate = static_cast<double>(config.trials) / total_time;
    report.step_calls = session.step_calls();
    report.probe_calls = session.probe_calls();
    report.footprint = session.footprint();
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    return report;
}

} // namespace pimass
