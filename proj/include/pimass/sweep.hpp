#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pimass/chain.hpp"

namespace pimass {

enum class Algo { mass_approx, full_mass_approx, return_time };

const char* algo_name(Algo a);
Algo algo_from_name(const std::string& name); // throws DomainError

struct SweepRecord {
    Algo algo;
    std::uint64_t walk_len;
    std::uint64_t trial;
    std::uint64_t seed;
    double estimate;
    double true_pi;
    double rel_error;
    std::uint64_t step_calls;
    std::uint64_t probe_calls;
    std::uint64_t footprint;
    std::uint64_t elapsed_ms;
};

struct SweepConfig {
    double epsilon = 0.25;
    double delta = 0.1;
    std::uint64_t master_seed = 0;
    std::uint64_t budget = 100'000'000; // combined step+probe per algo
    std::uint64_t rt_trials = 30;       // inner walks per return-time run
    double c_constant = 1.0;
    std::uint64_t burn_in = 0;
    std::uint64_t start_len = 10;
};

// Per algorithm, walk length starts at start_len and
// grows by sqrt(2); 3 independent trials per length; stops once all 3
// estimates land within (1 +- eps) of the exact pi(v) or the query budget
// runs out (recorded by truncating the sweep, not fatal). Trials at each
// length run concurrently on per-trial seed streams; records come back
// sorted by (algo, walk_len, trial) so scheduling never shows in output.
std::vector<SweepRecord> run_sweep(const ReversibleChain& chain, StateId v,
                                   const std::vector<Algo>& algos,
                                   const SweepConfig& config);

// header + one row per record, reals at 17 significant digits; byte
// deterministic. Throws DomainError on empty input (no file is created),
// IoError on write failure.
void emit_csv(const std::vector<SweepRecord>& records,
              const std::string& path);

std::vector<SweepRecord> parse_csv(const std::string& path);

// static log-log SVG, one polyline (or a lone marker) per algorithm:
// rel_error against total step+probe calls
void emit_svg(const std::vector<SweepRecord>& records,
              const std::string& path);

} // namespace pimass
