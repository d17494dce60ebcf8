#include <doctest.h>

#include <cmath>

#include "pimass/baselines.hpp"
#include "pimass/errors.hpp"
#include "pimass/exact.hpp"
#include "pimass/generators.hpp"
#include "pimass/rng.hpp"

#include "helpers.hpp"

using namespace pimass;

TEST_CASE("return time on a single state is exactly 1") {
    auto chain = testutil::single_state();
    auto rep = return_time_estimate(chain, 0, {10, 25}, 1);
    CHECK(rep.estimate == 1.0);
    CHECK(rep.samples == 25);
    CHECK(rep.step_calls == 25); // every trial returns after one step
    CHECK(rep.footprint == 1);
}

TEST_CASE("deterministic alternation returns in exactly two steps") {
    ReversibleChain chain(2, {{0, 1, 1.0}});
    auto rep = return_time_estimate(chain, 0, {16, 40}, 7);
    CHECK(rep.estimate == 0.5); // pi(0) = 1/2, return time 2
    CHECK(rep.step_calls == 80);
    CHECK(rep.probe_calls == 0);
}

TEST_CASE("truncation censors long excursions and biases the estimate up") {
    // on a lazy cycle the expected return time is n * E[holding]; a tight
    // truncation caps every excursion, inflating trials/total_time
    auto chain = testutil::lazy_cycle(24);
    auto tight = return_time_estimate(chain, 0, {4, 400}, 11);
    auto loose = return_time_estimate(chain, 0, {4000, 400}, 11);
    CHECK(tight.estimate >= loose.estimate);
    CHECK(tight.step_calls <= 4 * 400);
    double truth = 1.0 / 24.0;
    CHECK(std::abs(loose.estimate - truth) < 0.25 * truth);
}

TEST_CASE("estimates concentrate near pi(v) on a torus") {
    auto torus = torus_chain({12, 12, 0.0, TorusWeighting::uniform, 2});
    auto pi = stationary_exact(torus);
    const StateId v = 17;
    int hits = 0;
    const int trials = 40;
    for (int i = 0; i < trials; ++i) {
        auto rep = return_time_estimate(torus, v, {200000, 800},
                                        derive_seed(31, i));
        if (std::abs(rep.estimate - pi.probs[v]) < 0.25 * pi.probs[v])
            ++hits;
    }
    CHECK(hits >= 30);
}

TEST_CASE("invalid configuration is rejected") {
    auto chain = testutil::single_state();
    CHECK_THROWS_AS(return_time_estimate(chain, 0, {0, 10}, 1), DomainError);
    CHECK_THROWS_AS(return_time_estimate(chain, 0, {10, 0}, 1), DomainError);
}
