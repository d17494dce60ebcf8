#include <doctest.h>

#include <cmath>
#include <vector>

#include "pimass/errors.hpp"
#include "pimass/exact.hpp"
#include "pimass/generators.hpp"
#include "pimass/rng.hpp"

using namespace pimass;

TEST_CASE("2x2 uniform torus: wraparound arcs merge, strength 5 everywhere") {
    auto chain = torus_chain({2, 2, 0.0, TorusWeighting::uniform, 0});
    REQUIRE(chain.num_states() == 4);
    for (StateId u = 0; u < 4; ++u) {
        // two parallel horizontal arcs and two vertical ones merge into
        // weight-2 edges; plus the weight-1 self-loop
        CHECK(chain.strength(u) == 5.0);
    }
    auto pi = stationary_exact(chain);
    for (StateId u = 0; u < 4; ++u) CHECK(pi.probs[u] == 0.25);
    CHECK(validate_reversibility(chain, pi));
}

TEST_CASE("uniform torus without shortcuts has uniform pi and norm 1/sqrt(n)") {
    auto chain = torus_chain({100, 100, 0.0, TorusWeighting::uniform, 0});
    auto pi = stationary_exact(chain);
    CHECK(pi_norm(pi) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(pi.probs[1234] == doctest::Approx(1e-4).epsilon(1e-12));
}

TEST_CASE("shortcuts and inverse-uniform weights skew the distribution") {
    auto flat = torus_chain({20, 20, 0.1, TorusWeighting::uniform, 7});
    auto heavy = torus_chain({20, 20, 0.1, TorusWeighting::inverse_uniform, 7});
    CHECK(flat.num_edges() > torus_chain({20, 20, 0.0,
                                          TorusWeighting::uniform, 7})
                                 .num_edges());
    auto pi_flat = stationary_exact(flat);
    auto pi_heavy = stationary_exact(heavy);
    CHECK(pi_norm(pi_heavy) > pi_norm(pi_flat));
    CHECK(pi_norm(pi_flat) > 1.0 / 20.0); // above the uniform floor
    CHECK(validate_reversibility(heavy, pi_heavy));
}

TEST_CASE("torus generation is reproducible and seed-sensitive") {
    TorusSpec spec{12, 9, 0.15, TorusWeighting::inverse_uniform, 42};
    auto a = torus_chain(spec);
    auto b = torus_chain(spec);
    REQUIRE(a.num_edges() == b.num_edges());
    CHECK(a.edge_list() == b.edge_list());
    spec.seed = 43;
    auto c = torus_chain(spec);
    CHECK(a.edge_list() != c.edge_list());
}

TEST_CASE("star-expander structure: counts, strengths, probes") {
    StarExpanderSpec spec{200, 4, 8, StarExpanderVariant::G, 0.01, 3};
    auto built = star_expander_chain(spec);
    const auto& chain = built.chain;
    CHECK(built.star_centers.size() == 200 * 4 / 2);
    CHECK(built.original_nodes == 200);
    // n0 + m*(delta-1) nodes in total
    CHECK(chain.num_states() == 200 + 400 * 7);

    auto pi = stationary_exact(chain);
    CHECK(validate_reversibility(chain, pi));

    std::vector<std::uint8_t> is_center(chain.num_states(), 0);
    for (StateId c : built.star_centers) is_center[c] = 1;
    double center_mass = 0.0;
    for (StateId u = 0; u < chain.num_states(); ++u) {
        if (is_center[u]) {
            CHECK(chain.strength(u) == doctest::Approx(8.0));
            center_mass += pi.probs[u];
        } else {
            // expander nodes and leaves both have strength d
            CHECK(chain.strength(u) == doctest::Approx(4.0));
        }
    }
    CHECK(center_mass >= 0.2);

    // from any node attached to a center the probe is 1/d; back, 1/delta
    StateId center = built.star_centers[0];
    StateId attached = chain.neighbors(center)[0];
    CHECK(chain.transition_prob(attached, center) == doctest::Approx(0.25));
    CHECK(chain.transition_prob(center, attached) ==
          doctest::Approx(1.0 / 8.0));
}

TEST_CASE("G' matches G in size and doubles each homologue's mass") {
    StarExpanderSpec g_spec{200, 4, 8, StarExpanderVariant::G, 0.01, 5};
    auto g = star_expander_chain(g_spec);
    auto g_spec2 = g_spec;
    g_spec2.variant = StarExpanderVariant::G_prime;
    auto gp = star_expander_chain(g_spec2);

    CHECK(gp.chain.num_states() == g.chain.num_states());
    CHECK(gp.original_nodes == 100);
    CHECK(gp.star_centers.size() == 100 * 4 / 2);

    auto pi_g = stationary_exact(g.chain);
    auto pi_gp = stationary_exact(gp.chain);
    CHECK(validate_reversibility(gp.chain, pi_gp));
    // total edge weight roughly halves while center strengths stay equal,
    // so a G' center carries about twice the mass of its G homologue
    double ratio = pi_gp.probs[gp.star_centers[0]] /
                   pi_g.probs[g.star_centers[0]];
    CHECK(ratio > 1.7);
    CHECK(ratio < 2.3);
    CHECK(pi_norm(pi_gp) > pi_norm(pi_g));
}

TEST_CASE("star-expander parameter validation") {
    CHECK_THROWS_AS(
        star_expander_chain({200, 2, 8, StarExpanderVariant::G, 0.01, 0}),
        DomainError);
    CHECK_THROWS_AS(
        star_expander_chain({201, 3, 8, StarExpanderVariant::G, 0.01, 0}),
        DomainError);
    CHECK_THROWS_AS(
        star_expander_chain({200, 4, 8, StarExpanderVariant::G_prime, 0.0, 0}),
        DomainError);
}

TEST_CASE("non-reversible table: stochastic rows, broken detailed balance") {
    auto table = nonreversible_lb_chain(100, 50, 1e-3);
    REQUIRE(table.n == 100);
    for (StateId u = 0; u < table.n; ++u) {
        double row = 0.0;
        for (StateId v = 0; v < table.n; ++v) {
            double p = table.at(u, v);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            row += p;
        }
        CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(table.at(99, 1) == 1.0);

    auto pi = table_stationary(table);
    double sum = 0.0;
    for (double p : pi.probs) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(table_reversible(table, pi));

    // the hub keeps nearly all the mass; satellites sit near p_fn * pi_hub
    CHECK(pi.probs[0] > 0.8);
    for (StateId i = 2; i < 99; ++i) {
        CHECK(pi.probs[i] / 1e-3 > 0.5);
        CHECK(pi.probs[i] / 1e-3 < 2.0);
    }
    CHECK_THROWS_AS(nonreversible_lb_chain(100, 50, 0.9), DomainError);
}

TEST_CASE("adversarial sum vectors: totals, norms and the hard gap") {
    const std::uint64_t n = 10000, k = 400;
    auto x = adversarial_sum_vector(n, k, AdversarialVariant::x, 17);
    auto xp = adversarial_sum_vector(n, k, AdversarialVariant::x_prime, 17);
    REQUIRE(x.gamma.size() == n);
    CHECK(x.gamma_sum == doctest::Approx(419.2).epsilon(1e-9));
    CHECK(xp.gamma_sum == doctest::Approx(818.4).epsilon(1e-9));
    CHECK(xp.gamma_sum - x.gamma_sum >= double(k) / 2.0);
    CHECK(x.gamma_sum <= 2.0 * double(k));

    std::uint64_t units = 0, light = 0;
    for (double g : x.gamma) {
        if (g == 1.0)
            ++units;
        else if (g == std::sqrt(double(k)) / double(n))
            ++light;
    }
    CHECK(units == k);
    CHECK(light == n - k);

    // induced stationary norm is Theta(1/sqrt(k))
    double sq = 0.0;
    for (double g : x.gamma) sq += g * g;
    double norm = std::sqrt(sq) / x.gamma_sum;
    CHECK(norm > 0.5 / std::sqrt(double(k)));
    CHECK(norm < 2.0 / std::sqrt(double(k)));

    // same seed, same permutation; the source respects the weights
    auto x2 = adversarial_sum_vector(n, k, AdversarialVariant::x, 17);
    CHECK(x.gamma == x2.gamma);
    auto src = x.source(29);
    for (int i = 0; i < 1000; ++i) {
        auto s = src();
        CHECK(x.gamma[s.id] == s.gamma);
    }
}
