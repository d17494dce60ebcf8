// pimass command line: generate chains, compute exact ground truth, run a
// single estimate, or reproduce the error-vs-cost sweep.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pimass/baselines.hpp"
#include "pimass/chain.hpp"
#include "pimass/errors.hpp"
#include "pimass/exact.hpp"
#include "pimass/generators.hpp"
#include "pimass/mass_approx.hpp"
#include "pimass/sweep.hpp"

namespace {

using namespace pimass;

struct ChainOpts {
    std::string chain_file;
    std::string torus;   // "RxC"
    double shortcuts = 0.0;
    std::string weighting = "uniform";
    bool star_expander = false;
    std::uint64_t n0 = 64, d = 8, delta = 8;
    std::string variant = "G";
    double eps_attach = 0.01;
    std::uint64_t seed = 0;
};

void add_chain_flags(CLI::App* cmd, ChainOpts& o,
                     bool delta_alias = true) {
    cmd->add_option("--chain", o.chain_file, "read a serialized chain file");
    cmd->add_option("--torus", o.torus, "torus chain, e.g. 100x100");
    cmd->add_option("--shortcuts", o.shortcuts,
                    "shortcut edges as a fraction of n (torus)");
    cmd->add_option("--weighting", o.weighting,
                    "torus weighting: uniform | inverse_uniform");
    cmd->add_flag("--star-expander", o.star_expander,
                  "star-expander lower-bound family");
    cmd->add_option("--n0", o.n0, "expander node count");
    cmd->add_option("--d", o.d, "expander degree");
    // `estimate` and `sweep` use --delta for the confidence parameter
    cmd->add_option(delta_alias ? "--star-size,--delta" : "--star-size",
                    o.delta, "star size");
    cmd->add_option("--variant", o.variant, "star-expander variant: G | G'");
    cmd->add_option("--eps-attach", o.eps_attach, "G' padding arc weight");
    cmd->add_option("--seed", o.seed, "generator / estimator master seed");
}

ReversibleChain make_chain(const ChainOpts& o) {
    if (!o.chain_file.empty()) return read_chain_file(o.chain_file);
    if (o.star_expander) {
        StarExpanderSpec spec;
        spec.n0 = StateId(o.n0);
        spec.d = StateId(o.d);
        spec.delta = StateId(o.delta);
        spec.variant = (o.variant == "G'" || o.variant == "G_prime")
                           ? StarExpanderVariant::G_prime
                           : StarExpanderVariant::G;
        spec.eps_attach = o.eps_attach;
        spec.seed = o.seed;
        return star_expander_chain(spec).chain;
    }
    if (!o.torus.empty()) {
        auto x = o.torus.find('x');
        if (x == std::string::npos)
            throw DomainError("--torus expects RxC, e.g. 100x100");
        TorusSpec spec;
        spec.rows = StateId(std::stoul(o.torus.substr(0, x)));
        spec.cols = StateId(std::stoul(o.torus.substr(x + 1)));
        spec.shortcut_fraction = o.shortcuts;
        spec.weighting = o.weighting == "inverse_uniform"
                             ? TorusWeighting::inverse_uniform
                             : TorusWeighting::uniform;
        spec.seed = o.seed;
        return torus_chain(spec);
    }
    throw DomainError("specify --chain, --torus or --star-expander");
}

void print_kv(const char* key, double value) {
    std::printf("%s=%.17g\n", key, value);
}
void print_kv(const char* key, std::uint64_t value) {
    std::printf("%s=%llu\n", key, static_cast<unsigned long long>(value));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stationary-mass estimation on time-reversible chains"};
    app.require_subcommand(1);

    ChainOpts gen_o, exact_o, est_o, sweep_o;

    auto* gen = app.add_subcommand("gen", "generate a chain file");
    std::string gen_out;
    add_chain_flags(gen, gen_o);
    gen->add_option("--out", gen_out, "output chain file")->required();

    auto* exact = app.add_subcommand("exact", "exact pi, norm and d(t)");
    std::uint64_t exact_tmax = 0, exact_topk = 0;
    add_chain_flags(exact, exact_o);
    exact->add_option("--tmax", exact_tmax, "d(t) horizon (0 = skip)");
    exact->add_option("--top-k", exact_topk, "print only the k largest pi");

    auto* est = app.add_subcommand("estimate", "single estimator run");
    std::string est_algo = "mass_approx";
    std::uint64_t est_target = 0, est_t = 10, est_burn = 0, est_trials = 30;
    double est_eps = 0.25, est_delta = 0.1, est_c = 1.0;
    add_chain_flags(est, est_o, false);
    est->add_option("--algo", est_algo,
                    "mass_approx | full_mass_approx | return_time");
    est->add_option("--target", est_target, "target state v");
    est->add_option("--eps", est_eps, "epsilon");
    est->add_option("--delta", est_delta, "delta");
    est->add_option("--t", est_t, "walk length / truncation");
    est->add_option("--burn-in", est_burn, "burn-in steps (full_mass_approx)");
    est->add_option("--c-const", est_c, "walk-length constant c");
    est->add_option("--trials", est_trials, "walks per run (return_time)");

    auto* sweep = app.add_subcommand("sweep", "error-vs-cost sweep protocol");
    std::string sweep_out, sweep_svg, sweep_algos = "all";
    std::uint64_t sweep_target = 0, sweep_budget = 100'000'000,
                  sweep_burn = 0, sweep_rt_trials = 30;
    double sweep_eps = 0.25, sweep_delta = 0.1, sweep_c = 1.0;
    add_chain_flags(sweep, sweep_o, false);
    sweep->add_option("--target", sweep_target, "target state v");
    sweep->add_option("--eps", sweep_eps, "epsilon");
    sweep->add_option("--delta", sweep_delta, "delta");
    sweep->add_option("--algo", sweep_algos,
                      "all or comma list of algorithms");
    sweep->add_option("--out", sweep_out, "CSV output path")->required();
    sweep->add_option("--svg", sweep_svg, "optional SVG output path");
    sweep->add_option("--budget", sweep_budget, "combined query budget");
    sweep->add_option("--burn-in", sweep_burn, "burn-in (full_mass_approx)");
    sweep->add_option("--c-const", sweep_c, "walk-length constant c");
    sweep->add_option("--rt-trials", sweep_rt_trials,
                      "walks per return-time run");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            write_chain_file(make_chain(gen_o), gen_out);
            return 0;
        }
        if (exact->parsed()) {
            ReversibleChain chain = make_chain(exact_o);
            DistributionVector pi = stationary_exact(chain);
            print_kv("n", std::uint64_t(chain.num_states()));
            print_kv("pi_norm", pi_norm(pi));
            if (exact_topk > 0) {
                std::vector<StateId> idx(chain.num_states());
                for (StateId u = 0; u < chain.num_states(); ++u) idx[u] = u;
                std::sort(idx.begin(), idx.end(), [&](StateId a, StateId b) {
                    return pi[a] > pi[b] || (pi[a] == pi[b] && a < b);
                });
                idx.resize(std::min<std::size_t>(exact_topk, idx.size()));
                for (StateId u : idx)
                    std::printf("pi[%u]=%.17g\n", u, pi[u]);
            } else {
                for (StateId u = 0; u < chain.num_states(); ++u)
                    std::printf("pi[%u]=%.17g\n", u, pi[u]);
            }
            if (exact_tmax > 0) {
                MixingProfile prof = mixing_profile(chain, exact_tmax, true);
                print_kv("tau", prof.tau);
                std::printf("t,d_t\n");
                for (std::size_t t = 0; t < prof.d_values.size(); ++t)
                    std::printf("%zu,%.17g\n", t, prof.d_values[t]);
            }
            return 0;
        }
        if (est->parsed()) {
            ReversibleChain chain = make_chain(est_o);
            StateId v = StateId(est_target);
            EstimatorReport rep;
            Algo algo = algo_from_name(est_algo);
            if (algo == Algo::return_time) {
                rep = return_time_estimate(
                    chain, v, {est_t, est_trials}, est_o.seed);
            } else {
                WalkConfig walk;
                walk.t = est_t;
                walk.burn_in = est_burn;
                walk.c_constant = est_c;
                rep = algo == Algo::mass_approx
                          ? mass_approx(chain, v, est_eps, est_delta, walk,
                                        est_o.seed)
                          : full_mass_approx(chain, v, est_eps, est_delta,
                                             walk, est_o.seed);
            }
            print_kv("estimate", rep.estimate);
            print_kv("repeats", rep.repeats);
            print_kv("samples", rep.samples);
            print_kv("step_calls", rep.step_calls);
            print_kv("probe_calls", rep.probe_calls);
            print_kv("footprint", rep.footprint);
            print_kv("elapsed_ms", rep.elapsed_ms);
            return 0;
        }
        if (sweep->parsed()) {
            ReversibleChain chain = make_chain(sweep_o);
            std::vector<Algo> algos;
            if (sweep_algos == "all") {
                algos = {Algo::mass_approx, Algo::full_mass_approx,
                         Algo::return_time};
            } else {
                std::stringstream ss(sweep_algos);
                std::string name;
                while (std::getline(ss, name, ','))
                    algos.push_back(algo_from_name(name));
            }
            SweepConfig cfg;
            cfg.epsilon = sweep_eps;
            cfg.delta = sweep_delta;
            cfg.master_seed = sweep_o.seed;
            cfg.budget = sweep_budget;
            cfg.rt_trials = sweep_rt_trials;
            cfg.c_constant = sweep_c;
            cfg.burn_in = sweep_burn;
            auto records =
                run_sweep(chain, StateId(sweep_target), algos, cfg);
            emit_csv(records, sweep_out);
            if (!sweep_svg.empty()) emit_svg(records, sweep_svg);
            std::printf("records=%zu\n", records.size());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
