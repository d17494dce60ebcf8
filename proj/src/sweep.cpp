#include "pimass/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>

#include "pimass/baselines.hpp"
#include "pimass/errors.hpp"
#include "pimass/exact.hpp"
#include "pimass/mass_approx.hpp"
#include "pimass/rng.hpp"

namespace pimass {

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::mass_approx: return "mass_approx";
        case Algo::full_mass_approx: return "full_mass_approx";
        case Algo::return_time: return "return_time";
    }
    return "?";
}

Algo algo_from_name(const std::string& name) {
    if (name == "mass_approx") return Algo::mass_approx;
    if (name == "full_mass_approx") return Algo::full_mass_approx;
    if (name == "return_time") return Algo::return_time;
    throw DomainError("unknown algorithm: " + name);
}

namespace {

std::uint64_t schedule_length(std::uint64_t start, unsigned k) {
    return static_cast<std::uint64_t>(
        std::llround(double(start) * std::pow(std::sqrt(2.0), k)));
}

EstimatorReport run_one(Algo algo, const ReversibleChain& chain, StateId v,
                        std::uint64_t walk_len, const SweepConfig& cfg,
                        std::uint64_t step_budget, std::uint64_t seed) {
    switch (algo) {
        case Algo::mass_approx: {
            WalkConfig walk;
            walk.t = walk_len;
            walk.c_constant = cfg.c_constant;
            walk.step_budget = step_budget;
            return mass_approx(chain, v, cfg.epsilon, cfg.delta, walk, seed);
        }
        case Algo::full_mass_approx: {
            WalkConfig walk;
            walk.t = walk_len;
            walk.burn_in = cfg.burn_in;
            walk.c_constant = cfg.c_constant;
            walk.step_budget = step_budget;
            return full_mass_approx(chain, v, cfg.epsilon, cfg.delta, walk,
                                    seed);
        }
        case Algo::return_time: {
            ReturnTimeConfig rt;
            rt.truncation = walk_len;
            rt.trials = cfg.rt_trials;
            return return_time_estimate(chain, v, rt, seed);
        }
    }
    throw DomainError("unknown algorithm");
}

} // namespace

std::vector<SweepRecord> run_sweep(const ReversibleChain& chain, StateId v,
                                   const std::vector<Algo>& algos,
                                   const SweepConfig& config) {
    const DistributionVector pi = stationary_exact(chain);
    const double true_pi = pi[v];
    std::vector<SweepRecord> records;

    for (std::size_t ai = 0; ai < algos.size(); ++ai) {
        const Algo algo = algos[ai];
        std::uint64_t spent = 0;
        bool exhausted = false;
        for (unsigned k = 0; !exhausted; ++k) {
            const std::uint64_t len = schedule_length(config.start_len, k);
            std::array<std::future<EstimatorReport>, 3> futures;
            std::array<std::uint64_t, 3> seeds;
            const std::uint64_t remaining =
                config.budget > spent ? config.budget - spent : 0;
            for (std::uint64_t trial = 0; trial < 3; ++trial) {
                seeds[trial] = derive_seed(
                    config.master_seed, static_cast<std::uint64_t>(algo), k,
                    trial);
                futures[trial] = std::async(
                    std::launch::async, run_one, algo, std::cref(chain), v,
                    len, std::cref(config), remaining, seeds[trial]);
            }
            bool all_within = true;
            for (std::uint64_t trial = 0; trial < 3; ++trial) {
                EstimatorReport rep;
                try {
                    rep = futures[trial].get();
                } catch (const BudgetExceeded&) {
                    exhausted = true; // partial trial discarded
                    all_within = false;
                    continue;
                }
                SweepRecord rec;
                rec.algo = algo;
                rec.walk_len = len;
                rec.trial = trial;
                rec.seed = seeds[trial];
                rec.estimate = rep.estimate;
                rec.true_pi = true_pi;
                rec.rel_error = std::abs(rep.estimate - true_pi) / true_pi;
                rec.step_calls = rep.step_calls;
                rec.probe_calls = rep.probe_calls;
                rec.footprint = rep.footprint;
                // wall-clock timing would break the byte-determinism
                // contract of the emitted CSV; single runs report it via
                // the estimate path instead
                rec.elapsed_ms = 0;
                spent += rep.step_calls + rep.probe_calls;
                if (rec.rel_error > config.epsilon) all_within = false;
                records.push_back(rec);
            }
            if (all_within) break;
            if (spent >= config.budget) exhausted = true;
        }
    }

    std::sort(records.begin(), records.end(),
              [](const SweepRecord& a, const SweepRecord& b) {
                  if (a.algo != b.algo) return a.algo < b.algo;
                  if (a.walk_len != b.walk_len) return a.walk_len < b.walk_len;
                  return a.trial < b.trial;
              });
    return records;
}

namespace {

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

void emit_csv(const std::vector<SweepRecord>& records,
              const std::string& path) {
    if (records.empty()) throw DomainError("no records to emit");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << "algo,walk_len,trial,seed,estimate,true_pi,rel_error,"
           "step_calls,probe_calls,footprint,elapsed_ms\n";
    for (const SweepRecord& r : records) {
        out << algo_name(r.algo) << ',' << r.walk_len << ',' << r.trial << ','
            << r.seed << ',' << fmt_real(r.estimate) << ','
            << fmt_real(r.true_pi) << ',' << fmt_real(r.rel_error) << ','
            << r.step_calls << ',' << r.probe_calls << ',' << r.footprint
            << ',' << r.elapsed_ms << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<SweepRecord> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("missing header");
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        auto next = [&]() {
            if (!std::getline(ss, field, ','))
                throw IoError("short row: " + line);
            return field;
        };
        SweepRecord r;
        r.algo = algo_from_name(next());
        r.walk_len = std::stoull(next());
        r.trial = std::stoull(next());
        r.seed = std::stoull(next());
        r.estimate = std::stod(next());
        r.true_pi = std::stod(next());
        r.rel_error = std::stod(next());
        r.step_calls = std::stoull(next());
        r.probe_calls = std::stoull(next());
        r.footprint = std::stoull(next());
        r.elapsed_ms = std::stoull(next());
        records.push_back(r);
    }
    return records;
}

void emit_svg(const std::vector<SweepRecord>& records,
              const std::string& path) {
    if (records.empty()) throw DomainError("no records to plot");
    // aggregate: mean rel_error and mean total calls per (algo, walk_len)
    std::map<std::pair<Algo, std::uint64_t>, std::pair<double, double>> acc;
    std::map<std::pair<Algo, std::uint64_t>, int> counts;
    for (const SweepRecord& r : records) {
        auto key = std::make_pair(r.algo, r.walk_len);
        acc[key].first += double(r.step_calls + r.probe_calls);
        acc[key].second += r.rel_error;
        counts[key]++;
    }
    struct Pt {
        double cost, err;
    };
    std::map<Algo, std::vector<Pt>> series;
    double min_cost = 1e300, max_cost = 0, min_err = 1e300, max_err = 0;
    for (const auto& [key, sums] : acc) {
        double cost = std::max(1.0, sums.first / counts[key]);
        double err = std::max(1e-6, sums.second / counts[key]);
        series[key.first].push_back({cost, err});
        min_cost = std::min(min_cost, cost);
        max_cost = std::max(max_cost, cost);
        min_err = std::min(min_err, err);
        max_err = std::max(max_err, err);
    }
    if (max_cost <= min_cost) max_cost = min_cost * 10;
    if (max_err <= min_err) max_err = min_err * 10;

    const double W = 640, H = 480, ml = 70, mr = 20, mt = 20, mb = 50;
    auto x_of = [&](double c) {
        return ml + (std::log10(c) - std::log10(min_cost)) /
                        (std::log10(max_cost) - std::log10(min_cost)) *
                        (W - ml - mr);
    };
    auto y_of = [&](double e) {
        return H - mb - (std::log10(e) - std::log10(min_err)) /
                            (std::log10(max_err) - std::log10(min_err)) *
                            (H - mt - mb);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};

    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
        << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H
        << "\" fill=\"white\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
        << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (W / 2) << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\">total step + probe calls (log)</text>\n"
        << "<text x=\"16\" y=\"" << (H / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (H / 2)
        << ")\">relative error (log)</text>\n";
    int ci = 0;
    for (const auto& [algo, pts] : series) {
        const char* color = colors[ci % 3];
        if (pts.size() == 1) {
            out << "<circle cx=\"" << x_of(pts[0].cost) << "\" cy=\""
                << y_of(pts[0].err) << "\" r=\"4\" fill=\"" << color
                << "\" id=\"series-" << algo_name(algo) << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"2\" id=\"series-" << algo_name(algo)
                << "\" points=\"";
            for (const Pt& p : pts)
                out << x_of(p.cost) << ',' << y_of(p.err) << ' ';
            out << "\"/>\n";
        }
        out << "<text x=\"" << W - mr - 180 << "\" y=\"" << mt + 18 * (ci + 1)
            << "\" fill=\"" << color << "\">" << algo_name(algo)
            << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
    if (!out) throw IoError("write failed: " + path);
}

} // namespace pimass
