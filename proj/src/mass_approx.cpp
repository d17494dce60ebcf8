#include "pimass/mass_approx.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "pimass/errors.hpp"

namespace pimass {

GammaLedger::GammaLedger(StateId num_states, StateId anchor, bool log_space)
    : anchor_(anchor), log_space_(log_space),
      values_(num_states, std::numeric_limits<double>::quiet_NaN()),
      set_(num_states, 0) {
    values_[anchor] = log_space_ ? 0.0 : 1.0;
    set_[anchor] = 1;
    count_ = 1;
}

double GammaLedger::gamma(StateId u) const {
    if (!set_[u]) throw DomainError("gamma of unrecorded state");
    return log_space_ ? std::exp(values_[u]) : values_[u];
}

void GammaLedger::record_ratio(StateId from, StateId to, double ratio) {
    if (!set_[from]) throw DomainError("ratio from unrecorded state");
    if (set_[to]) return;
    values_[to] = log_space_ ? values_[from] + std::log(ratio)
                             : values_[from] * ratio;
    set_[to] = 1;
    ++count_;
}

double gamma_step(GammaLedger& ledger, QuerySession& session, StateId u,
                  StateId u_next) {
    if (!ledger.recorded(u_next)) {
        double fwd = session.probe(u, u_next);
        double back = session.probe(u_next, u);
        if (back == 0.0)
            throw ZeroBackProbability("probe(" + std::to_string(u_next) +
                                      "," + std::to_string(u) +
                                      ") = 0 on a reversible chain");
        ledger.record_ratio(u, u_next, fwd / back);
    }
    return ledger.gamma(u_next);
}

std::uint64_t walk_length_from_tau(std::uint64_t tau, double pi_norm,
                                   double epsilon, double delta,
                                   double c_constant) {
    if (tau < 1) throw DomainError("tau must be >= 1");
    if (!(pi_norm > 0.0 && pi_norm <= 1.0))
        throw DomainError("pi_norm must be in (0,1]");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must be in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must be in (0,1)");
    if (!(c_constant > 0.0)) throw DomainError("c must be positive");
    double inner = std::log(1.0 / pi_norm / epsilon * std::log(3.0 / delta));
    double t = static_cast<double>(tau) * c_constant * inner / std::log(2.0);
    if (!(t >= 1.0)) return 1;
    return static_cast<std::uint64_t>(std::ceil(t));
}

namespace {

struct StepBudgetGuard {
    const WalkConfig& walk;
    const QuerySession& session;
    void check() const {
        if (walk.step_budget && session.step_calls() > *walk.step_budget)
            throw BudgetExceeded("step budget exceeded");
    }
};

EstimatorReport finish(const QuerySession& session, const SumApproxState& st,
                       std::uint64_t burn_in,
                       std::chrono::steady_clock::time_point t0) {
    EstimatorReport report;
    // r/w is the inverse of the sum estimate w/r
    report.estimate = static_cast<double>(st.repeats()) / st.accumulated_w();
    report.repeats = st.repeats();
    report.samples = st.samples_drawn();
    report.step_calls = session.step_calls();
    report.probe_calls = session.probe_calls();
    report.footprint = session.footprint();
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    (void)burn_in;
    return report;
}

} // namespace

EstimatorReport mass_approx(const ReversibleChain& chain, StateId v,
                            double epsilon, double delta,
                            const WalkConfig& walk, std::uint64_t seed) {
    if (walk.t < 1) throw DomainError("walk length must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    QuerySession session(chain, v, seed);
    GammaLedger ledger(chain.num_states(), v, walk.log_space_gamma);
    SumApproxState state(4 * repeat_threshold(epsilon, delta),
                         walk.sample_cap);
    StepBudgetGuard guard{walk, session};
    while (!state.done()) {
        StateId u = v;
        for (std::uint64_t i = 0; i < walk.t; ++i) {
            StateId next = session.step(u);
            gamma_step(ledger, session, u, next);
            u = next;
        }
        guard.check();
        state.offer({u, ledger.gamma(u)});
    }
    return finish(session, state, 0, t0);
}

EstimatorReport full_mass_approx(const ReversibleChain& chain, StateId v,
                                 double epsilon, double delta,
                                 const WalkConfig& walk, std::uint64_t seed) {
    if (walk.t < 1) throw DomainError("walk length must be >= 1");
    auto t0 = std::chrono::steady_clock::now();
    QuerySession session(chain, v, seed);
    GammaLedger ledger(chain.num_states(), v, walk.log_space_gamma);
    StepBudgetGuard guard{walk, session};

    // membership in the collision set S; the ledger tracks every visited
    // state, S lags one round behind (merge happens after the repeat check)
    std::vector<std::uint8_t> in_set(chain.num_states(), 0);
    in_set[v] = 1;
    double w_set = 1.0; // gamma_v
    double w = 0.0;
    std::uint64_t repeats = 0;
    std::uint64_t samples = 0;
    const std::uint64_t threshold = 4 * repeat_threshold(epsilon, delta);

    StateId u = v;
    std::vector<StateId> fresh;

    // burn-in steps precede sampling; their states still join S
    for (std::uint64_t i = 0; i < walk.burn_in; ++i) {
        StateId next = session.step(u);
        if (!ledger.recorded(next)) {
            gamma_step(ledger, session, u, next);
            in_set[next] = 1;
            w_set += ledger.gamma(next);
        }
        u = next;
    }
    guard.check();

    while (repeats < threshold) {
        w += w_set;
        fresh.clear();
        for (std::uint64_t i = 0; i < walk.t; ++i) {
            StateId next = session.step(u);
            if (!ledger.recorded(next)) {
                gamma_step(ledger, session, u, next);
                fresh.push_back(next);
            }
            u = next;
        }
        guard.check();
        ++samples;
        if (walk.sample_cap && samples > *walk.sample_cap)
            throw SampleCapExceeded("sample cap exceeded");
        if (in_set[u]) ++repeats; // check against S before merging
        for (StateId s : fresh) {
            in_set[s] = 1;
            w_set += ledger.gamma(s);
        }
    }

    EstimatorReport report;
    report.estimate = static_cast<double>(repeats) / w;
    report.repeats = repeats;
    report.samples = samples;
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
