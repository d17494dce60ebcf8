#include "pimass/sum_approx.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pimass/errors.hpp"

namespace pimass {

std::uint64_t repeat_threshold(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must be in (0,1)");
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must be in (0,1)");
    double k = (2.0 + 4.4 * epsilon) / (epsilon * epsilon) *
               std::log(3.0 / delta);
    return static_cast<std::uint64_t>(std::ceil(k));
}

std::uint64_t theoretical_sample_bound(double pi_norm, double epsilon,
                                       double delta) {
    if (!(pi_norm > 0.0 && pi_norm <= 1.0))
        throw DomainError("pi_norm must be in (0,1]");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw DomainError("epsilon must be in (0,1]");
    if (!(delta > 0.0 && delta < 3.0))
        throw DomainError("delta must make ln(3/delta) positive");
    double b = 45.0 / pi_norm / (epsilon * epsilon * epsilon) *
               std::pow(std::log(3.0 / delta), 1.5);
    return static_cast<std::uint64_t>(std::ceil(b));
}

SumApproxState::SumApproxState(std::uint64_t threshold,
                               std::optional<std::uint64_t> sample_cap)
    : threshold_(threshold), sample_cap_(sample_cap) {
    if (threshold == 0) throw DomainError("repeat threshold must be >= 1");
}

void SumApproxState::offer(const WeightedSample& sample) {
    if (done()) return;
    w_ += w_set_;
    ++samples_;
    if (sample_cap_ && samples_ > *sample_cap_)
        throw SampleCapExceeded("sample cap " + std::to_string(*sample_cap_) +
                                " exceeded");
    auto it = seen_.find(sample.id);
    if (it != seen_.end()) {
        double scale = std::max(std::abs(it->second), std::abs(sample.gamma));
        if (std::abs(it->second - sample.gamma) > 1e-9 * scale)
            throw GammaInconsistency("element " + std::to_string(sample.id) +
                                     " re-seen with different gamma");
        ++repeats_;
    } else {
        seen_.emplace(sample.id, sample.gamma);
        w_set_ += sample.gamma;
    }
}

double SumApproxState::estimate() const {
    if (!done()) throw DomainError("estimate() before repeat threshold");
    return w_ / static_cast<double>(repeats_);
}

EstimatorReport sum_approx(const WeightedSampleSource& source, double epsilon,
                           double delta, std::optional<double> pi_norm,
                           std::optional<std::uint64_t> sample_cap) {
    auto t0 = std::chrono::steady_clock::now();
    std::optional<std::uint64_t> cap = sample_cap;
    if (!cap && pi_norm)
        cap = 10 * theoretical_sample_bound(*pi_norm, epsilon, delta);
    SumApproxState state(repeat_threshold(epsilon, delta), cap);
    while (!state.done()) state.offer(source());

    EstimatorReport report;
    report.estimate = state.estimate();
    report.repeats = state.repeats();
    report.samples = state.samples_drawn();
    report.footprint = state.distinct();
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    return report;
}

DiscreteSampler::DiscreteSampler(std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty()) throw DomainError("empty weight vector");
    cumulative_.resize(weights_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] < 0.0) throw DomainError("negative weight");
        acc += weights_[i];
        cumulative_[i] = acc;
    }
    total_ = acc;
    if (!(total_ > 0.0)) throw DomainError("all weights are zero");
}

std::uint64_t DiscreteSampler::draw(Rng& rng) const {
    double x = rng.uniform01() * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
    if (idx >= weights_.size()) idx = weights_.size() - 1;
    return idx;
}

} // namespace pimass
