#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pimass/rng.hpp"

namespace pimass {

// one weighted draw: an opaque element id and its weight gamma_u
struct WeightedSample {
    std::uint64_t id;
    double gamma;
};

// draws elements i.i.d. with probability gamma_u / gamma
using WeightedSampleSource = std::function<WeightedSample()>;

struct EstimatorReport {
    double estimate = 0.0;
    std::uint64_t repeats = 0;
    std::uint64_t samples = 0;
    std::uint64_t step_calls = 0;
    std::uint64_t probe_calls = 0;
    std::uint64_t footprint = 0; // distinct states / elements seen
    double elapsed_ms = 0.0;
};

// halting threshold ceil((2 + 4.4 eps) / eps^2 * ln(3/delta));
// throws DomainError for eps or delta outside (0,1)
std::uint64_t repeat_threshold(double epsilon, double delta);

// ceil(45 ||pi||^-1 eps^-3 (ln 3/delta)^1.5); the sample-count bound
std::uint64_t theoretical_sample_bound(double pi_norm, double epsilon,
                                       double delta);

// Incremental collision-counting sum estimator. Consumes (element, gamma)
// pairs; halts after `threshold` repeats. The estimate of gamma is w/r.
//
// Inconsistent gamma for a re-seen element (relative difference > 1e-9)
// throws GammaInconsistency; exceeding the sample cap throws
// SampleCapExceeded.
class SumApproxState {
  public:
    explicit SumApproxState(
        std::uint64_t threshold,
        std::optional<std::uint64_t> sample_cap = std::nullopt);

    bool done() const { return repeats_ >= threshold_; }
    void offer(const WeightedSample& sample);

    double estimate() const; // w/r; requires done()

    std::uint64_t threshold() const { return threshold_; }
    std::uint64_t repeats() const { return repeats_; }
    std::uint64_t samples_drawn() const { return samples_; }
    std::uint64_t distinct() const { return seen_.size(); }
    double accumulated_w() const { return w_; }
    double set_weight() const { return w_set_; }

  private:
    std::uint64_t threshold_;
    std::optional<std::uint64_t> sample_cap_;
    std::unordered_map<std::uint64_t, double> seen_;
    double w_set_ = 0.0;
    double w_ = 0.0;
    std::uint64_t repeats_ = 0;
    std::uint64_t samples_ = 0;
};

// One-shot driver: draws from the source until the repeat threshold
// repeat_threshold(epsilon, delta) is reached. If pi_norm is supplied the
// sample cap defaults to 10x theoretical_sample_bound.
EstimatorReport sum_approx(const WeightedSampleSource& source, double epsilon,
                           double delta,
                           std::optional<double> pi_norm = std::nullopt,
                           std::optional<std::uint64_t> sample_cap =
                               std::nullopt);

// index sampler over a fixed nonnegative weight vector (prefix sums +
// binary search); also reports the induced distribution
class DiscreteSampler {
  public:
    explicit DiscreteSampler(std::vector<double> weights);

    std::uint64_t draw(Rng& rng) const;
    double weight(std::uint64_t i) const { return weights_[i]; }
    double total() const { return total_; }
    std::size_t size() const { return weights_.size(); }

  private:
    std::vector<double> weights_;
    std::vector<double> cumulative_;
    double total_ = 0.0;
};

} // namespace pimass
