#pragma once

#include "ctxjudge/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ctxjudge::stats {

struct BootstrapConfig {
    size_t resamples = 5000;     // B
    size_t resample_size = 0;    // 0 means "use the input size"
    double alpha = 0.05;
    uint64_t seed = 0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double point = 0.0;

    double half_width() const { return (hi - lo) / 2.0; }
};

/// Percentile bootstrap: B resamples with replacement of resample_size
/// pairs, metric per resample, interval at the alpha/2 and 1-alpha/2
/// empirical quantiles (linear interpolation). Fully determined by
/// (pairs, cfg). Throws on empty input.
Interval bootstrap_ci(const std::vector<metrics::ScoredPair>& pairs, metrics::MetricKind metric,
                      const BootstrapConfig& cfg);

/// One item judged by two strategies against the same gold label.
struct PairedPrediction {
    bool pred_a;
    bool pred_b;
    bool gold;
};

struct ComparisonResult {
    metrics::MetricKind metric = metrics::MetricKind::f1;
    double observed_diff = 0.0;  // metric(a) - metric(b)
    double p_value = 1.0;
    size_t permutations = 0;
    double alpha = 0.05;
    bool significant = false;  // p_value < alpha
};

/// Paired sign-flip permutation test: each round independently swaps every
/// item's (a, b) predictions with probability 1/2 and recomputes the metric
/// difference; two-sided add-one p-value
/// (1 + #{|perm_diff| >= |observed_diff|}) / (P + 1), so p >= 1/(P+1).
ComparisonResult permutation_test(const std::vector<PairedPrediction>& items,
                                  metrics::MetricKind metric, size_t permutations, uint64_t seed,
                                  double alpha = 0.05);

/// Linear-interpolation empirical quantile over an unsorted copy of values;
/// exposed because the report layer reuses it.
double quantile(std::vector<double> values, double q);

}  // namespace ctxjudge::stats
