#pragma once

#include "ctxjudge/types.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ctxjudge::metrics {

struct ConfusionMatrix {
    size_t tp = 0;
    size_t fp = 0;
    size_t tn = 0;
    size_t fn = 0;

    size_t total() const { return tp + fp + tn + fn; }
    void add(bool predicted_relevant, bool gold_relevant) {
        if (predicted_relevant)
            gold_relevant ? ++tp : ++fp;
        else
            gold_relevant ? ++fn : ++tn;
    }
};

enum class MetricKind { accuracy, precision, recall, f1 };

std::string to_string(MetricKind m);
MetricKind metric_from_string(const std::string& s);

struct MetricValue {
    double value = 0.0;
    bool undefined = false;  // 0/0 hit somewhere; value is 0 by convention
};

/// accuracy=(tp+tn)/total, precision=tp/(tp+fp), recall=tp/(tp+fn),
/// f1=2PR/(P+R). Any 0/0 yields 0 with the undefined flag set.
MetricValue metric_value(const ConfusionMatrix& cm, MetricKind which);

/// Minimal scored pair; everything downstream (bootstrap, permutation)
/// consumes these.
struct ScoredPair {
    bool predicted_relevant;
    bool gold_relevant;
};

ConfusionMatrix confusion(const std::vector<ScoredPair>& pairs);
MetricValue metric_over_pairs(const std::vector<ScoredPair>& pairs, MetricKind which);

struct ScoringResult {
    ConfusionMatrix cm;
    size_t excluded_unlabeled = 0;
};

/// Joins predictions against gold labels keyed by (instance_id, doc_id).
/// Unlabeled pairs are excluded and counted; a prediction with no gold
/// entry at all throws.
ScoringResult confusion_against_gold(
    const std::vector<std::pair<std::pair<std::string, std::string>, bool>>& predictions,
    const std::map<std::pair<std::string, std::string>, GoldLabel>& gold);

}  // namespace ctxjudge::metrics
