#include "ctxjudge/metrics.hpp"

namespace ctxjudge::metrics {

std::string to_string(MetricKind m) {
    switch (m) {
        case MetricKind::accuracy: return "accuracy";
        case MetricKind::precision: return "precision";
        case MetricKind::recall: return "recall";
        case MetricKind::f1: return "f1";
    }
    throw std::logic_error("bad MetricKind");
}

MetricKind metric_from_string(const std::string& s) {
    if (s == "accuracy") return MetricKind::accuracy;
    if (s == "precision") return MetricKind::precision;
    if (s == "recall") return MetricKind::recall;
    if (s == "f1") return MetricKind::f1;
    throw std::invalid_argument("unknown metric: " + s);
}

namespace {

MetricValue ratio(size_t num, size_t den) {
    if (den == 0) return {0.0, true};
    return {static_cast<double>(num) / static_cast<double>(den), false};
}

}  // namespace

MetricValue metric_value(const ConfusionMatrix& cm, MetricKind which) {
    switch (which) {
        case MetricKind::accuracy:
            return ratio(cm.tp + cm.tn, cm.total());
        case MetricKind::precision:
            return ratio(cm.tp, cm.tp + cm.fp);
        case MetricKind::recall:
            return ratio(cm.tp, cm.tp + cm.fn);
        case MetricKind::f1: {
            MetricValue p = metric_value(cm, MetricKind::precision);
            MetricValue r = metric_value(cm, MetricKind::recall);
            if (p.value + r.value == 0.0) return {0.0, true};
            return {2.0 * p.value * r.value / (p.value + r.value), p.undefined || r.undefined};
        }
    }
    throw std::logic_error("bad MetricKind");
}

ConfusionMatrix confusion(const std::vector<ScoredPair>& pairs) {
    ConfusionMatrix cm;
    for (const auto& p : pairs) cm.add(p.predicted_relevant, p.gold_relevant);
    return cm;
}

MetricValue metric_over_pairs(const std::vector<ScoredPair>& pairs, MetricKind which) {
    return metric_value(confusion(pairs), which);
}

ScoringResult confusion_against_gold(
    const std::vector<std::pair<std::pair<std::string, std::string>, bool>>& predictions,
    const std::map<std::pair<std::string, std::string>, GoldLabel>& gold) {
    ScoringResult result;
    for (const auto& [key, predicted] : predictions) {
        auto it = gold.find(key);
        if (it == gold.end())
            throw std::runtime_error("no gold label for (" + key.first + ", " + key.second + ")");
        if (it->second == GoldLabel::unlabeled) {
            ++result.excluded_unlabeled;
            continue;
        }
        result.cm.add(predicted, it->second == GoldLabel::relevant);
    }
    return result;
}

}  // namespace ctxjudge::metrics
