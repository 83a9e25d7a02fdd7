#include "ceda/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ceda/classifiers.hpp"  // labels_from_scores: the one thresholding rule

namespace ceda {

ConfusionMatrix confusion(const Labels& pred, const Labels& truth) {
    require(!pred.empty(), "confusion: empty input");
    require(pred.size() == truth.size(), "confusion: length mismatch");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        require((pred[i] == 0 || pred[i] == 1) && (truth[i] == 0 || truth[i] == 1),
                "confusion: labels must be 0 or 1");
        if (truth[i] == 1) {
            pred[i] == 1 ? ++cm.tp : ++cm.fn;
        } else {
            pred[i] == 1 ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

MetricSet metrics(const ConfusionMatrix& cm) {
    require(cm.total() > 0, "metrics: empty confusion matrix");
    MetricSet m;
    m.acc = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    m.precision = cm.tp + cm.fp > 0
                      ? static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp)
                      : 0.0;
    m.recall = cm.tp + cm.fn > 0
                   ? static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn)
                   : 0.0;
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

RocResult roc_auc(const Vector& scores, const Labels& truth) {
    const std::size_t n = truth.size();
    require(n >= 1 && static_cast<std::size_t>(scores.size()) == n,
            "roc_auc: scores/truth length mismatch");
    std::int64_t n_pos = 0;
    for (const int label : truth) {
        require(label == 0 || label == 1, "roc_auc: labels must be 0 or 1");
        n_pos += label;
    }
    const std::int64_t n_neg = static_cast<std::int64_t>(n) - n_pos;
    require(n_pos > 0 && n_neg > 0, "roc_auc: both classes must be present");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores(static_cast<Eigen::Index>(a)) > scores(static_cast<Eigen::Index>(b));
    });

    RocResult result;
    result.points.emplace_back(0.0, 0.0);

    // Mann-Whitney with half credit on ties, and simultaneously the ROC
    // sweep over distinct descending scores.
    double u = 0.0;
    std::int64_t neg_seen = 0;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        std::int64_t tie_pos = 0;
        std::int64_t tie_neg = 0;
        const double score = scores(static_cast<Eigen::Index>(order[i]));
        while (j < n && scores(static_cast<Eigen::Index>(order[j])) == score) {
            truth[order[j]] == 1 ? ++tie_pos : ++tie_neg;
            ++j;
        }
        const std::int64_t neg_below = n_neg - neg_seen - tie_neg;
        u += static_cast<double>(tie_pos) * static_cast<double>(neg_below) +
             0.5 * static_cast<double>(tie_pos) * static_cast<double>(tie_neg);
        neg_seen += tie_neg;
        tp += tie_pos;
        fp += tie_neg;
        result.points.emplace_back(static_cast<double>(fp) / static_cast<double>(n_neg),
                                   static_cast<double>(tp) / static_cast<double>(n_pos));
        i = j;
    }
    if (result.points.back() != std::make_pair(1.0, 1.0)) {
        result.points.emplace_back(1.0, 1.0);
    }
    // u counted, for each positive, negatives scoring BELOW it.
    result.auc = u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));

    double trapezoid = 0.0;
    for (std::size_t p = 1; p < result.points.size(); ++p) {
        const auto& [x0, y0] = result.points[p - 1];
        const auto& [x1, y1] = result.points[p];
        trapezoid += (x1 - x0) * (y0 + y1) * 0.5;
    }
    if (std::abs(trapezoid - result.auc) > 1e-12) {
        throw std::logic_error("roc_auc: trapezoid/Mann-Whitney cross-check failed: " +
                               std::to_string(trapezoid) + " vs " + std::to_string(result.auc));
    }
    return result;
}

RunSummary summarize_runs(const std::vector<double>& accuracies) {
    require(!accuracies.empty(), "summarize_runs: empty input");
    RunSummary summary;
    summary.values = accuracies;

    std::vector<double> sorted = accuracies;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    summary.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (const double v : sorted) {
        ss += (v - summary.mean) * (v - summary.mean);
    }
    summary.stddev = std::sqrt(ss / static_cast<double>(n));

    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, n - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };
    summary.min = sorted.front();
    summary.q1 = quantile(0.25);
    summary.median = quantile(0.5);
    summary.q3 = quantile(0.75);
    summary.max = sorted.back();
    return summary;
}

EvaluationReport evaluate_predictions(const Vector& scores, const Labels& truth,
                                      std::string task_name, std::string config_fingerprint,
                                      std::uint64_t seed) {
    EvaluationReport report;
    report.roc = roc_auc(scores, truth);
    report.auc = report.roc.auc;
    report.confusion = confusion(labels_from_scores(scores), truth);
    report.metrics = metrics(report.confusion);
    report.task_name = std::move(task_name);
    report.config_fingerprint = std::move(config_fingerprint);
    report.seed = seed;
    return report;
}

}  // namespace ceda
