#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ceda/types.hpp"

namespace ceda {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }
};

struct MetricSet {
    double acc = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct RocResult {
    std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) .. (1,1)
    double auc = 0.0;
};

/// Box-plot statistics over repeated runs. Quartiles interpolate the
/// sorted sample linearly at 0.25/0.5/0.75 * (n-1); std is population.
struct RunSummary {
    std::vector<double> values;
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

struct EvaluationReport {
    MetricSet metrics;
    double auc = 0.0;
    RocResult roc;
    ConfusionMatrix confusion;
    std::string task_name;
    std::string config_fingerprint;
    std::uint64_t seed = 0;
};

/// Malicious (1) is the positive class.
ConfusionMatrix confusion(const Labels& pred, const Labels& truth);

/// ACC, precision, recall, F1 with the 0/0 -> 0 convention.
MetricSet metrics(const ConfusionMatrix& cm);

/// AUC is the exact Mann-Whitney statistic (ties credited 1/2); the ROC
/// curve comes from the descending threshold sweep and its trapezoidal
/// area is cross-checked against the Mann-Whitney value to 1e-12.
RocResult roc_auc(const Vector& scores, const Labels& truth);

RunSummary summarize_runs(const std::vector<double>& accuracies);

EvaluationReport evaluate_predictions(const Vector& scores, const Labels& truth,
                                      std::string task_name, std::string config_fingerprint,
                                      std::uint64_t seed);

}  // namespace ceda
