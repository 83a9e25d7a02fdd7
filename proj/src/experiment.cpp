#include "ceda/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <utility>

#include "ceda/adapt.hpp"
#include "ceda/classifiers.hpp"
#include "ceda/version.hpp"

namespace ceda {

namespace {

using nlohmann::json;

template <typename F>
auto stage(const char* name, F&& body) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

Classifier train_classifier(const ClassifierConfig& config, const std::string& type,
                            const Matrix& x, const Labels& y, std::uint64_t seed) {
    if (type == "logistic") {
        return train_logistic(x, y, config.l2, config.epochs, config.lr);
    }
    if (type == "mlp") {
        return train_mlp(x, y, config.hidden, config.epochs, config.lr, seed);
    }
    if (type == "gnb") {
        return fit_gnb(x, y);
    }
    if (type == "knn") {
        return fit_knn(x, y, config.knn_k);
    }
    throw std::invalid_argument("unknown classifier '" + type + "'");
}

json confusion_to_json(const ConfusionMatrix& cm) {
    return {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
}

json run_to_json(const EvaluationReport& report) {
    json roc = json::array();
    for (const auto& [fpr, tpr] : report.roc.points) {
        roc.push_back({fpr, tpr});
    }
    return {{"seed", report.seed},
            {"acc", report.metrics.acc},
            {"precision", report.metrics.precision},
            {"recall", report.metrics.recall},
            {"f1", report.metrics.f1},
            {"auc", report.auc},
            {"confusion", confusion_to_json(report.confusion)},
            {"roc", roc},
            {"fingerprint", report.config_fingerprint}};
}

json summary_to_json(const RunSummary& summary) {
    return {{"values", summary.values}, {"mean", summary.mean},   {"std", summary.stddev},
            {"min", summary.min},       {"q1", summary.q1},       {"median", summary.median},
            {"q3", summary.q3},         {"max", summary.max}};
}

MethodResult make_method_result(std::string name, std::vector<EvaluationReport> runs) {
    MethodResult result;
    result.method = std::move(name);
    std::vector<double> accuracies;
    accuracies.reserve(runs.size());
    for (const auto& run : runs) {
        accuracies.push_back(run.metrics.acc);
    }
    result.accuracy_summary = summarize_runs(accuracies);
    result.runs = std::move(runs);
    return result;
}

struct PreparedRun {
    RunInputs inputs;
    HomogenizedPair homogenized;
    AdaptOptions adapt_options;  // cluster counts resolved
};

PreparedRun prepare_run(const ExperimentConfig& config, std::uint64_t seed) {
    PreparedRun prepared;
    prepared.inputs = load_stage(config, seed);
    const auto standardized =
        stage("preprocess", [&] { return preprocess_stage(prepared.inputs, config.pipeline); });
    prepared.homogenized = stage("homogenize", [&] {
        return homogenize_stage(standardized.first, standardized.second, config.pipeline);
    });

    prepared.adapt_options = config.pipeline.adapt;
    stage("cluster", [&] {
        AdaptOptions& options = prepared.adapt_options;
        const int n_s = static_cast<int>(prepared.homogenized.z_s.rows());
        const int n_t = static_cast<int>(prepared.homogenized.z_t.rows());
        if (options.k_source <= 0) options.k_source = default_cluster_count(n_s);
        if (options.k_target <= 0) options.k_target = default_cluster_count(n_t);
        require(options.k_source <= n_s, "k_source=" + std::to_string(options.k_source) +
                                             " exceeds source sample count " +
                                             std::to_string(n_s));
        require(options.k_target <= n_t, "k_target=" + std::to_string(options.k_target) +
                                             " exceeds target sample count " +
                                             std::to_string(n_t));
        return 0;
    });
    return prepared;
}

EvaluationReport classify_and_evaluate(const ExperimentConfig& config, const std::string& type,
                                       const Matrix& train_x, const Labels& train_y,
                                       const Matrix& test_x, const Labels& truth,
                                       const std::string& fingerprint, std::uint64_t seed) {
    const Classifier model = stage(
        "classify", [&] { return train_classifier(config.classifier, type, train_x, train_y, seed); });
    const Vector scores = stage("classify", [&] { return predict_scores(model, test_x); });
    return stage("evaluate", [&] {
        return evaluate_predictions(scores, truth, config.task_name, fingerprint, seed);
    });
}

}  // namespace

RunInputs load_stage(const ExperimentConfig& config, std::uint64_t seed) {
    return stage("load", [&]() -> RunInputs {
        RunInputs inputs;
        if (config.synthetic) {
            SyntheticTaskSpec spec = *config.synthetic;
            spec.seed = seed;
            DomainPair pair = generate_synthetic_pair(spec);
            inputs.x_s = std::move(pair.source.features);
            inputs.y_s = std::move(pair.source.labels);
            inputs.x_t = std::move(pair.target_features);
            inputs.target_truth = std::move(*pair.target_truth);
            inputs.notes = {{"source_rows", inputs.x_s.rows()},
                            {"target_rows", inputs.x_t.rows()},
                            {"dropped_rows_source", 0},
                            {"dropped_rows_target", 0},
                            {"corrected_labels_source", 0}};
            return inputs;
        }

        const CsvTaskConfig& csv = *config.csv;
        const RawDataset raw_source = load_csv(csv.source_path, csv.source_schema);
        const RawDataset raw_target = load_csv(csv.target_path, csv.target_schema);
        AssembledData source = materialize(raw_source, csv.source_schema);
        AssembledData target = materialize(raw_target, csv.target_schema);
        require(!source.labels.empty(), "source dataset must be labeled");
        require(!target.labels.empty(),
                "target dataset carries no ground-truth labels; evaluation is impossible");
        inputs.x_s = std::move(source.features);
        inputs.y_s = std::move(source.labels);
        inputs.x_t = std::move(target.features);
        inputs.target_truth = std::move(target.labels);
        inputs.notes = {{"source_rows", inputs.x_s.rows()},
                        {"target_rows", inputs.x_t.rows()},
                        {"dropped_rows_source", raw_source.dropped_rows},
                        {"dropped_rows_target", raw_target.dropped_rows},
                        {"corrected_labels_source", source.corrected_labels},
                        {"corrected_labels_target", target.corrected_labels}};
        return inputs;
    });
}

std::pair<Matrix, Matrix> preprocess_stage(const RunInputs& inputs,
                                           const PipelineConfig& pipeline) {
    const StandardizerModel source_model = fit_standardizer(inputs.x_s, pipeline.sigma_floor);
    const StandardizerModel target_model = fit_standardizer(inputs.x_t, pipeline.sigma_floor);
    return {apply_standardizer(source_model, inputs.x_s),
            apply_standardizer(target_model, inputs.x_t)};
}

HomogenizedPair homogenize_stage(const Matrix& xs_std, const Matrix& xt_std,
                                 const PipelineConfig& pipeline) {
    const int d = pipeline.d > 0
                      ? pipeline.d
                      : choose_shared_dim(xs_std, xt_std, pipeline.variance_threshold);
    return homogenize_pair(xs_std, xt_std, d);
}

TaskReport run_task(const ExperimentConfig& config) {
    validate_config(config);
    const std::string fingerprint = config_fingerprint(config);

    std::vector<EvaluationReport> adapted_runs;
    std::map<std::string, std::vector<EvaluationReport>> baseline_runs;
    json notes;

    for (int r = 0; r < config.runs; ++r) {
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
        PreparedRun prepared = prepare_run(config, seed);
        if (r == 0) {
            notes = prepared.inputs.notes;
            notes["chosen_dim"] = prepared.homogenized.z_s.cols();
        }

        const AdaptationResult adapted = stage("adapt", [&] {
            return adapt_iterate(prepared.homogenized.z_s, prepared.homogenized.z_t,
                                 prepared.adapt_options);
        });
        EvaluationReport adapted_report = classify_and_evaluate(
            config, config.classifier.type, adapted.h_s, prepared.inputs.y_s, adapted.h_t,
            prepared.inputs.target_truth, fingerprint, seed);
        adapted_runs.push_back(std::move(adapted_report));

        for (const auto& baseline : config.baselines) {
            baseline_runs[baseline].push_back(classify_and_evaluate(
                config, baseline, prepared.homogenized.z_s, prepared.inputs.y_s,
                prepared.homogenized.z_t, prepared.inputs.target_truth, fingerprint, seed));
        }
    }

    TaskReport report;
    report.task_name = config.task_name;
    report.mode = "run";
    report.config_echo = config_to_json(config);
    report.notes = std::move(notes);
    report.methods.push_back(make_method_result("adapted", std::move(adapted_runs)));
    for (auto& [name, runs] : baseline_runs) {
        report.methods.push_back(make_method_result(name, std::move(runs)));
    }
    return report;
}

TaskReport run_ablation(const ExperimentConfig& config) {
    validate_config(config);
    const std::string fingerprint = config_fingerprint(config);

    std::vector<EvaluationReport> clustering_runs;
    std::vector<EvaluationReport> random_runs;
    std::vector<EvaluationReport> none_runs;
    json notes;

    for (int r = 0; r < config.runs; ++r) {
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(r);
        PreparedRun prepared = prepare_run(config, seed);
        if (r == 0) {
            notes = prepared.inputs.notes;
            notes["chosen_dim"] = prepared.homogenized.z_s.cols();
        }
        const Matrix& z_s = prepared.homogenized.z_s;
        const Matrix& z_t = prepared.homogenized.z_t;

        const AdaptationResult clustered =
            stage("adapt", [&] { return adapt_iterate(z_s, z_t, prepared.adapt_options); });
        clustering_runs.push_back(classify_and_evaluate(
            config, config.classifier.type, clustered.h_s, prepared.inputs.y_s, clustered.h_t,
            prepared.inputs.target_truth, fingerprint, seed));

        const AdaptationResult randomized = stage("adapt", [&] {
            const CorrespondenceSet omega = random_correspondences(
                static_cast<int>(z_s.rows()), static_cast<int>(z_t.rows()),
                prepared.adapt_options.per_target_neighbors, seed);
            return adapt_fixed_omega(z_s, z_t, omega, prepared.adapt_options);
        });
        random_runs.push_back(classify_and_evaluate(
            config, config.classifier.type, randomized.h_s, prepared.inputs.y_s, randomized.h_t,
            prepared.inputs.target_truth, fingerprint, seed));

        none_runs.push_back(classify_and_evaluate(config, config.classifier.type, z_s,
                                                  prepared.inputs.y_s, z_t,
                                                  prepared.inputs.target_truth, fingerprint,
                                                  seed));
    }

    TaskReport report;
    report.task_name = config.task_name;
    report.mode = "ablate";
    report.config_echo = config_to_json(config);
    report.notes = std::move(notes);
    report.methods.push_back(make_method_result("clustering_omega", std::move(clustering_runs)));
    report.methods.push_back(make_method_result("random_omega", std::move(random_runs)));
    report.methods.push_back(make_method_result("no_adaptation", std::move(none_runs)));
    return report;
}

nlohmann::json report_to_json(const TaskReport& report) {
    json methods;
    for (const auto& method : report.methods) {
        json runs = json::array();
        for (const auto& run : method.runs) {
            runs.push_back(run_to_json(run));
        }
        methods[method.method] = {{"runs", runs},
                                  {"accuracy_summary", summary_to_json(method.accuracy_summary)}};
    }
    return {{"task", report.task_name},
            {"mode", report.mode},
            {"config", report.config_echo},
            {"environment",
             {{"library", "ceda"}, {"version", kVersion}, {"report_schema", kReportSchema}}},
            {"methods", methods},
            {"notes", report.notes}};
}

std::string runs_csv(const TaskReport& report) {
    std::string csv = "task,method,seed,acc,precision,recall,f1,auc\n";
    for (const auto& method : report.methods) {
        for (const auto& run : method.runs) {
            csv += report.task_name;
            csv += ',';
            csv += method.method;
            csv += ',';
            csv += std::to_string(run.seed);
            csv += ',';
            csv += format_double(run.metrics.acc);
            csv += ',';
            csv += format_double(run.metrics.precision);
            csv += ',';
            csv += format_double(run.metrics.recall);
            csv += ',';
            csv += format_double(run.metrics.f1);
            csv += ',';
            csv += format_double(run.auc);
            csv += '\n';
        }
    }
    return csv;
}

void write_report(const TaskReport& report, const std::string& directory) {
    stage("report", [&] {
        std::filesystem::create_directories(directory);
        {
            std::ofstream file(std::filesystem::path(directory) / "report.json",
                               std::ios::trunc);
            if (!file) {
                throw std::runtime_error("cannot write report.json in " + directory);
            }
            file << report_to_json(report).dump(2) << '\n';
        }
        {
            std::ofstream file(std::filesystem::path(directory) / "runs.csv", std::ios::trunc);
            if (!file) {
                throw std::runtime_error("cannot write runs.csv in " + directory);
            }
            file << runs_csv(report);
        }
        return 0;
    });
}

}  // namespace ceda
