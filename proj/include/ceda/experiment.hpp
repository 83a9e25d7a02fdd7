#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ceda/config.hpp"
#include "ceda/metrics.hpp"
#include "ceda/pca.hpp"
#include "ceda/preprocess.hpp"

namespace ceda {

struct MethodResult {
    std::string method;
    std::vector<EvaluationReport> runs;
    RunSummary accuracy_summary;
};

struct TaskReport {
    std::string task_name;
    std::string mode;  // "run" or "ablate"
    nlohmann::json config_echo;
    std::vector<MethodResult> methods;
    nlohmann::json notes;
};

/// Inputs of one run after the load stage: assembled numeric matrices,
/// source labels, and the held-out target truth (evaluation only).
struct RunInputs {
    Matrix x_s;
    Labels y_s;
    Matrix x_t;
    Labels target_truth;
    nlohmann::json notes;
};

/// Stage functions used by both entry points; each throws StageError with
/// its stage name on failure.
RunInputs load_stage(const ExperimentConfig& config, std::uint64_t seed);
std::pair<Matrix, Matrix> preprocess_stage(const RunInputs& inputs, const PipelineConfig& pipeline);
HomogenizedPair homogenize_stage(const Matrix& xs_std, const Matrix& xt_std,
                                 const PipelineConfig& pipeline);

/// Executes the full protocol: for each run r, seed = base_seed + r,
/// preprocess -> homogenize -> adapt -> classify -> evaluate, plus every
/// configured baseline on the homogenized features without adaptation.
TaskReport run_task(const ExperimentConfig& config);

/// Three-arm ablation per seed: clustering-guided correspondences, random
/// correspondences of the same size, and no adaptation at all.
TaskReport run_ablation(const ExperimentConfig& config);

nlohmann::json report_to_json(const TaskReport& report);
std::string runs_csv(const TaskReport& report);

/// Writes report.json and runs.csv into `directory` (created if needed).
void write_report(const TaskReport& report, const std::string& directory);

}  // namespace ceda
