#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ceda/adapt.hpp"
#include "ceda/dataset.hpp"
#include "ceda/synthetic.hpp"

namespace ceda {

struct CsvTaskConfig {
    std::string source_path;
    ColumnSchema source_schema;
    std::string target_path;
    ColumnSchema target_schema;
};

struct ClassifierConfig {
    std::string type = "logistic";  // logistic | mlp | knn | gnb
    double l2 = 1e-3;
    int epochs = 300;
    double lr = 0.5;
    int hidden = 16;
    int knn_k = 5;
};

struct PipelineConfig {
    int d = 0;                        // 0 -> variance-threshold rule
    double variance_threshold = 0.95;
    AdaptOptions adapt;
    double sigma_floor = 1e-12;
};

/// Everything a run needs; together with the base seed it fully
/// determines the emitted reports.
struct ExperimentConfig {
    std::string task_name = "synthetic";
    std::optional<SyntheticTaskSpec> synthetic;
    std::optional<CsvTaskConfig> csv;
    PipelineConfig pipeline;
    ClassifierConfig classifier;
    std::vector<std::string> baselines = {"logistic", "knn", "gnb", "mlp"};
    int runs = 1;
    std::uint64_t base_seed = 0;
    std::string output_dir = "out";
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Full normalized echo: every knob appears, defaults filled in.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Cross-field validation beyond what parsing enforces; throws
/// std::invalid_argument with a descriptive message.
void validate_config(const ExperimentConfig& config);

/// FNV-1a hash of the normalized config echo, hex-encoded.
std::string config_fingerprint(const ExperimentConfig& config);

}  // namespace ceda
