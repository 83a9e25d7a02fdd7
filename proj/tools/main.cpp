#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ceda/experiment.hpp"
#include "ceda/version.hpp"

namespace {

using nlohmann::json;

std::string resolve_output_dir(const ceda::ExperimentConfig& config,
                               const std::string& cli_override) {
    if (!cli_override.empty()) {
        return cli_override;
    }
    if (const char* env = std::getenv("CEDA_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return config.output_dir;
}

int fail_with(const std::string& stage, const std::string& message) {
    const json error = {{"error", {{"stage", stage}, {"message", message}}}};
    std::cerr << error.dump(2) << '\n';
    return 2;
}

int run_command(const std::string& config_path, const std::string& out_override, bool ablate) {
    ceda::ExperimentConfig config;
    try {
        config = ceda::load_config(config_path);
        ceda::validate_config(config);
    } catch (const std::exception& e) {
        return fail_with("config", e.what());
    }
    try {
        const ceda::TaskReport report =
            ablate ? ceda::run_ablation(config) : ceda::run_task(config);
        const std::string out_dir = resolve_output_dir(config, out_override);
        ceda::write_report(report, out_dir);
        std::cout << "wrote " << (std::filesystem::path(out_dir) / "report.json").string()
                  << " and runs.csv (" << report.methods.size() << " methods, "
                  << config.runs << " runs)\n";
        return 0;
    } catch (const ceda::StageError& e) {
        return fail_with(e.stage(), e.what());
    } catch (const std::exception& e) {
        return fail_with("run", e.what());
    }
}

int synth_command(const std::string& config_path, const std::string& out_override) {
    try {
        ceda::ExperimentConfig config = ceda::load_config(config_path);
        ceda::validate_config(config);
        if (!config.synthetic) {
            return fail_with("config", "synth requires a task of type \"synthetic\"");
        }
        ceda::SyntheticTaskSpec spec = *config.synthetic;
        spec.seed = config.base_seed;
        const ceda::DomainPair pair = ceda::generate_synthetic_pair(spec);

        const std::string out_dir = resolve_output_dir(config, out_override);
        std::filesystem::create_directories(out_dir);
        const auto dir = std::filesystem::path(out_dir);

        const auto to_raw = [](const ceda::Matrix& features, const ceda::Labels* labels) {
            ceda::RawDataset raw;
            raw.rows = static_cast<std::size_t>(features.rows());
            for (int c = 0; c < features.cols(); ++c) {
                ceda::RawColumn column;
                column.name = "f" + std::to_string(c + 1);
                column.numeric.reserve(raw.rows);
                for (int r = 0; r < features.rows(); ++r) {
                    column.numeric.push_back(features(r, c));
                }
                raw.features.push_back(std::move(column));
            }
            if (labels) {
                raw.labeled = true;
                for (const int label : *labels) {
                    raw.raw_labels.push_back(std::to_string(label));
                }
            }
            return raw;
        };

        ceda::save_csv((dir / "source.csv").string(),
                       to_raw(pair.source.features, &pair.source.labels));
        ceda::save_csv((dir / "target.csv").string(), to_raw(pair.target_features, nullptr));
        ceda::save_csv((dir / "target_truth.csv").string(),
                       to_raw(pair.target_features, &*pair.target_truth));
        std::cout << "wrote source.csv, target.csv, target_truth.csv to " << out_dir << '\n';
        return 0;
    } catch (const std::exception& e) {
        return fail_with("synth", e.what());
    }
}

int validate_command(const std::string& config_path) {
    try {
        const ceda::ExperimentConfig config = ceda::load_config(config_path);
        ceda::validate_config(config);
        std::cout << ceda::config_to_json(config).dump(2) << '\n';
        return 0;
    } catch (const std::exception& e) {
        return fail_with("config", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ceda: clustering-enhanced domain adaptation for cross-domain "
                 "intrusion detection on tabular traffic data"};
    app.set_version_flag("--version", std::string("ceda ") + ceda::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;

    auto* run = app.add_subcommand("run", "Run a transfer task end-to-end and emit reports");
    run->add_option("config", config_path, "Path to the experiment config (JSON)")->required();
    run->add_option("-o,--output-dir", out_override,
                    "Output directory (overrides config and CEDA_OUTPUT_DIR)");

    auto* ablate = app.add_subcommand(
        "ablate", "Run the three-arm clustering-enhancement ablation");
    ablate->add_option("config", config_path, "Path to the experiment config (JSON)")->required();
    ablate->add_option("-o,--output-dir", out_override, "Output directory override");

    auto* synth = app.add_subcommand("synth", "Emit a synthetic domain pair as CSV files");
    synth->add_option("config", config_path, "Path to the experiment config (JSON)")->required();
    synth->add_option("-o,--output-dir", out_override, "Output directory override");

    auto* validate = app.add_subcommand("validate-config",
                                        "Parse, validate and echo a config with defaults");
    validate->add_option("config", config_path, "Path to the experiment config (JSON)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        return run_command(config_path, out_override, false);
    }
    if (ablate->parsed()) {
        return run_command(config_path, out_override, true);
    }
    if (synth->parsed()) {
        return synth_command(config_path, out_override);
    }
    return validate_command(config_path);
}
