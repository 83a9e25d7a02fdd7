#include "ceda/config.hpp"

#include <fstream>

namespace ceda {

namespace {

using nlohmann::json;

ColumnSchema schema_from_json(const json& j) {
    ColumnSchema schema;
    schema.columns = j.value("columns", std::vector<std::string>{});
    schema.label_column = j.value("label_column", std::string{});
    schema.categorical_columns = j.value("categorical_columns", std::vector<std::string>{});
    if (j.contains("label_map")) {
        for (const auto& [token, label] : j.at("label_map").items()) {
            schema.label_map[token] = label.get<int>();
        }
    }
    if (j.contains("label_corrections")) {
        for (const auto& [token, fixed] : j.at("label_corrections").items()) {
            schema.label_corrections[token] = fixed.get<std::string>();
        }
    }
    schema.unknown_label_policy = j.value("unknown_label_policy", std::string{"reject"});
    schema.unseen_category_policy = j.value("unseen_category_policy", std::string{"new-code"});
    schema.encoding = j.value("encoding", std::string{"ordinal"});
    return schema;
}

json schema_to_json(const ColumnSchema& schema) {
    json j;
    j["columns"] = schema.columns;
    j["label_column"] = schema.label_column;
    j["categorical_columns"] = schema.categorical_columns;
    j["label_map"] = json::object();
    for (const auto& [token, label] : schema.label_map) {
        j["label_map"][token] = label;
    }
    j["label_corrections"] = json::object();
    for (const auto& [token, fixed] : schema.label_corrections) {
        j["label_corrections"][token] = fixed;
    }
    j["unknown_label_policy"] = schema.unknown_label_policy;
    j["unseen_category_policy"] = schema.unseen_category_policy;
    j["encoding"] = schema.encoding;
    return j;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    const json task = j.value("task", json::object());
    const std::string type = task.value("type", std::string{"synthetic"});
    config.task_name = task.value("name", type);

    if (type == "synthetic") {
        SyntheticTaskSpec spec;
        const json s = task.value("spec", json::object());
        spec.d_s = s.value("d_s", spec.d_s);
        spec.d_t = s.value("d_t", spec.d_t);
        spec.n_s = s.value("n_s", spec.n_s);
        spec.n_t = s.value("n_t", spec.n_t);
        spec.shift = s.value("shift", spec.shift);
        spec.class_sep = s.value("class_sep", spec.class_sep);
        spec.noise_dims_fraction = s.value("noise_dims_fraction", spec.noise_dims_fraction);
        config.synthetic = spec;
    } else if (type == "csv") {
        CsvTaskConfig csv;
        csv.source_path = task.at("source").at("path").get<std::string>();
        csv.source_schema = schema_from_json(task.at("source"));
        csv.target_path = task.at("target").at("path").get<std::string>();
        csv.target_schema = schema_from_json(task.at("target"));
        config.csv = csv;
    } else {
        throw std::invalid_argument("unknown task type '" + type + "'");
    }

    const json p = j.value("pipeline", json::object());
    config.pipeline.d = p.value("d", 0);
    config.pipeline.variance_threshold = p.value("variance_threshold", 0.95);
    config.pipeline.sigma_floor = p.value("sigma_floor", 1e-12);
    config.pipeline.adapt.m = p.value("m", 0);
    config.pipeline.adapt.gamma = p.value("gamma", 1.0);
    config.pipeline.adapt.lambda_weight = p.value("lambda", 1.0);
    config.pipeline.adapt.tau = p.value("tau", 0.0);
    config.pipeline.adapt.k_source = p.value("k_source", 0);
    config.pipeline.adapt.k_target = p.value("k_target", 0);
    config.pipeline.adapt.per_target_neighbors = p.value("per_target_neighbors", 1);
    config.pipeline.adapt.weighted_pairs = p.value("weighted_pairs", true);
    config.pipeline.adapt.max_rounds = p.value("max_rounds", 5);
    config.pipeline.adapt.rel_tol = p.value("rel_tol", 1e-3);
    config.pipeline.adapt.max_swaps = p.value("max_swaps", 0);

    const json c = j.value("classifier", json::object());
    config.classifier.type = c.value("type", std::string{"logistic"});
    config.classifier.l2 = c.value("l2", 1e-3);
    config.classifier.epochs = c.value("epochs", 300);
    config.classifier.lr = c.value("lr", 0.5);
    config.classifier.hidden = c.value("hidden", 16);
    config.classifier.knn_k = c.value("knn_k", 5);

    config.baselines =
        j.value("baselines", std::vector<std::string>{"logistic", "knn", "gnb", "mlp"});
    config.runs = j.value("runs", 1);
    config.base_seed = j.value("base_seed", std::uint64_t{0});
    config.output_dir = j.value("output_dir", std::string{"out"});
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    json j;
    file >> j;
    return config_from_json(j);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    json j;
    json task;
    task["name"] = config.task_name;
    if (config.synthetic) {
        task["type"] = "synthetic";
        const SyntheticTaskSpec& s = *config.synthetic;
        task["spec"] = {{"d_s", s.d_s},
                        {"d_t", s.d_t},
                        {"n_s", s.n_s},
                        {"n_t", s.n_t},
                        {"shift", s.shift},
                        {"class_sep", s.class_sep},
                        {"noise_dims_fraction", s.noise_dims_fraction}};
    } else if (config.csv) {
        task["type"] = "csv";
        json source = schema_to_json(config.csv->source_schema);
        source["path"] = config.csv->source_path;
        json target = schema_to_json(config.csv->target_schema);
        target["path"] = config.csv->target_path;
        task["source"] = source;
        task["target"] = target;
    }
    j["task"] = task;

    j["pipeline"] = {{"d", config.pipeline.d},
                     {"variance_threshold", config.pipeline.variance_threshold},
                     {"sigma_floor", config.pipeline.sigma_floor},
                     {"m", config.pipeline.adapt.m},
                     {"gamma", config.pipeline.adapt.gamma},
                     {"lambda", config.pipeline.adapt.lambda_weight},
                     {"tau", config.pipeline.adapt.tau},
                     {"k_source", config.pipeline.adapt.k_source},
                     {"k_target", config.pipeline.adapt.k_target},
                     {"per_target_neighbors", config.pipeline.adapt.per_target_neighbors},
                     {"weighted_pairs", config.pipeline.adapt.weighted_pairs},
                     {"max_rounds", config.pipeline.adapt.max_rounds},
                     {"rel_tol", config.pipeline.adapt.rel_tol},
                     {"max_swaps", config.pipeline.adapt.max_swaps}};
    j["classifier"] = {{"type", config.classifier.type}, {"l2", config.classifier.l2},
                       {"epochs", config.classifier.epochs}, {"lr", config.classifier.lr},
                       {"hidden", config.classifier.hidden}, {"knn_k", config.classifier.knn_k}};
    j["baselines"] = config.baselines;
    j["runs"] = config.runs;
    j["base_seed"] = config.base_seed;
    j["output_dir"] = config.output_dir;
    return j;
}

void validate_config(const ExperimentConfig& config) {
    require(config.runs >= 1, "config: runs must be >= 1");
    require(config.synthetic.has_value() != config.csv.has_value(),
            "config: exactly one of synthetic/csv task must be set");
    require(config.pipeline.variance_threshold > 0.0 && config.pipeline.variance_threshold <= 1.0,
            "config: variance_threshold must be in (0, 1]");
    require(config.pipeline.d >= 0, "config: d must be >= 0 (0 = automatic)");
    require(config.pipeline.adapt.gamma > 0.0, "config: gamma must be > 0");
    require(config.pipeline.adapt.tau >= 0.0, "config: tau must be >= 0 (0 = median heuristic)");
    require(config.pipeline.adapt.per_target_neighbors >= 1,
            "config: per_target_neighbors must be >= 1");
    require(config.pipeline.adapt.max_rounds >= 1, "config: max_rounds must be >= 1");
    require(config.pipeline.adapt.rel_tol >= 0.0, "config: rel_tol must be >= 0");

    const std::vector<std::string> known = {"logistic", "knn", "gnb", "mlp"};
    const auto is_known = [&](const std::string& name) {
        return std::find(known.begin(), known.end(), name) != known.end();
    };
    require(is_known(config.classifier.type),
            "config: unknown classifier '" + config.classifier.type + "'");
    for (const auto& baseline : config.baselines) {
        require(is_known(baseline), "config: unknown baseline '" + baseline + "'");
    }
    require(config.classifier.knn_k >= 1 && config.classifier.knn_k % 2 == 1,
            "config: knn_k must be odd and >= 1");
    require(config.classifier.epochs >= 1, "config: epochs must be >= 1");
    require(config.classifier.lr > 0.0, "config: lr must be > 0");
    require(config.classifier.hidden >= 1, "config: hidden must be >= 1");

    if (config.synthetic) {
        const SyntheticTaskSpec& s = *config.synthetic;
        require(s.d_s >= 2 && s.d_t >= 2, "config: synthetic dims must be >= 2");
        require(s.n_s >= 4 && s.n_t >= 4, "config: synthetic counts must be >= 4");
        require(s.shift >= 0.0, "config: shift must be >= 0");
        require(s.class_sep > 0.0, "config: class_sep must be > 0");
        require(s.noise_dims_fraction >= 0.0 && s.noise_dims_fraction <= 1.0,
                "config: noise_dims_fraction must be in [0, 1]");
    } else {
        require(!config.csv->source_schema.label_column.empty(),
                "config: source schema must declare a label column");
        require(!config.csv->source_schema.label_map.empty(),
                "config: source schema must declare a label vocabulary");
    }
}

std::string config_fingerprint(const ExperimentConfig& config) {
    const std::string dump = config_to_json(config).dump();
    std::uint64_t hash = 1469598103934665603ULL;  // FNV-1a 64
    for (const unsigned char byte : dump) {
        hash ^= byte;
        hash *= 1099511628211ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buffer);
}

}  // namespace ceda
