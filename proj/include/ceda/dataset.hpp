#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ceda/types.hpp"

namespace ceda {

/// Labeled sample set: features plus one {0,1} label per row
/// (0 = normal traffic, 1 = malicious traffic).
struct LabeledDataset {
    Matrix features;
    Labels labels;
};

/// One transfer task: a labeled source domain and an unlabeled target
/// domain. `target_truth` exists for evaluation only; the adaptation
/// modules operate on plain matrices and never see this struct.
struct DomainPair {
    LabeledDataset source;
    Matrix target_features;
    std::optional<Labels> target_truth;
    std::string task_name;
};

/// Column layout and label handling for one CSV file.
struct ColumnSchema {
    /// Expected header, in order. Empty accepts whatever the file declares.
    std::vector<std::string> columns;
    /// Name of the label column; empty means the file is unlabeled.
    std::string label_column;
    std::vector<std::string> categorical_columns;
    /// Canonical label vocabulary, token -> {0,1}.
    std::map<std::string, int> label_map;
    /// Erroneous token -> canonical token.
    std::map<std::string, std::string> label_corrections;
    std::string unknown_label_policy = "reject";
    std::string unseen_category_policy = "new-code";
    std::string encoding = "ordinal";

    bool is_categorical(const std::string& name) const;
};

struct RawColumn {
    std::string name;
    bool categorical = false;
    std::vector<double> numeric;       // used when !categorical
    std::vector<std::string> tokens;   // used when categorical
};

/// Parsed CSV content. Categorical feature columns keep their raw tokens;
/// encoding and label correction happen in the preprocess module.
struct RawDataset {
    std::vector<RawColumn> features;
    std::vector<std::string> raw_labels;  // empty when unlabeled
    bool labeled = false;
    std::size_t rows = 0;
    std::size_t dropped_rows = 0;
};

/// Loads a comma-separated UTF-8 file with a header row. Rows whose numeric
/// cells fail to parse are dropped and counted in `dropped_rows`.
/// Throws on: missing file, header/schema mismatch, zero usable rows.
RawDataset load_csv(const std::string& path, const ColumnSchema& schema);

/// Writes a RawDataset back to CSV. Numeric cells use shortest
/// round-trip formatting, so load -> save -> load is value-exact.
void save_csv(const std::string& path, const RawDataset& data,
              const std::string& label_column = "label");

/// Formats one double with the shortest representation that parses back to
/// the identical bit pattern.
std::string format_double(double value);

}  // namespace ceda
