#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ceda/dataset.hpp"
#include "ceda/types.hpp"

namespace ceda {

/// Per-feature z-score model. Features whose standard deviation falls
/// below `sigma_floor` divide by 1 instead, so constant columns map to 0.
struct StandardizerModel {
    Vector mu;
    Vector sigma;     // population standard deviations, >= 0
    Vector divisor;   // sigma where sigma >= sigma_floor, else 1
    double sigma_floor = 1e-12;
};

/// Fits column means and population standard deviations. Requires >= 2 rows.
StandardizerModel fit_standardizer(const Matrix& x, double sigma_floor = 1e-12);

/// Applies x' = (x - mu) / divisor column-wise.
Matrix apply_standardizer(const StandardizerModel& model, const Matrix& x);

/// Ordinal encoder: per column, tokens map to integer codes in
/// first-appearance order.
class CategoryEncoder {
public:
    /// Encodes one column, extending the mapping with unseen tokens.
    std::vector<double> fit_encode(std::size_t column, const std::vector<std::string>& tokens);

    /// Encodes with the existing mapping. Unseen tokens follow `policy`:
    /// "new-code" appends the next code, "reject" throws.
    std::vector<double> encode(std::size_t column, const std::vector<std::string>& tokens,
                               const std::string& policy);

    const std::string& decode(std::size_t column, int code) const;
    std::size_t columns() const { return maps_.size(); }

private:
    std::vector<std::map<std::string, int>> maps_;
    std::vector<std::vector<std::string>> reverse_;

    void ensure_column(std::size_t column);
};

struct CorrectionResult {
    Labels labels;
    std::size_t corrected = 0;  // tokens routed through the correction map
};

/// Maps raw label tokens to {0,1}. Tokens already in the canonical
/// vocabulary pass through uncounted; tokens found in `corrections` are
/// rewritten to their canonical form and counted; anything else is
/// rejected under the "reject" policy.
CorrectionResult correct_labels(const std::vector<std::string>& raw_labels,
                                const std::map<std::string, int>& vocabulary,
                                const std::map<std::string, std::string>& corrections,
                                const std::string& unknown_policy = "reject");

struct AssembledData {
    Matrix features;
    Labels labels;  // empty when the dataset is unlabeled
    CategoryEncoder encoder;
    std::size_t corrected_labels = 0;
    std::size_t dropped_rows = 0;
};

/// Turns a RawDataset into a numeric matrix: encodes categorical columns
/// ordinally and corrects/validates labels against the schema vocabulary.
AssembledData materialize(const RawDataset& raw, const ColumnSchema& schema);

}  // namespace ceda
