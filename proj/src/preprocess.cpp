#include "ceda/preprocess.hpp"

#include <cmath>

namespace ceda {

StandardizerModel fit_standardizer(const Matrix& x, double sigma_floor) {
    require(x.rows() >= 2, "fit_standardizer requires at least 2 rows");
    require_finite(x, "fit_standardizer input");

    StandardizerModel model;
    model.sigma_floor = sigma_floor;
    const double n = static_cast<double>(x.rows());
    model.mu = x.colwise().mean();
    model.sigma.resize(x.cols());
    model.divisor.resize(x.cols());
    for (int c = 0; c < x.cols(); ++c) {
        const double variance = (x.col(c).array() - model.mu(c)).square().sum() / n;
        const double sigma = std::sqrt(std::max(variance, 0.0));
        model.sigma(c) = sigma;
        model.divisor(c) = sigma >= sigma_floor ? sigma : 1.0;
    }
    return model;
}

Matrix apply_standardizer(const StandardizerModel& model, const Matrix& x) {
    require(x.cols() == model.mu.size(), "apply_standardizer: dimension mismatch");
    Matrix out(x.rows(), x.cols());
    for (int c = 0; c < x.cols(); ++c) {
        out.col(c) = (x.col(c).array() - model.mu(c)) / model.divisor(c);
    }
    return out;
}

void CategoryEncoder::ensure_column(std::size_t column) {
    if (column >= maps_.size()) {
        maps_.resize(column + 1);
        reverse_.resize(column + 1);
    }
}

std::vector<double> CategoryEncoder::fit_encode(std::size_t column,
                                                const std::vector<std::string>& tokens) {
    ensure_column(column);
    auto& map = maps_[column];
    auto& reverse = reverse_[column];
    std::vector<double> codes;
    codes.reserve(tokens.size());
    for (const auto& token : tokens) {
        auto it = map.find(token);
        if (it == map.end()) {
            it = map.emplace(token, static_cast<int>(reverse.size())).first;
            reverse.push_back(token);
        }
        codes.push_back(static_cast<double>(it->second));
    }
    return codes;
}

std::vector<double> CategoryEncoder::encode(std::size_t column,
                                            const std::vector<std::string>& tokens,
                                            const std::string& policy) {
    ensure_column(column);
    if (policy == "new-code") {
        return fit_encode(column, tokens);
    }
    const auto& map = maps_[column];
    std::vector<double> codes;
    codes.reserve(tokens.size());
    for (const auto& token : tokens) {
        const auto it = map.find(token);
        if (it == map.end()) {
            throw std::invalid_argument("unseen category token '" + token +
                                        "' rejected (column " + std::to_string(column) + ")");
        }
        codes.push_back(static_cast<double>(it->second));
    }
    return codes;
}

const std::string& CategoryEncoder::decode(std::size_t column, int code) const {
    if (column >= reverse_.size() || code < 0 ||
        static_cast<std::size_t>(code) >= reverse_[column].size()) {
        throw std::invalid_argument("decode: unknown code " + std::to_string(code));
    }
    return reverse_[column][static_cast<std::size_t>(code)];
}

CorrectionResult correct_labels(const std::vector<std::string>& raw_labels,
                                const std::map<std::string, int>& vocabulary,
                                const std::map<std::string, std::string>& corrections,
                                const std::string& unknown_policy) {
    CorrectionResult result;
    result.labels.reserve(raw_labels.size());
    for (const auto& token : raw_labels) {
        auto it = vocabulary.find(token);
        if (it != vocabulary.end()) {
            result.labels.push_back(it->second);
            continue;
        }
        const auto fix = corrections.find(token);
        if (fix != corrections.end()) {
            it = vocabulary.find(fix->second);
            if (it == vocabulary.end()) {
                throw std::invalid_argument("correction target '" + fix->second +
                                            "' is not in the label vocabulary");
            }
            result.labels.push_back(it->second);
            ++result.corrected;
            continue;
        }
        if (unknown_policy == "reject") {
            throw std::invalid_argument("unknown label token '" + token + "'");
        }
        throw std::invalid_argument("unsupported unknown-label policy '" + unknown_policy + "'");
    }
    for (const auto label : result.labels) {
        require(label == 0 || label == 1, "label vocabulary must map to {0,1}");
    }
    return result;
}

AssembledData materialize(const RawDataset& raw, const ColumnSchema& schema) {
    require(schema.encoding == "ordinal",
            "encoding '" + schema.encoding + "' is not implemented (use \"ordinal\")");

    AssembledData out;
    out.dropped_rows = raw.dropped_rows;
    out.features.resize(static_cast<Eigen::Index>(raw.rows),
                        static_cast<Eigen::Index>(raw.features.size()));

    std::size_t categorical_slot = 0;
    for (std::size_t c = 0; c < raw.features.size(); ++c) {
        const RawColumn& column = raw.features[c];
        if (column.categorical) {
            const auto codes = out.encoder.fit_encode(categorical_slot++, column.tokens);
            for (std::size_t r = 0; r < raw.rows; ++r) {
                out.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    codes[r];
            }
        } else {
            for (std::size_t r = 0; r < raw.rows; ++r) {
                out.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    column.numeric[r];
            }
        }
    }

    if (raw.labeled) {
        auto corrected = correct_labels(raw.raw_labels, schema.label_map,
                                        schema.label_corrections, schema.unknown_label_policy);
        out.labels = std::move(corrected.labels);
        out.corrected_labels = corrected.corrected;
    }
    require_finite(out.features, "materialized feature matrix");
    return out;
}

}  // namespace ceda
