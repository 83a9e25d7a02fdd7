#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda {

/// Dense sample container: one row per sample, one column per feature.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;

/// Error raised by the experiment runner, tagged with the pipeline stage
/// that failed so the CLI can emit a structured error record.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message)
        : std::runtime_error(message), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw std::invalid_argument(message);
    }
}

inline void require_finite(const Matrix& x, const std::string& what) {
    if (!x.allFinite()) {
        throw std::invalid_argument(what + " contains non-finite values");
    }
}

}  // namespace ceda
