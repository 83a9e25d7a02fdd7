#include "ceda/pca.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace ceda {

namespace {

// Largest-magnitude entry made positive, lowest index breaking magnitude
// ties; keeps eigenvector signs deterministic.
void fix_column_sign(Eigen::Ref<Vector> column) {
    int best = 0;
    double best_abs = std::abs(column(0));
    for (int i = 1; i < column.size(); ++i) {
        const double a = std::abs(column(i));
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (column(best) < 0.0) {
        column = -column;
    }
}

}  // namespace

PcaModel fit_pca(const Matrix& x, int d) {
    const int max_d = static_cast<int>(std::min<Eigen::Index>(x.rows() - 1, x.cols()));
    require(d >= 1 && d <= max_d,
            "fit_pca: d must be in [1, min(rows-1, cols)] = [1, " + std::to_string(max_d) + "]");
    require_finite(x, "fit_pca input");

    PcaModel model;
    model.mean = x.colwise().mean();
    const Matrix centered = x.rowwise() - model.mean.transpose();
    const Matrix covariance =
        centered.transpose() * centered / static_cast<double>(x.rows());

    Eigen::SelfAdjointEigenSolver<Matrix> solver(covariance);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("fit_pca: covariance eigensolve failed (d_orig=" +
                                 std::to_string(x.cols()) + ")");
    }

    model.total_variance = covariance.trace();
    model.basis.resize(x.cols(), d);
    model.eigenvalues.resize(d);
    model.explained_variance_ratio.resize(d);
    const int d_orig = static_cast<int>(x.cols());
    for (int j = 0; j < d; ++j) {
        const int src = d_orig - 1 - j;  // solver returns ascending order
        const double eigenvalue = solver.eigenvalues()(src);
        if (eigenvalue < -1e-12) {
            throw std::runtime_error("fit_pca: negative eigenvalue " +
                                     std::to_string(eigenvalue));
        }
        model.eigenvalues(j) = std::max(eigenvalue, 0.0);
        model.basis.col(j) = solver.eigenvectors().col(src);
        fix_column_sign(model.basis.col(j));
        model.explained_variance_ratio(j) =
            model.total_variance > 0.0 ? model.eigenvalues(j) / model.total_variance : 0.0;
    }
    return model;
}

Matrix project(const PcaModel& model, const Matrix& x) {
    require(x.cols() == model.mean.size(), "project: dimension mismatch");
    return (x.rowwise() - model.mean.transpose()) * model.basis;
}

HomogenizedPair homogenize_pair(const Matrix& source_std, const Matrix& target_std, int d) {
    const int feasible =
        static_cast<int>(std::min({source_std.cols(), target_std.cols(),
                                   source_std.rows() - 1, target_std.rows() - 1}));
    require(d >= 1 && d <= feasible,
            "homogenize_pair: d=" + std::to_string(d) + " infeasible (max " +
                std::to_string(feasible) + ")");
    HomogenizedPair pair;
    pair.model_s = fit_pca(source_std, d);
    pair.model_t = fit_pca(target_std, d);
    pair.z_s = project(pair.model_s, source_std);
    pair.z_t = project(pair.model_t, target_std);
    return pair;
}

int choose_shared_dim(const Matrix& source_std, const Matrix& target_std, double threshold) {
    require(threshold > 0.0 && threshold <= 1.0, "variance threshold must be in (0,1]");
    const int cap = static_cast<int>(std::min(
        {source_std.cols(), target_std.cols(), source_std.rows() - 1, target_std.rows() - 1}));
    const int cap_shared =
        std::max(1, std::min<int>(cap, static_cast<int>(
                                           std::min(source_std.cols(), target_std.cols())) - 1));

    const auto needed = [&](const Matrix& x) {
        const int full = static_cast<int>(std::min<Eigen::Index>(x.rows() - 1, x.cols()));
        const PcaModel model = fit_pca(x, full);
        double cumulative = 0.0;
        for (int j = 0; j < full; ++j) {
            cumulative += model.explained_variance_ratio(j);
            if (cumulative >= threshold) {
                return j + 1;
            }
        }
        return full;
    };

    const int d = std::max(needed(source_std), needed(target_std));
    return std::clamp(d, 1, cap_shared);
}

}  // namespace ceda
