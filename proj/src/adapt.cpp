#include "ceda/adapt.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ceda/rng.hpp"

namespace ceda {

namespace {

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

double alignment_loss(const Matrix& k_l, const Matrix& a) {
    return (a.transpose() * k_l * a).trace();
}

double captured_scatter(const Matrix& k_h, const Matrix& a) {
    return (a.transpose() * k_h * a).trace();
}

double normalized_ratio(const Matrix& k_l, const Matrix& k_h, const Matrix& a) {
    const double scatter = captured_scatter(k_h, a);
    if (scatter <= 1e-300) {
        return 0.0;
    }
    return alignment_loss(k_l, a) / scatter;
}

}  // namespace

std::pair<Matrix, Matrix> build_alignment_matrices(const Matrix& z_s, const Matrix& z_t,
                                                   const CorrespondenceSet& omega) {
    require(z_s.cols() == z_t.cols(), "build_alignment_matrices: dimension mismatch");
    require(!omega.pairs.empty(), "build_alignment_matrices: empty correspondence set");
    const int d = static_cast<int>(z_s.cols());
    const int n_s = static_cast<int>(z_s.rows());
    const int n_t = static_cast<int>(z_t.rows());

    // K_L = Z^T L Z for the pair-graph Laplacian L, accumulated directly as
    // sum of weighted difference outer products.
    Matrix k_l = Matrix::Zero(d, d);
    for (const auto& pair : omega.pairs) {
        require(pair.source_index >= 0 && pair.source_index < n_s,
                "build_alignment_matrices: source index out of range");
        require(pair.target_index >= 0 && pair.target_index < n_t,
                "build_alignment_matrices: target index out of range");
        require(pair.weight >= 0.0, "build_alignment_matrices: negative pair weight");
        const Vector diff = (z_s.row(pair.source_index) - z_t.row(pair.target_index)).transpose();
        k_l.noalias() += pair.weight * (diff * diff.transpose());
    }

    // K_H = Z^T H Z: total scatter of the stacked rows about the grand mean.
    const double n_total = static_cast<double>(n_s + n_t);
    const Vector grand_mean =
        (z_s.colwise().sum() + z_t.colwise().sum()).transpose() / n_total;
    const Matrix cs = z_s.rowwise() - grand_mean.transpose();
    const Matrix ct = z_t.rowwise() - grand_mean.transpose();
    Matrix k_h = cs.transpose() * cs + ct.transpose() * ct;

    return {std::move(k_l), std::move(k_h)};
}

ProjectionModel solve_projection(const Matrix& k_l, const Matrix& k_h, int m, double gamma) {
    const int d = static_cast<int>(k_l.rows());
    require(k_l.rows() == k_l.cols() && k_h.rows() == k_h.cols() && k_h.rows() == d,
            "solve_projection: K_L and K_H must be square with matching size");
    require(m >= 1 && m <= d, "solve_projection: m must be in [1, d]");
    require(gamma > 0.0,
            "solve_projection: gamma must be > 0 (pass e.g. 1e-8 for a near-zero regularizer)");

    const Matrix b = k_l + gamma * Matrix::Identity(d, d);
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(k_h, b);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("solve_projection: generalized eigensolve failed (d=" +
                                 std::to_string(d) + ", gamma=" + std::to_string(gamma) + ")");
    }

    ProjectionModel model;
    model.m = m;
    model.gamma = gamma;
    model.a.resize(d, m);
    model.diagnostics.eigenvalues.resize(m);
    for (int j = 0; j < m; ++j) {
        const int src = d - 1 - j;  // ascending -> take the top m, descending
        model.diagnostics.eigenvalues(j) = solver.eigenvalues()(src);
        model.a.col(j) = solver.eigenvectors().col(src);
        fix_column_sign(model.a.col(j));
    }

    // Eigenpair residual and generalized orthonormality checks run on every
    // solve; a violation is a numeric failure, not a recoverable state.
    for (int j = 0; j < m; ++j) {
        const Vector lhs = k_h * model.a.col(j);
        const Vector rhs = model.diagnostics.eigenvalues(j) * (b * model.a.col(j));
        const double scale = std::max(lhs.norm(), 1e-30);
        if ((lhs - rhs).norm() > 1e-8 * scale) {
            throw std::runtime_error("solve_projection: eigenpair residual check failed");
        }
    }
    const Matrix gram = model.a.transpose() * b * model.a;
    if ((gram - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-6) {
        throw std::runtime_error("solve_projection: generalized orthonormality check failed");
    }
    return model;
}

namespace {

struct Round {
    ProjectionModel model;
    CorrespondenceSet omega;
    double l_da = 0.0;
    double ratio = 0.0;
};

Round solve_round(const Matrix& z_s, const Matrix& z_t, const CorrespondenceSet& omega, int m,
                  double gamma, double lambda_weight) {
    Round round;
    auto [k_l, k_h] = build_alignment_matrices(z_s, z_t, omega);
    round.model = solve_projection(k_l, k_h, m, gamma);
    round.model.lambda_weight = lambda_weight;
    round.omega = omega;
    round.l_da = alignment_loss(k_l, round.model.a);
    round.ratio = normalized_ratio(k_l, k_h, round.model.a);
    return round;
}

AdaptationResult finalize(const Matrix& z_s, const Matrix& z_t, Round round,
                          std::vector<double> l_da_per_round, std::vector<double> ratio_per_round,
                          int rounds) {
    round.model.diagnostics.l_da_per_round = l_da_per_round;
    round.model.diagnostics.ratio_per_round = ratio_per_round;
    round.model.diagnostics.rounds = rounds;

    AdaptationResult result;
    result.h_s = z_s * round.model.a;
    result.h_t = z_t * round.model.a;
    result.projection = std::move(round.model);
    result.omega = std::move(round.omega);
    result.l_da_history = std::move(ratio_per_round);
    return result;
}

}  // namespace

AdaptationResult adapt_iterate(const Matrix& z_s, const Matrix& z_t, const AdaptOptions& options) {
    require(z_s.cols() == z_t.cols(), "adapt_iterate: dimension mismatch");
    const int d = static_cast<int>(z_s.cols());
    const int m = options.m > 0 ? options.m : std::min(d, 5);
    require(m <= d, "adapt_iterate: m exceeds homogenized dimension");
    const int n_s = static_cast<int>(z_s.rows());
    const int n_t = static_cast<int>(z_t.rows());
    const int k_s = options.k_source > 0 ? options.k_source : default_cluster_count(n_s);
    const int k_t = options.k_target > 0 ? options.k_target : default_cluster_count(n_t);
    require(options.max_rounds >= 1, "adapt_iterate: max_rounds must be >= 1");

    const auto build_round_omega = [&](const Matrix& view_s,
                                       const Matrix& view_t) -> CorrespondenceSet {
        const Clustering cs = kmedoids_fit(view_s, k_s, 0, options.max_swaps);
        const Clustering ct = kmedoids_fit(view_t, k_t, 0, options.max_swaps);
        const SimilarityMatrix s = similarity_matrix(cs, ct, view_s, view_t, options.tau);
        const ClusterMatching pi = match_clusters(s);
        return build_correspondences(pi, cs, ct, view_s, view_t, s,
                                     options.per_target_neighbors, options.weighted_pairs);
    };

    std::vector<double> l_da_per_round;
    std::vector<double> ratio_per_round;

    Round best = solve_round(z_s, z_t, build_round_omega(z_s, z_t), m, options.gamma,
                             options.lambda_weight);
    l_da_per_round.push_back(best.l_da);
    ratio_per_round.push_back(best.ratio);

    double previous_ratio = best.ratio;
    for (int r = 2; r <= options.max_rounds; ++r) {
        // Recluster in the current latent view, but keep solving for A
        // against the original Z so projections never compound.
        const Matrix latent_s = z_s * best.model.a;
        const Matrix latent_t = z_t * best.model.a;
        Round round = solve_round(z_s, z_t, build_round_omega(latent_s, latent_t), m,
                                  options.gamma, options.lambda_weight);
        l_da_per_round.push_back(round.l_da);
        ratio_per_round.push_back(round.ratio);

        if (round.ratio < best.ratio) {
            best = std::move(round);
        }
        const double improvement =
            previous_ratio > 1e-300 ? (previous_ratio - ratio_per_round.back()) / previous_ratio
                                    : 0.0;
        previous_ratio = ratio_per_round.back();
        if (improvement < options.rel_tol) {
            break;
        }
    }

    const int rounds = static_cast<int>(ratio_per_round.size());
    return finalize(z_s, z_t, std::move(best), std::move(l_da_per_round),
                    std::move(ratio_per_round), rounds);
}

AdaptationResult adapt_fixed_omega(const Matrix& z_s, const Matrix& z_t,
                                   const CorrespondenceSet& omega, const AdaptOptions& options) {
    require(z_s.cols() == z_t.cols(), "adapt_fixed_omega: dimension mismatch");
    const int d = static_cast<int>(z_s.cols());
    const int m = options.m > 0 ? options.m : std::min(d, 5);
    Round round = solve_round(z_s, z_t, omega, m, options.gamma, options.lambda_weight);
    const std::vector<double> l_da{round.l_da};
    const std::vector<double> ratios{round.ratio};
    return finalize(z_s, z_t, std::move(round), l_da, ratios, 1);
}

CorrespondenceSet random_correspondences(int n_s, int n_t, int per_target_neighbors,
                                         std::uint64_t seed) {
    require(n_s >= 1 && n_t >= 1, "random_correspondences: empty domain");
    require(per_target_neighbors >= 1, "random_correspondences: per_target_neighbors >= 1");
    Rng rng(seed);
    CorrespondenceSet omega;
    omega.pairs.reserve(static_cast<std::size_t>(n_t) * per_target_neighbors);
    for (int j = 0; j < n_t; ++j) {
        for (int t = 0; t < per_target_neighbors; ++t) {
            const int i = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n_s)));
            omega.pairs.push_back({i, j, 1.0});
        }
    }
    return omega;
}

}  // namespace ceda
