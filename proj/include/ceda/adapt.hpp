#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ceda/correspondence.hpp"
#include "ceda/types.hpp"

// This header (and the whole adaptation path) accepts plain feature
// matrices only; target ground truth never reaches it.

namespace ceda {

struct ProjectionDiagnostics {
    Vector eigenvalues;                 // eta_1 >= ... >= eta_m
    std::vector<double> l_da_per_round;
    std::vector<double> ratio_per_round;  // L_da / tr(A^T K_H A) per round
    int rounds = 1;
};

/// Latent projection A (d x m) from the generalized eigenproblem
/// K_H a = eta (K_L + gamma I) a, columns normalized so that
/// A^T (K_L + gamma I) A = I, ordered by descending eta.
struct ProjectionModel {
    Matrix a;  // d x m
    int m = 0;
    double gamma = 1.0;
    double lambda_weight = 1.0;  // documentation field; absorbed into gamma
    ProjectionDiagnostics diagnostics;
};

struct AdaptationResult {
    ProjectionModel projection;
    Matrix h_s;  // Z_s * A
    Matrix h_t;  // Z_t * A
    CorrespondenceSet omega;             // pair set of the returned round
    std::vector<double> l_da_history;    // normalized ratio per round
};

/// Builds the alignment matrix pair from a correspondence set:
///   K_L = sum over pairs w (z_i - z_j)(z_i - z_j)^T   (graph-Laplacian form)
///   K_H = total scatter of the stacked rows [Z_s; Z_t]
/// so that tr(A^T K_L A) equals the weighted pairwise alignment loss and
/// tr(A^T K_H A) the captured scatter. Both are symmetric PSD.
std::pair<Matrix, Matrix> build_alignment_matrices(const Matrix& z_s, const Matrix& z_t,
                                                   const CorrespondenceSet& omega);

/// Solves the regularized pencil for the m top generalized eigenvectors.
/// Requires gamma > 0 (the regularizer keeps K_L + gamma I positive
/// definite); every returned eigenpair is residual-checked.
ProjectionModel solve_projection(const Matrix& k_l, const Matrix& k_h, int m, double gamma);

struct AdaptOptions {
    int m = 0;                   // 0 -> min(d, 5)
    double gamma = 1.0;
    double lambda_weight = 1.0;  // kept for config echo; ratio gamma/lambda is what matters
    double tau = 0.0;            // 0 -> median heuristic
    int k_source = 0;            // 0 -> default_cluster_count(n_s)
    int k_target = 0;
    int per_target_neighbors = 1;
    bool weighted_pairs = true;
    int max_rounds = 5;
    double rel_tol = 1e-3;
    int max_swaps = 0;
};

/// Full clustering-guided loop: cluster both domains, match clusters,
/// build the pair set, solve for A; later rounds recluster in the current
/// latent space Z*A while always solving against the original Z. Stops
/// when the normalized alignment ratio improves by less than rel_tol or
/// after max_rounds, and returns the round with the lowest ratio.
AdaptationResult adapt_iterate(const Matrix& z_s, const Matrix& z_t, const AdaptOptions& options);

/// Single solve against a caller-supplied pair set (used by the ablation's
/// random-correspondence arm and by tests).
AdaptationResult adapt_fixed_omega(const Matrix& z_s, const Matrix& z_t,
                                   const CorrespondenceSet& omega, const AdaptOptions& options);

/// Uniformly seeded random pair set with the same shape as the clustered
/// one: every target sample draws `per_target_neighbors` source indices.
CorrespondenceSet random_correspondences(int n_s, int n_t, int per_target_neighbors,
                                         std::uint64_t seed);

}  // namespace ceda
