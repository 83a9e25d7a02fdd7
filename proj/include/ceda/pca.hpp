#pragma once

#include "ceda/types.hpp"

namespace ceda {

/// Principal-component model fitted on one (standardized) domain.
///
/// `basis` has orthonormal columns; eigenvalues are non-increasing and
/// clamped at zero. Column signs follow a fixed convention (the entry of
/// largest magnitude in each column is positive, lowest index breaking
/// ties) so repeated fits are bit-identical.
struct PcaModel {
    Matrix basis;     // d_orig x d
    Vector mean;      // d_orig
    Vector eigenvalues;               // d, non-increasing
    Vector explained_variance_ratio;  // d, sums to <= 1
    double total_variance = 0.0;      // trace of the covariance
};

/// Fits the top-d eigenvectors of the population covariance of x.
/// Requires 1 <= d <= min(rows - 1, cols).
PcaModel fit_pca(const Matrix& x, int d);

/// Returns (x - mean) * basis; output has d columns.
Matrix project(const PcaModel& model, const Matrix& x);

struct HomogenizedPair {
    Matrix z_s;
    Matrix z_t;
    PcaModel model_s;
    PcaModel model_t;
};

/// Projects both domains into a common d-dimensional space with
/// independently fitted per-domain PCA models.
HomogenizedPair homogenize_pair(const Matrix& source_std, const Matrix& target_std, int d);

/// Smallest dimension whose cumulative explained-variance ratio reaches
/// `threshold` in BOTH domains, capped at min(d_s, d_t) - 1 and at the
/// feasible fit dimensions. Used when the config leaves d automatic.
int choose_shared_dim(const Matrix& source_std, const Matrix& target_std, double threshold);

}  // namespace ceda
