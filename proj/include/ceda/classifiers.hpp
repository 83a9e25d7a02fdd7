#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "ceda/types.hpp"

namespace ceda {

/// Binary logistic regression trained by full-batch gradient descent with
/// per-epoch step halving; deterministic (zero initialization).
struct LogisticModel {
    Vector weights;
    double bias = 0.0;
    double l2 = 0.0;
    std::vector<double> training_curve;  // non-increasing accepted losses
};

/// Three-layer perceptron (input, one sigmoid hidden layer, sigmoid
/// output), trained by full-batch gradient descent; deterministic per seed.
struct MlpModel {
    int input = 0;
    int hidden = 0;
    Matrix w1;   // hidden x input
    Vector b1;   // hidden
    Vector w2;   // hidden
    double b2 = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> training_curve;
};

/// Gaussian naive Bayes with per-feature per-class variance floored at 1e-9.
struct GnbModel {
    double log_prior[2] = {0.0, 0.0};
    Matrix mean;      // 2 x d
    Matrix variance;  // 2 x d, >= floor
};

struct KnnModel {
    Matrix train_features;
    Labels train_labels;
    int k_neighbors = 5;
};

LogisticModel train_logistic(const Matrix& x, const Labels& y, double l2, int epochs, double lr);

MlpModel train_mlp(const Matrix& x, const Labels& y, int hidden, int epochs, double lr,
                   std::uint64_t seed);

GnbModel fit_gnb(const Matrix& x, const Labels& y);

/// k_neighbors must be odd (tie avoidance) and <= n.
KnnModel fit_knn(const Matrix& x, const Labels& y, int k_neighbors);

Vector predict_scores(const LogisticModel& model, const Matrix& x);
Vector predict_scores(const MlpModel& model, const Matrix& x);
Vector predict_scores(const GnbModel& model, const Matrix& x);
Vector predict_scores(const KnnModel& model, const Matrix& x);

using Classifier = std::variant<LogisticModel, MlpModel, GnbModel, KnnModel>;

Vector predict_scores(const Classifier& model, const Matrix& x);

/// The single thresholding rule shared by every classifier: label = score >= 0.5.
Labels labels_from_scores(const Vector& scores);

/// Gradient of the regularized mean logistic loss at (weights, bias);
/// exposed for the finite-difference checks.
void logistic_loss_grad(const Matrix& x, const Labels& y, const Vector& weights, double bias,
                        double l2, double* loss, Vector* grad_w, double* grad_b);

/// Loss and full parameter gradient of the MLP at the given parameters;
/// exposed for the finite-difference checks.
void mlp_loss_grad(const Matrix& x, const Labels& y, const MlpModel& params, double* loss,
                   MlpModel* grad);

}  // namespace ceda
