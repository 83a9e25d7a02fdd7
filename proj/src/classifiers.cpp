#include "ceda/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ceda/rng.hpp"

namespace ceda {

namespace {

constexpr double kGnbVarianceFloor = 1e-9;
constexpr int kMaxHalvings = 30;

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    if (z > 0.0) {
        return z + std::log1p(std::exp(-z));
    }
    return std::log1p(std::exp(z));
}

void check_two_classes(const Labels& y) {
    bool has0 = false;
    bool has1 = false;
    for (const int label : y) {
        require(label == 0 || label == 1, "labels must be 0 or 1");
        has0 |= label == 0;
        has1 |= label == 1;
    }
    require(has0 && has1, "training set must contain both classes");
}

}  // namespace

void logistic_loss_grad(const Matrix& x, const Labels& y, const Vector& weights, double bias,
                        double l2, double* loss, Vector* grad_w, double* grad_b) {
    const int n = static_cast<int>(x.rows());
    const double inv_n = 1.0 / static_cast<double>(n);
    double total = 0.0;
    Vector gw = Vector::Zero(x.cols());
    double gb = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = x.row(i).dot(weights) + bias;
        const double label = static_cast<double>(y[static_cast<std::size_t>(i)]);
        total += softplus(z) - label * z;
        const double residual = sigmoid(z) - label;
        gw += residual * x.row(i).transpose();
        gb += residual;
    }
    if (loss) {
        *loss = total * inv_n + 0.5 * l2 * weights.squaredNorm();
    }
    if (grad_w) {
        *grad_w = gw * inv_n + l2 * weights;
    }
    if (grad_b) {
        *grad_b = gb * inv_n;
    }
}

LogisticModel train_logistic(const Matrix& x, const Labels& y, double l2, int epochs, double lr) {
    require(static_cast<int>(y.size()) == x.rows(), "train_logistic: label/row count mismatch");
    require(epochs >= 1 && lr > 0.0, "train_logistic: epochs >= 1 and lr > 0 required");
    require_finite(x, "train_logistic features");
    check_two_classes(y);

    LogisticModel model;
    model.l2 = l2;
    model.weights = Vector::Zero(x.cols());
    model.bias = 0.0;
    model.training_curve.reserve(static_cast<std::size_t>(epochs));

    double loss = 0.0;
    Vector grad_w(x.cols());
    double grad_b = 0.0;
    logistic_loss_grad(x, y, model.weights, model.bias, l2, &loss, &grad_w, &grad_b);
    double step = lr;

    for (int epoch = 0; epoch < epochs; ++epoch) {
        bool accepted = false;
        for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
            const Vector weights = model.weights - step * grad_w;
            const double bias = model.bias - step * grad_b;
            double candidate = 0.0;
            logistic_loss_grad(x, y, weights, bias, l2, &candidate, nullptr, nullptr);
            if (!std::isfinite(candidate)) {
                throw std::runtime_error("train_logistic: non-finite loss");
            }
            if (candidate < loss) {
                model.weights = weights;
                model.bias = bias;
                loss = candidate;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        model.training_curve.push_back(loss);
        if (!accepted) {
            continue;  // keep current parameters; the curve stays flat
        }
        logistic_loss_grad(x, y, model.weights, model.bias, l2, nullptr, &grad_w, &grad_b);
    }
    return model;
}

Vector predict_scores(const LogisticModel& model, const Matrix& x) {
    require(x.cols() == model.weights.size(), "predict_scores(logistic): dimension mismatch");
    Vector scores(x.rows());
    for (int i = 0; i < x.rows(); ++i) {
        scores(i) = sigmoid(x.row(i).dot(model.weights) + model.bias);
    }
    return scores;
}

void mlp_loss_grad(const Matrix& x, const Labels& y, const MlpModel& params, double* loss,
                   MlpModel* grad) {
    const int n = static_cast<int>(x.rows());
    const int hidden = params.hidden;
    const double inv_n = 1.0 / static_cast<double>(n);

    double total = 0.0;
    Matrix gw1 = Matrix::Zero(hidden, params.input);
    Vector gb1 = Vector::Zero(hidden);
    Vector gw2 = Vector::Zero(hidden);
    double gb2 = 0.0;

    Vector activation(hidden);
    for (int i = 0; i < n; ++i) {
        const Vector pre = params.w1 * x.row(i).transpose() + params.b1;
        for (int h = 0; h < hidden; ++h) {
            activation(h) = sigmoid(pre(h));
        }
        const double z = params.w2.dot(activation) + params.b2;
        const double label = static_cast<double>(y[static_cast<std::size_t>(i)]);
        total += softplus(z) - label * z;

        const double delta_out = sigmoid(z) - label;
        gw2 += delta_out * activation;
        gb2 += delta_out;
        const Vector delta_hidden =
            (delta_out * params.w2.array() * activation.array() * (1.0 - activation.array()))
                .matrix();
        gw1.noalias() += delta_hidden * x.row(i);
        gb1 += delta_hidden;
    }

    if (loss) {
        *loss = total * inv_n;
    }
    if (grad) {
        grad->input = params.input;
        grad->hidden = hidden;
        grad->w1 = gw1 * inv_n;
        grad->b1 = gb1 * inv_n;
        grad->w2 = gw2 * inv_n;
        grad->b2 = gb2 * inv_n;
    }
}

MlpModel train_mlp(const Matrix& x, const Labels& y, int hidden, int epochs, double lr,
                   std::uint64_t seed) {
    require(static_cast<int>(y.size()) == x.rows(), "train_mlp: label/row count mismatch");
    require(hidden >= 1, "train_mlp: hidden width must be >= 1");
    require(epochs >= 1 && lr > 0.0, "train_mlp: epochs >= 1 and lr > 0 required");
    require_finite(x, "train_mlp features");
    check_two_classes(y);

    MlpModel model;
    model.input = static_cast<int>(x.cols());
    model.hidden = hidden;
    model.seed = seed;
    model.w1.resize(hidden, model.input);
    model.b1 = Vector::Zero(hidden);
    model.w2.resize(hidden);
    model.b2 = 0.0;

    Rng rng(seed);
    const double r1 = std::sqrt(6.0 / static_cast<double>(model.input + hidden));
    for (int h = 0; h < hidden; ++h) {
        for (int c = 0; c < model.input; ++c) {
            model.w1(h, c) = rng.uniform(-r1, r1);
        }
    }
    const double r2 = std::sqrt(6.0 / static_cast<double>(hidden + 1));
    for (int h = 0; h < hidden; ++h) {
        model.w2(h) = rng.uniform(-r2, r2);
    }

    model.training_curve.reserve(static_cast<std::size_t>(epochs));
    MlpModel grad;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        double loss = 0.0;
        mlp_loss_grad(x, y, model, &loss, &grad);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train_mlp: non-finite loss");
        }
        model.training_curve.push_back(loss);
        model.w1 -= lr * grad.w1;
        model.b1 -= lr * grad.b1;
        model.w2 -= lr * grad.w2;
        model.b2 -= lr * grad.b2;
    }
    return model;
}

Vector predict_scores(const MlpModel& model, const Matrix& x) {
    require(x.cols() == model.input, "predict_scores(mlp): dimension mismatch");
    Vector scores(x.rows());
    Vector activation(model.hidden);
    for (int i = 0; i < x.rows(); ++i) {
        const Vector pre = model.w1 * x.row(i).transpose() + model.b1;
        for (int h = 0; h < model.hidden; ++h) {
            activation(h) = sigmoid(pre(h));
        }
        scores(i) = sigmoid(model.w2.dot(activation) + model.b2);
    }
    return scores;
}

GnbModel fit_gnb(const Matrix& x, const Labels& y) {
    require(static_cast<int>(y.size()) == x.rows(), "fit_gnb: label/row count mismatch");
    require_finite(x, "fit_gnb features");
    check_two_classes(y);

    const int d = static_cast<int>(x.cols());
    GnbModel model;
    model.mean = Matrix::Zero(2, d);
    model.variance = Matrix::Zero(2, d);
    double counts[2] = {0.0, 0.0};
    for (int i = 0; i < x.rows(); ++i) {
        const int c = y[static_cast<std::size_t>(i)];
        counts[c] += 1.0;
        model.mean.row(c) += x.row(i);
    }
    model.mean.row(0) /= counts[0];
    model.mean.row(1) /= counts[1];
    for (int i = 0; i < x.rows(); ++i) {
        const int c = y[static_cast<std::size_t>(i)];
        model.variance.row(c) += (x.row(i) - model.mean.row(c)).array().square().matrix();
    }
    model.variance.row(0) /= counts[0];
    model.variance.row(1) /= counts[1];
    model.variance = model.variance.cwiseMax(kGnbVarianceFloor);
    const double n = counts[0] + counts[1];
    model.log_prior[0] = std::log(counts[0] / n);
    model.log_prior[1] = std::log(counts[1] / n);
    return model;
}

Vector predict_scores(const GnbModel& model, const Matrix& x) {
    require(x.cols() == model.mean.cols(), "predict_scores(gnb): dimension mismatch");
    Vector scores(x.rows());
    for (int i = 0; i < x.rows(); ++i) {
        double log_like[2];
        for (int c = 0; c < 2; ++c) {
            double ll = model.log_prior[c];
            for (int f = 0; f < x.cols(); ++f) {
                const double var = model.variance(c, f);
                const double diff = x(i, f) - model.mean(c, f);
                ll += -0.5 * std::log(2.0 * M_PI * var) - 0.5 * diff * diff / var;
            }
            log_like[c] = ll;
        }
        // Posterior for class 1 in a numerically stable form.
        scores(i) = sigmoid(log_like[1] - log_like[0]);
    }
    return scores;
}

KnnModel fit_knn(const Matrix& x, const Labels& y, int k_neighbors) {
    require(static_cast<int>(y.size()) == x.rows(), "fit_knn: label/row count mismatch");
    require(k_neighbors >= 1 && k_neighbors <= x.rows(),
            "fit_knn: k_neighbors must be in [1, n]");
    require(k_neighbors % 2 == 1, "fit_knn: k_neighbors must be odd");
    require_finite(x, "fit_knn features");
    check_two_classes(y);
    return KnnModel{x, y, k_neighbors};
}

Vector predict_scores(const KnnModel& model, const Matrix& x) {
    require(x.cols() == model.train_features.cols(), "predict_scores(knn): dimension mismatch");
    const int n_train = static_cast<int>(model.train_features.rows());
    Vector scores(x.rows());
    std::vector<std::pair<double, int>> order(static_cast<std::size_t>(n_train));
    for (int i = 0; i < x.rows(); ++i) {
        for (int t = 0; t < n_train; ++t) {
            order[static_cast<std::size_t>(t)] = {
                (x.row(i) - model.train_features.row(t)).squaredNorm(), t};
        }
        std::partial_sort(order.begin(), order.begin() + model.k_neighbors, order.end());
        int malicious = 0;
        for (int t = 0; t < model.k_neighbors; ++t) {
            malicious += model.train_labels[static_cast<std::size_t>(order[t].second)];
        }
        scores(i) = static_cast<double>(malicious) / static_cast<double>(model.k_neighbors);
    }
    return scores;
}

Vector predict_scores(const Classifier& model, const Matrix& x) {
    return std::visit([&x](const auto& m) { return predict_scores(m, x); }, model);
}

Labels labels_from_scores(const Vector& scores) {
    Labels labels(static_cast<std::size_t>(scores.size()));
    for (int i = 0; i < scores.size(); ++i) {
        labels[static_cast<std::size_t>(i)] = scores(i) >= 0.5 ? 1 : 0;
    }
    return labels;
}

}  // namespace ceda
