#include "models/models.hpp"

namespace metastack::detail {

// Multinomial logistic regression on standardized inputs, fitted by
// full-batch gradient descent on mean cross-entropy + ||W||^2 / (2 C n).
void LogisticRegression::fit(const Matrix& x, std::span<const int> y, int n_classes) {
    check_training_input(x, y, n_classes);
    n_classes_ = n_classes;
    scaler_.fit(x);
    const Matrix xs = scaler_.transform(x);
    const std::size_t n = xs.rows(), d = xs.cols(), k = static_cast<std::size_t>(n_classes);

    present_.assign(k, false);
    for (int label : y)
        present_[static_cast<std::size_t>(label)] = true;

    weights_ = Matrix(k, d + 1, 0.0);
    Matrix grad(k, d + 1);
    std::vector<double> z(k);
    const double inv_n = 1.0 / static_cast<double>(n);
    const double reg = 1.0 / (c_ * static_cast<double>(n));

    for (int iter = 0; iter < max_iter_; ++iter) {
        std::fill(grad.data().begin(), grad.data().end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = xs.row(i);
            for (std::size_t c = 0; c < k; ++c) {
                if (!present_[c]) {
                    z[c] = -std::numeric_limits<double>::infinity();
                    continue;
                }
                double acc = weights_(c, d);
                for (std::size_t j = 0; j < d; ++j)
                    acc += weights_(c, j) * row[j];
                z[c] = acc;
            }
            softmax(z);
            for (std::size_t c = 0; c < k; ++c) {
                if (!present_[c])
                    continue;
                const double err = (z[c] - (static_cast<std::size_t>(y[i]) == c ? 1.0 : 0.0)) * inv_n;
                for (std::size_t j = 0; j < d; ++j)
                    grad(c, j) += err * row[j];
                grad(c, d) += err;
            }
        }
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < d; ++j)
                grad(c, j) += reg * weights_(c, j);
        for (std::size_t idx = 0; idx < grad.data().size(); ++idx)
            weights_.data()[idx] -= learning_rate_ * grad.data()[idx];
        check_finite(weights_.data(), "logistic regression");
    }
}

Matrix LogisticRegression::predict_proba(const Matrix& x) const {
    check_width(scaler_.width(), x);
    const Matrix xs = scaler_.transform(x);
    const std::size_t d = xs.cols(), k = static_cast<std::size_t>(n_classes_);
    Matrix out(xs.rows(), k);
    for (std::size_t i = 0; i < xs.rows(); ++i) {
        auto z = out.row(i);
        auto row = xs.row(i);
        for (std::size_t c = 0; c < k; ++c) {
            if (!present_[c]) {
                z[c] = -std::numeric_limits<double>::infinity();
                continue;
            }
            double acc = weights_(c, d);
            for (std::size_t j = 0; j < d; ++j)
                acc += weights_(c, j) * row[j];
            z[c] = acc;
        }
        softmax(z);
    }
    return out;
}

} // namespace metastack::detail
