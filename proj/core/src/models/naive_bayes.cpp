#include "models/models.hpp"

#include <cmath>
#include <numbers>

namespace metastack::detail {

void GaussianNaiveBayes::fit(const Matrix& x, std::span<const int> y, int n_classes) {
    check_training_input(x, y, n_classes);
    n_classes_ = n_classes;
    const std::size_t n = x.rows(), d = x.cols(), k = static_cast<std::size_t>(n_classes);

    // Smoothing is relative to the largest feature variance.
    double max_var = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mean += x(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            var += (x(i, j) - mean) * (x(i, j) - mean);
        max_var = std::max(max_var, var / static_cast<double>(n));
    }
    const double epsilon = std::max(var_smoothing_ * max_var, 1e-12);

    std::vector<double> counts(k, 0.0);
    mean_ = Matrix(k, d, 0.0);
    var_ = Matrix(k, d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(y[i]);
        counts[c] += 1.0;
        for (std::size_t j = 0; j < d; ++j)
            mean_(c, j) += x(i, j);
    }
    for (std::size_t c = 0; c < k; ++c)
        if (counts[c] > 0.0)
            for (std::size_t j = 0; j < d; ++j)
                mean_(c, j) /= counts[c];
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(y[i]);
        for (std::size_t j = 0; j < d; ++j) {
            const double dv = x(i, j) - mean_(c, j);
            var_(c, j) += dv * dv;
        }
    }
    log_prior_.assign(k, -std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t j = 0; j < d; ++j)
            var_(c, j) = (counts[c] > 0.0 ? var_(c, j) / counts[c] : 0.0) + epsilon;
        if (counts[c] > 0.0)
            log_prior_[c] = std::log(counts[c] / static_cast<double>(n));
    }
}

Matrix GaussianNaiveBayes::predict_proba(const Matrix& x) const {
    check_width(mean_.cols(), x);
    const std::size_t k = static_cast<std::size_t>(n_classes_), d = mean_.cols();
    Matrix out(x.rows(), k);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto z = out.row(i);
        for (std::size_t c = 0; c < k; ++c) {
            if (!std::isfinite(log_prior_[c])) {
                z[c] = -std::numeric_limits<double>::infinity();
                continue;
            }
            double ll = log_prior_[c];
            for (std::size_t j = 0; j < d; ++j) {
                const double dv = x(i, j) - mean_(c, j);
                ll -= 0.5 * std::log(2.0 * std::numbers::pi * var_(c, j)) + dv * dv / (2.0 * var_(c, j));
            }
            z[c] = ll;
        }
        softmax(z);
    }
    return out;
}

} // namespace metastack::detail
