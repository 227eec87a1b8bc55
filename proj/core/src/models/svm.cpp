#include "models/models.hpp"

#include <cmath>
#include <numeric>

namespace metastack::detail {

double SupportVectorMachine::kernel(std::span<const double> a, std::span<const double> b) const {
    double acc = 0.0;
    if (rbf_) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double dv = a[j] - b[j];
            acc += dv * dv;
        }
        return std::exp(-effective_gamma_ * acc);
    }
    for (std::size_t j = 0; j < a.size(); ++j)
        acc += a[j] * b[j];
    return acc;
}

// Hinge-loss dual coordinate descent per class (one-vs-rest). The bias is
// absorbed by adding 1 to the kernel.
void SupportVectorMachine::fit(const Matrix& x, std::span<const int> y, int n_classes) {
    check_training_input(x, y, n_classes);
    n_classes_ = n_classes;
    scaler_.fit(x);
    support_ = scaler_.transform(x);
    const std::size_t n = support_.rows(), d = support_.cols(), k = static_cast<std::size_t>(n_classes);

    if (gamma_ > 0.0) {
        effective_gamma_ = gamma_;
    } else {
        double mean = 0.0;
        for (double v : support_.data())
            mean += v;
        mean /= static_cast<double>(support_.data().size());
        double var = 0.0;
        for (double v : support_.data())
            var += (v - mean) * (v - mean);
        var /= static_cast<double>(support_.data().size());
        effective_gamma_ = 1.0 / (static_cast<double>(d) * (var > 0.0 ? var : 1.0));
    }

    Matrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            q(i, j) = q(j, i) = kernel(support_.row(i), support_.row(j)) + 1.0;

    present_.assign(k, false);
    for (int label : y)
        present_[static_cast<std::size_t>(label)] = true;

    dual_coef_ = Matrix(k, n, 0.0);
    Rng rng(seed_);
    std::vector<std::size_t> order(n);
    std::vector<double> alpha(n), g(n), sign(n);
    for (std::size_t c = 0; c < k; ++c) {
        if (!present_[c])
            continue;
        for (std::size_t i = 0; i < n; ++i)
            sign[i] = static_cast<std::size_t>(y[i]) == c ? 1.0 : -1.0;
        std::fill(alpha.begin(), alpha.end(), 0.0);
        std::fill(g.begin(), g.end(), 0.0);
        std::iota(order.begin(), order.end(), std::size_t{0});

        for (int pass = 0; pass < max_iter_; ++pass) {
            rng.shuffle(std::span<std::size_t>(order));
            double max_violation = 0.0;
            for (std::size_t i : order) {
                const double grad = sign[i] * g[i] - 1.0;
                double projected = grad;
                if (alpha[i] <= 0.0)
                    projected = std::min(grad, 0.0);
                else if (alpha[i] >= c_)
                    projected = std::max(grad, 0.0);
                max_violation = std::max(max_violation, std::abs(projected));
                if (std::abs(projected) < 1e-12)
                    continue;
                const double updated = std::clamp(alpha[i] - grad / q(i, i), 0.0, c_);
                const double delta = (updated - alpha[i]) * sign[i];
                alpha[i] = updated;
                if (delta != 0.0)
                    for (std::size_t j = 0; j < n; ++j)
                        g[j] += delta * q(i, j);
            }
            if (max_violation < 1e-3)
                break;
        }
        for (std::size_t i = 0; i < n; ++i)
            dual_coef_(c, i) = alpha[i] * sign[i];
        check_finite(dual_coef_.row(c), "support vector machine");
    }
}

Matrix SupportVectorMachine::decision_function(const Matrix& x) const {
    check_width(scaler_.width(), x);
    const Matrix xs = scaler_.transform(x);
    const std::size_t k = static_cast<std::size_t>(n_classes_);
    Matrix out(xs.rows(), k, -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < xs.rows(); ++r) {
        std::vector<double> kv(support_.rows());
        for (std::size_t i = 0; i < support_.rows(); ++i)
            kv[i] = kernel(support_.row(i), xs.row(r)) + 1.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (!present_[c])
                continue;
            double acc = 0.0;
            for (std::size_t i = 0; i < kv.size(); ++i)
                acc += dual_coef_(c, i) * kv[i];
            out(r, c) = acc;
        }
    }
    return out;
}

Matrix SupportVectorMachine::predict_proba(const Matrix& x) const {
    const Matrix scores = decision_function(x);
    Matrix out(scores.rows(), scores.cols(), 0.0);
    const auto labels = argmax_rows(scores);
    for (std::size_t r = 0; r < labels.size(); ++r)
        out(r, static_cast<std::size_t>(labels[r])) = 1.0;
    return out;
}

} // namespace metastack::detail
