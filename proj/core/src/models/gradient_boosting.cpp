#include "models/models.hpp"

#include <cmath>
#include <numeric>

namespace metastack::detail {

// Multiclass gradient boosting on the softmax deviance: one least-squares
// tree per class and stage, leaves set by a single Newton step.
void GradientBoosting::fit(const Matrix& x, std::span<const int> y, int n_classes) {
    check_training_input(x, y, n_classes);
    n_classes_ = n_classes;
    width_ = x.cols();
    const std::size_t n = x.rows(), k = static_cast<std::size_t>(n_classes);

    const auto priors = class_priors(y, n_classes);
    present_.assign(k, false);
    init_.assign(k, -std::numeric_limits<double>::infinity());
    std::size_t n_present = 0;
    for (std::size_t c = 0; c < k; ++c)
        if (priors[c] > 0.0) {
            present_[c] = true;
            init_[c] = std::log(priors[c]);
            ++n_present;
        }
    const double newton_scale = static_cast<double>(n_present - 1) / static_cast<double>(n_present);

    Matrix raw(n, k);
    for (std::size_t i = 0; i < n; ++i)
        std::copy(init_.begin(), init_.end(), raw.row(i).begin());

    const std::size_t sample_size =
        std::max<std::size_t>(1, static_cast<std::size_t>(subsample_ * static_cast<double>(n)));
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    Rng rng(seed_);

    stages_.clear();
    std::vector<double> residual(n);
    Matrix proba(n, k);
    for (int stage = 0; stage < n_estimators_; ++stage) {
        for (std::size_t i = 0; i < n; ++i) {
            auto p = proba.row(i);
            std::copy(raw.row(i).begin(), raw.row(i).end(), p.begin());
            softmax(p);
        }
        std::vector<std::size_t> rows = all;
        if (sample_size < n) {
            rng.shuffle(std::span<std::size_t>(rows));
            rows.resize(sample_size);
            std::sort(rows.begin(), rows.end());
        }

        auto& trees = stages_.emplace_back(k);
        for (std::size_t c = 0; c < k; ++c) {
            if (!present_[c])
                continue;
            for (std::size_t i = 0; i < n; ++i)
                residual[i] = (static_cast<std::size_t>(y[i]) == c ? 1.0 : 0.0) - proba(i, c);
            trees[c].fit(x, residual, rows, max_depth_, 1, [&](std::span<const std::size_t> leaf) {
                double num = 0.0, den = 0.0;
                for (std::size_t r : leaf) {
                    const double a = std::abs(residual[r]);
                    num += residual[r];
                    den += a * (1.0 - a);
                }
                return den < 1e-150 ? 0.0 : newton_scale * num / den;
            });
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < k; ++c)
                if (present_[c])
                    raw(i, c) += learning_rate_ * trees[c].predict_row(x.row(i));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < k; ++c)
                if (present_[c] && !std::isfinite(raw(i, c)))
                    throw std::runtime_error("gradient boosting diverged (non-finite scores)");
    }
}

Matrix GradientBoosting::predict_proba(const Matrix& x) const {
    check_width(width_, x);
    const std::size_t k = static_cast<std::size_t>(n_classes_);
    Matrix out(x.rows(), k);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto z = out.row(i);
        std::copy(init_.begin(), init_.end(), z.begin());
        for (const auto& trees : stages_)
            for (std::size_t c = 0; c < k; ++c)
                if (present_[c])
                    z[c] += learning_rate_ * trees[c].predict_row(x.row(i));
        softmax(z);
    }
    return out;
}

} // namespace metastack::detail
