#include "models/models.hpp"

#include "metastack/hash.hpp"

#include <cmath>

namespace metastack::detail {

void RandomForest::fit(const Matrix& x, std::span<const int> y, int n_classes) {
    check_training_input(x, y, n_classes);
    width_ = x.cols();
    n_classes_ = n_classes;
    const std::size_t n = x.rows(), d = x.cols();

    std::size_t max_features = d;
    if (max_features_ == "sqrt")
        max_features = static_cast<std::size_t>(std::sqrt(static_cast<double>(d)));
    else if (max_features_ == "log2")
        max_features = static_cast<std::size_t>(std::log2(static_cast<double>(d)));
    max_features = std::clamp<std::size_t>(max_features, 1, d);

    trees_.assign(static_cast<std::size_t>(n_estimators_), {});
    std::vector<std::size_t> sample(n);
    for (std::size_t t = 0; t < trees_.size(); ++t) {
        Rng rng(mix_seed(seed_, t));
        for (auto& s : sample)
            s = static_cast<std::size_t>(rng.below(n));
        trees_[t].fit(x, y, n_classes, sample, params_, max_features, &rng);
    }
}

Matrix RandomForest::predict_proba(const Matrix& x) const {
    check_width(width_, x);
    Matrix out(x.rows(), static_cast<std::size_t>(n_classes_), 0.0);
    const double inv = 1.0 / static_cast<double>(trees_.size());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto p = out.row(i);
        for (const auto& tree : trees_) {
            auto dist = tree.predict_row(x.row(i));
            for (std::size_t c = 0; c < p.size(); ++c)
                p[c] += dist[c];
        }
        for (double& v : p)
            v *= inv;
    }
    return out;
}

} // namespace metastack::detail
