#include "models/models.hpp"

#include <algorithm>
#include <numeric>

namespace metastack::detail {

void KNearestNeighbors::fit(const Matrix& x, std::span<const int> y, int n_classes) {
    check_training_input(x, y, n_classes);
    scaler_.fit(x);
    train_ = scaler_.transform(x);
    labels_.assign(y.begin(), y.end());
    n_classes_ = n_classes;
}

Matrix KNearestNeighbors::predict_proba(const Matrix& x) const {
    check_width(scaler_.width(), x);
    const Matrix xs = scaler_.transform(x);
    const std::size_t n = train_.rows(), k = static_cast<std::size_t>(n_classes_);
    const std::size_t neighbors = std::min(static_cast<std::size_t>(k_), n);

    Matrix out(xs.rows(), k, 0.0);
    std::vector<double> dist(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < xs.rows(); ++i) {
        auto q = xs.row(i);
        for (std::size_t t = 0; t < n; ++t) {
            auto r = train_.row(t);
            double acc = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j) {
                const double dv = q[j] - r[j];
                acc += dv * dv;
            }
            dist[t] = std::sqrt(acc);
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(neighbors),
                          order.end(), [&](std::size_t a, std::size_t b) {
                              return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                          });

        auto p = out.row(i);
        // An exact match dominates distance weighting: only zero-distance
        // neighbours vote in that case.
        const bool exact = distance_weighted_ && dist[order[0]] == 0.0;
        double total = 0.0;
        for (std::size_t t = 0; t < neighbors; ++t) {
            const std::size_t idx = order[t];
            double w = 1.0;
            if (distance_weighted_)
                w = exact ? (dist[idx] == 0.0 ? 1.0 : 0.0) : 1.0 / dist[idx];
            p[static_cast<std::size_t>(labels_[idx])] += w;
            total += w;
        }
        for (double& v : p)
            v /= total;
    }
    return out;
}

} // namespace metastack::detail
