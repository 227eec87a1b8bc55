#include "models/models.hpp"

#include <numeric>

namespace metastack::detail {

void DecisionTree::fit(const Matrix& x, std::span<const int> y, int n_classes) {
    check_training_input(x, y, n_classes);
    width_ = x.cols();
    n_classes_ = n_classes;
    std::vector<std::size_t> rows(x.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    tree_.fit(x, y, n_classes, rows, params_);
}

Matrix DecisionTree::predict_proba(const Matrix& x) const {
    check_width(width_, x);
    Matrix out(x.rows(), static_cast<std::size_t>(n_classes_));
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto dist = tree_.predict_row(x.row(i));
        std::copy(dist.begin(), dist.end(), out.row(i).begin());
    }
    return out;
}

} // namespace metastack::detail
