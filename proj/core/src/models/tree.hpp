#pragma once

#include "metastack/matrix.hpp"
#include "metastack/random.hpp"

#include <functional>
#include <span>
#include <vector>

namespace metastack::detail {

struct TreeParams {
    int max_depth = 32;
    int min_samples_leaf = 1;
    bool entropy = false;
};

struct TreeNode {
    int feature = -1; ///< -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> value; ///< class distribution, or {leaf value} for regression
};

/// CART classification tree. Rows may repeat (bootstrap samples).
/// Splits are searched feature by feature in index order; the first split
/// reaching the best impurity decrease wins, so fits are deterministic.
class ClassificationTree {
public:
    /// `max_features` == 0 or >= n_features searches every feature; otherwise
    /// a fresh random subset of that size is drawn from `rng` at every node.
    void fit(const Matrix& x, std::span<const int> y, int n_classes,
             std::span<const std::size_t> rows, const TreeParams& params,
             std::size_t max_features = 0, Rng* rng = nullptr);

    std::span<const double> predict_row(std::span<const double> row) const;

    std::size_t node_count() const noexcept { return nodes_.size(); }
    int depth() const;

private:
    std::vector<TreeNode> nodes_;
};

/// Least-squares regression tree used as the boosting weak learner. Leaf
/// values are supplied by a callback so the caller can apply a Newton step.
class RegressionTree {
public:
    using LeafValue = std::function<double(std::span<const std::size_t> rows)>;

    void fit(const Matrix& x, std::span<const double> target, std::span<const std::size_t> rows,
             int max_depth, int min_samples_leaf, const LeafValue& leaf_value);

    double predict_row(std::span<const double> row) const;

private:
    std::vector<TreeNode> nodes_;
};

} // namespace metastack::detail
