#include "models/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace metastack::detail {

namespace {

double impurity(std::span<const double> counts, double total, bool entropy) {
    if (total <= 0.0)
        return 0.0;
    double acc = 0.0;
    if (entropy) {
        for (double c : counts)
            if (c > 0.0) {
                const double p = c / total;
                acc -= p * std::log2(p);
            }
        return acc;
    }
    for (double c : counts) {
        const double p = c / total;
        acc += p * p;
    }
    return 1.0 - acc;
}

double split_threshold(double lo, double hi) {
    const double mid = lo + (hi - lo) / 2.0;
    return mid >= hi ? lo : mid;
}

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

/// Rows sorted by the value of one feature, ties by row index.
void sort_by_feature(const Matrix& x, std::size_t f, std::vector<std::size_t>& rows) {
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
        const double va = x(a, f), vb = x(b, f);
        return va < vb || (va == vb && a < b);
    });
}

std::vector<std::size_t> candidate_features(std::size_t d, std::size_t max_features, Rng* rng) {
    std::vector<std::size_t> features(d);
    std::iota(features.begin(), features.end(), std::size_t{0});
    if (max_features == 0 || max_features >= d || rng == nullptr)
        return features;
    for (std::size_t i = 0; i < max_features; ++i) {
        const auto j = i + static_cast<std::size_t>(rng->below(d - i));
        std::swap(features[i], features[j]);
    }
    features.resize(max_features);
    std::sort(features.begin(), features.end());
    return features;
}

int subtree_depth(const std::vector<TreeNode>& nodes, int idx) {
    const auto& n = nodes[static_cast<std::size_t>(idx)];
    if (n.feature < 0)
        return 0;
    return 1 + std::max(subtree_depth(nodes, n.left), subtree_depth(nodes, n.right));
}

} // namespace

void ClassificationTree::fit(const Matrix& x, std::span<const int> y, int n_classes,
                             std::span<const std::size_t> rows, const TreeParams& params,
                             std::size_t max_features, Rng* rng) {
    nodes_.clear();
    const auto k = static_cast<std::size_t>(n_classes);
    const std::size_t min_leaf = static_cast<std::size_t>(std::max(1, params.min_samples_leaf));

    struct Frame {
        int node;
        std::vector<std::size_t> rows;
        int depth;
    };
    std::vector<Frame> stack;
    nodes_.emplace_back();
    stack.push_back({0, std::vector<std::size_t>(rows.begin(), rows.end()), 0});

    std::vector<double> left(k), right(k);
    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        auto& members = frame.rows;
        const std::size_t m = members.size();

        std::vector<double> counts(k, 0.0);
        for (std::size_t r : members)
            counts[static_cast<std::size_t>(y[r])] += 1.0;
        const double total = static_cast<double>(m);
        const double parent = impurity(counts, total, params.entropy);

        {
            auto& node = nodes_[static_cast<std::size_t>(frame.node)];
            node.value.resize(k);
            for (std::size_t c = 0; c < k; ++c)
                node.value[c] = total > 0.0 ? counts[c] / total : 1.0 / static_cast<double>(k);
        }

        if (frame.depth >= params.max_depth || m < 2 * min_leaf || parent <= 0.0)
            continue;

        Split best;
        for (std::size_t f : candidate_features(x.cols(), max_features, rng)) {
            sort_by_feature(x, f, members);
            std::fill(left.begin(), left.end(), 0.0);
            right = counts;
            for (std::size_t i = 0; i + 1 < m; ++i) {
                const auto cls = static_cast<std::size_t>(y[members[i]]);
                left[cls] += 1.0;
                right[cls] -= 1.0;
                const double lo = x(members[i], f), hi = x(members[i + 1], f);
                if (lo == hi)
                    continue;
                const std::size_t nl = i + 1, nr = m - nl;
                if (nl < min_leaf || nr < min_leaf)
                    continue;
                const double dl = static_cast<double>(nl), dr = static_cast<double>(nr);
                const double child = (dl * impurity(left, dl, params.entropy) +
                                      dr * impurity(right, dr, params.entropy)) / total;
                const double gain = parent - child;
                if (gain > best.gain + 1e-12) {
                    best = {static_cast<int>(f), split_threshold(lo, hi), gain};
                }
            }
        }
        if (best.feature < 0)
            continue;

        std::vector<std::size_t> lrows, rrows;
        const auto bf = static_cast<std::size_t>(best.feature);
        for (std::size_t r : members)
            (x(r, bf) <= best.threshold ? lrows : rrows).push_back(r);

        const int li = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        const int ri = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        auto& node = nodes_[static_cast<std::size_t>(frame.node)];
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = li;
        node.right = ri;
        // Right first so the left subtree is expanded first (stable node numbering).
        stack.push_back({ri, std::move(rrows), frame.depth + 1});
        stack.push_back({li, std::move(lrows), frame.depth + 1});
    }
}

std::span<const double> ClassificationTree::predict_row(std::span<const double> row) const {
    std::size_t idx = 0;
    while (nodes_[idx].feature >= 0) {
        const auto& n = nodes_[idx];
        idx = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                             : n.right);
    }
    return nodes_[idx].value;
}

int ClassificationTree::depth() const {
    return nodes_.empty() ? 0 : subtree_depth(nodes_, 0);
}

void RegressionTree::fit(const Matrix& x, std::span<const double> target,
                         std::span<const std::size_t> rows, int max_depth, int min_samples_leaf,
                         const LeafValue& leaf_value) {
    nodes_.clear();
    const std::size_t min_leaf = static_cast<std::size_t>(std::max(1, min_samples_leaf));
    struct Frame {
        int node;
        std::vector<std::size_t> rows;
        int depth;
    };
    std::vector<Frame> stack;
    nodes_.emplace_back();
    stack.push_back({0, std::vector<std::size_t>(rows.begin(), rows.end()), 0});

    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        auto& members = frame.rows;
        const std::size_t m = members.size();

        double sum = 0.0;
        for (std::size_t r : members)
            sum += target[r];
        const double total = static_cast<double>(m);

        Split best;
        if (frame.depth < max_depth && m >= 2 * min_leaf) {
            const double parent_score = total > 0.0 ? sum * sum / total : 0.0;
            for (std::size_t f = 0; f < x.cols(); ++f) {
                sort_by_feature(x, f, members);
                double sl = 0.0;
                for (std::size_t i = 0; i + 1 < m; ++i) {
                    sl += target[members[i]];
                    const double lo = x(members[i], f), hi = x(members[i + 1], f);
                    if (lo == hi)
                        continue;
                    const std::size_t nl = i + 1, nr = m - nl;
                    if (nl < min_leaf || nr < min_leaf)
                        continue;
                    const double sr = sum - sl;
                    const double gain = sl * sl / static_cast<double>(nl) +
                                        sr * sr / static_cast<double>(nr) - parent_score;
                    if (gain > best.gain + 1e-12)
                        best = {static_cast<int>(f), split_threshold(lo, hi), gain};
                }
            }
        }

        if (best.feature < 0) {
            std::sort(members.begin(), members.end());
            nodes_[static_cast<std::size_t>(frame.node)].value = {leaf_value(members)};
            continue;
        }

        std::vector<std::size_t> lrows, rrows;
        const auto bf = static_cast<std::size_t>(best.feature);
        for (std::size_t r : members)
            (x(r, bf) <= best.threshold ? lrows : rrows).push_back(r);
        const int li = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        const int ri = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        auto& node = nodes_[static_cast<std::size_t>(frame.node)];
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = li;
        node.right = ri;
        stack.push_back({ri, std::move(rrows), frame.depth + 1});
        stack.push_back({li, std::move(lrows), frame.depth + 1});
    }
}

double RegressionTree::predict_row(std::span<const double> row) const {
    std::size_t idx = 0;
    while (nodes_[idx].feature >= 0) {
        const auto& n = nodes_[idx];
        idx = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                             : n.right);
    }
    return nodes_[idx].value.front();
}

} // namespace metastack::detail
