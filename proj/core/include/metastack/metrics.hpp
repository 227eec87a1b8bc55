#pragma once

#include "metastack/matrix.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace metastack {

/// Registry of validation metrics. Order is the canonical reporting order.
enum class Metric {
    accuracy,
    balanced_accuracy,
    precision_macro,
    recall_macro,
    f1_macro,
    roc_auc,
    geometric_mean,
    mcc,
};

inline constexpr std::array<Metric, 8> all_metrics{
    Metric::accuracy,     Metric::balanced_accuracy, Metric::precision_macro,
    Metric::recall_macro, Metric::f1_macro,          Metric::roc_auc,
    Metric::geometric_mean, Metric::mcc,
};

std::string_view to_string(Metric metric);

/// Accepts canonical names and the short aliases acc, bal_acc, precision,
/// recall, f1, auc, gmean.
std::optional<Metric> parse_metric(std::string_view name);

/// Scores of one classifier. roc_auc and mcc are absent when the truth
/// vector holds a single class; absence is never encoded as 0.
struct MetricVector {
    double accuracy = 0.0;
    double balanced_accuracy = 0.0;
    double precision_macro = 0.0;
    double recall_macro = 0.0;
    double f1_macro = 0.0;
    std::optional<double> roc_auc;
    double geometric_mean = 0.0;
    std::optional<double> mcc; ///< in [-1, 1]

    std::optional<double> get(Metric metric) const;
    void set(Metric metric, std::optional<double> value);

    friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

/// Analyst priorities, one non-negative weight per metric.
struct MetricWeights {
    std::array<double, all_metrics.size()> weights{};

    static MetricWeights equal();
    static MetricWeights only(Metric metric);

    double& operator[](Metric m) { return weights[static_cast<std::size_t>(m)]; }
    double operator[](Metric m) const { return weights[static_cast<std::size_t>(m)]; }

    /// Throws std::invalid_argument unless every weight is finite and >= 0
    /// and at least one is > 0.
    void validate() const;

    /// Weights divided by their sum.
    MetricWeights normalized() const;

    friend bool operator==(const MetricWeights&, const MetricWeights&) = default;
};

/// Parses "accuracy:0.5,mcc:0.5". Unlisted metrics get weight 0.
/// Throws UnknownMetric, or std::invalid_argument for malformed pairs or
/// weights that fail validate().
MetricWeights parse_weights(std::string_view text);

/// Computes the full metric suite. `proba` is n x n_classes with rows on
/// the simplex; n_classes is taken from its width.
/// Throws LengthMismatch on inconsistent sizes and std::invalid_argument on
/// out-of-range labels or fewer than 2 classes.
MetricVector compute_metrics(std::span<const int> y_true, std::span<const int> y_pred,
                             const Matrix& proba);

/// One-vs-rest ROC AUC of `scores` for the positive set, via the
/// Mann-Whitney rank statistic (ties count one half). Undefined (nullopt)
/// without both positives and negatives.
std::optional<double> rank_auc(std::span<const double> scores, const std::vector<bool>& positive);

/// Convex combination of the defined metrics, with mcc mapped to
/// (mcc + 1) / 2. Weights of undefined metrics are dropped and the rest
/// renormalized. Throws AllWeightsZeroAfterExclusion.
double weighted_score(const MetricVector& metrics, const MetricWeights& weights);

} // namespace metastack
