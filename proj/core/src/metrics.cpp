#include "metastack/metrics.hpp"

#include "metastack/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace metastack {

std::string_view to_string(Metric metric) {
    switch (metric) {
    case Metric::accuracy: return "accuracy";
    case Metric::balanced_accuracy: return "balanced_accuracy";
    case Metric::precision_macro: return "precision_macro";
    case Metric::recall_macro: return "recall_macro";
    case Metric::f1_macro: return "f1_macro";
    case Metric::roc_auc: return "roc_auc";
    case Metric::geometric_mean: return "geometric_mean";
    case Metric::mcc: return "mcc";
    }
    return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
    for (Metric m : all_metrics)
        if (to_string(m) == name)
            return m;
    struct Alias {
        std::string_view name;
        Metric metric;
    };
    static constexpr Alias aliases[] = {
        {"acc", Metric::accuracy},         {"bal_acc", Metric::balanced_accuracy},
        {"precision", Metric::precision_macro}, {"recall", Metric::recall_macro},
        {"f1", Metric::f1_macro},          {"auc", Metric::roc_auc},
        {"gmean", Metric::geometric_mean},
    };
    for (const auto& a : aliases)
        if (a.name == name)
            return a.metric;
    return std::nullopt;
}

std::optional<double> MetricVector::get(Metric metric) const {
    switch (metric) {
    case Metric::accuracy: return accuracy;
    case Metric::balanced_accuracy: return balanced_accuracy;
    case Metric::precision_macro: return precision_macro;
    case Metric::recall_macro: return recall_macro;
    case Metric::f1_macro: return f1_macro;
    case Metric::roc_auc: return roc_auc;
    case Metric::geometric_mean: return geometric_mean;
    case Metric::mcc: return mcc;
    }
    return std::nullopt;
}

void MetricVector::set(Metric metric, std::optional<double> value) {
    auto required = [&] {
        if (!value)
            throw std::invalid_argument(std::string(to_string(metric)) + " cannot be absent");
        return *value;
    };
    switch (metric) {
    case Metric::accuracy: accuracy = required(); break;
    case Metric::balanced_accuracy: balanced_accuracy = required(); break;
    case Metric::precision_macro: precision_macro = required(); break;
    case Metric::recall_macro: recall_macro = required(); break;
    case Metric::f1_macro: f1_macro = required(); break;
    case Metric::roc_auc: roc_auc = value; break;
    case Metric::geometric_mean: geometric_mean = required(); break;
    case Metric::mcc: mcc = value; break;
    }
}

MetricWeights MetricWeights::equal() {
    MetricWeights w;
    w.weights.fill(1.0);
    return w;
}

MetricWeights MetricWeights::only(Metric metric) {
    MetricWeights w;
    w[metric] = 1.0;
    return w;
}

void MetricWeights::validate() const {
    bool any = false;
    for (double v : weights) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("metric weights must be finite and non-negative");
        any = any || v > 0.0;
    }
    if (!any)
        throw std::invalid_argument("at least one metric weight must be positive");
}

MetricWeights MetricWeights::normalized() const {
    validate();
    double sum = 0.0;
    for (double v : weights)
        sum += v;
    MetricWeights out = *this;
    for (double& v : out.weights)
        v /= sum;
    return out;
}

MetricWeights parse_weights(std::string_view text) {
    MetricWeights w;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        const auto item = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty())
            continue;
        const auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("expected metric:weight, got '" + std::string(item) + "'");
        const auto name = item.substr(0, colon);
        const auto value = item.substr(colon + 1);
        const auto metric = parse_metric(name);
        if (!metric)
            throw UnknownMetric(std::string(name));
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || ptr != value.data() + value.size())
            throw std::invalid_argument("invalid weight for " + std::string(name));
        w[*metric] = v;
    }
    w.validate();
    return w;
}

std::optional<double> rank_auc(std::span<const double> scores, const std::vector<bool>& positive) {
    const std::size_t n = scores.size();
    if (positive.size() != n)
        throw LengthMismatch("scores and positive flags differ in length");
    std::size_t n_pos = 0;
    for (bool p : positive)
        n_pos += p ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        return std::nullopt;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks (1-based) over tie groups.
    double pos_rank_sum = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]])
            ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t)
            if (positive[order[t]])
                pos_rank_sum += avg;
        i = j + 1;
    }
    const double p = static_cast<double>(n_pos), q = static_cast<double>(n_neg);
    const double u = pos_rank_sum - p * (p + 1.0) / 2.0;
    return u / (p * q);
}

MetricVector compute_metrics(std::span<const int> y_true, std::span<const int> y_pred,
                             const Matrix& proba) {
    const std::size_t n = y_true.size();
    if (y_pred.size() != n || proba.rows() != n)
        throw LengthMismatch("y_true, y_pred and proba must have the same length");
    if (n == 0)
        throw LengthMismatch("no instances to score");
    const std::size_t k = proba.cols();
    if (k < 2)
        throw std::invalid_argument("need at least 2 classes");
    for (std::size_t i = 0; i < n; ++i)
        if (y_true[i] < 0 || static_cast<std::size_t>(y_true[i]) >= k || y_pred[i] < 0 ||
            static_cast<std::size_t>(y_pred[i]) >= k)
            throw std::invalid_argument("label outside [0, n_classes)");

    std::vector<double> confusion(k * k, 0.0); // [true][pred]
    for (std::size_t i = 0; i < n; ++i)
        confusion[static_cast<std::size_t>(y_true[i]) * k + static_cast<std::size_t>(y_pred[i])] += 1.0;
    std::vector<double> row_sum(k, 0.0), col_sum(k, 0.0);
    double trace = 0.0;
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t p = 0; p < k; ++p) {
            row_sum[t] += confusion[t * k + p];
            col_sum[p] += confusion[t * k + p];
        }
    for (std::size_t c = 0; c < k; ++c)
        trace += confusion[c * k + c];

    MetricVector m;
    const double total = static_cast<double>(n);
    m.accuracy = trace / total;

    // Macro precision/recall/F1 over classes seen in y_true or y_pred;
    // recall-based summaries over classes seen in y_true.
    double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0, labels_seen = 0.0;
    double recall_sum = 0.0, log_recall = 0.0, true_classes = 0.0;
    bool zero_recall = false;
    for (std::size_t c = 0; c < k; ++c) {
        const double tp = confusion[c * k + c];
        const double precision = col_sum[c] > 0.0 ? tp / col_sum[c] : 0.0;
        const double recall = row_sum[c] > 0.0 ? tp / row_sum[c] : 0.0;
        if (row_sum[c] > 0.0 || col_sum[c] > 0.0) {
            labels_seen += 1.0;
            p_sum += precision;
            r_sum += recall;
            f_sum += precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        }
        if (row_sum[c] > 0.0) {
            true_classes += 1.0;
            recall_sum += recall;
            if (recall == 0.0)
                zero_recall = true;
            else
                log_recall += std::log(recall);
        }
    }
    m.precision_macro = p_sum / labels_seen;
    m.recall_macro = r_sum / labels_seen;
    m.f1_macro = f_sum / labels_seen;
    m.balanced_accuracy = recall_sum / true_classes;
    m.geometric_mean = zero_recall ? 0.0 : std::exp(log_recall / true_classes);
    if (m.geometric_mean > 1.0)
        m.geometric_mean = 1.0;

    if (true_classes < 2.0)
        return m; // roc_auc and mcc undefined

    // Macro one-vs-rest AUC over the classes present in y_true.
    std::vector<double> scores(n);
    std::vector<bool> positive(n);
    double auc_sum = 0.0, auc_count = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        if (row_sum[c] == 0.0)
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = proba(i, c);
            positive[i] = static_cast<std::size_t>(y_true[i]) == c;
        }
        if (auto auc = rank_auc(scores, positive)) {
            auc_sum += *auc;
            auc_count += 1.0;
        }
    }
    if (auc_count > 0.0)
        m.roc_auc = auc_sum / auc_count;

    // Multiclass MCC from the confusion table.
    double pt = 0.0, pp = 0.0, tt = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        pt += col_sum[c] * row_sum[c];
        pp += col_sum[c] * col_sum[c];
        tt += row_sum[c] * row_sum[c];
    }
    const double numerator = trace * total - pt;
    const double denominator = std::sqrt((total * total - pp) * (total * total - tt));
    m.mcc = denominator > 0.0 ? std::clamp(numerator / denominator, -1.0, 1.0) : 0.0;
    return m;
}

double weighted_score(const MetricVector& metrics, const MetricWeights& weights) {
    const MetricWeights unit = weights.normalized();
    double weight_sum = 0.0, acc = 0.0;
    for (Metric metric : all_metrics) {
        const double w = unit[metric];
        const auto value = metrics.get(metric);
        if (w <= 0.0 || !value)
            continue;
        const double term = metric == Metric::mcc ? (*value + 1.0) / 2.0 : *value;
        weight_sum += w;
        acc += w * term;
    }
    if (weight_sum <= 0.0)
        throw AllWeightsZeroAfterExclusion();
    return std::clamp(acc / weight_sum, 0.0, 1.0);
}

} // namespace metastack
