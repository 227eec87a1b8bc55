#include "metastack/compare.hpp"

#include "metastack/errors.hpp"

#include <algorithm>
#include <cmath>

namespace metastack {

namespace {

double max_probability(const Matrix& proba, std::size_t row) {
    const auto r = proba.row(row);
    return *std::max_element(r.begin(), r.end());
}

} // namespace

PairComparison compare_pair(const MetamodelResult& a, const MetamodelResult& b,
                            std::span<const int> labels, std::span<const std::string> instance_ids) {
    if (a.failed() || b.failed())
        throw InstanceMismatch("cannot compare a failed candidate");
    const std::size_t n = labels.size();
    auto covers = [n](const MetamodelResult& r) {
        return r.predicted_labels.size() == n && r.correct.size() == n && r.oof_probabilities.rows() == n;
    };
    if (!covers(a) || !covers(b) || instance_ids.size() != n)
        throw InstanceMismatch("results were not evaluated on the same " + std::to_string(n) + " instances");

    PairComparison pc;
    pc.candidate_a = a.candidate.candidate_id;
    pc.candidate_b = b.candidate.candidate_id;
    pc.per_instance.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool ca = a.correct[i], cb = b.correct[i];
        if (ca && cb)
            ++pc.agreement.both_correct;
        else if (ca)
            ++pc.agreement.only_a;
        else if (cb)
            ++pc.agreement.only_b;
        else
            ++pc.agreement.both_wrong;

        InstanceDelta d;
        d.instance_id = instance_ids[i];
        d.label = labels[i];
        d.pred_a = a.predicted_labels[i];
        d.pred_b = b.predicted_labels[i];
        d.maxproba_a = max_probability(a.oof_probabilities, i);
        d.maxproba_b = max_probability(b.oof_probabilities, i);
        d.delta = d.maxproba_a - d.maxproba_b;
        pc.per_instance.push_back(std::move(d));
    }
    std::stable_sort(pc.per_instance.begin(), pc.per_instance.end(),
                     [](const InstanceDelta& l, const InstanceDelta& r) {
                         const double al = std::abs(l.delta), ar = std::abs(r.delta);
                         if (al != ar)
                             return al > ar;
                         return l.instance_id < r.instance_id;
                     });

    for (std::size_t m = 0; m < all_metrics.size(); ++m) {
        const auto va = a.metrics.get(all_metrics[m]);
        const auto vb = b.metrics.get(all_metrics[m]);
        if (va && vb)
            pc.metric_delta[m] = *va - *vb;
    }
    return pc;
}

std::vector<std::string> disagreement_instances(const PairComparison& pc) {
    std::vector<std::string> out;
    for (const auto& d : pc.per_instance)
        if (d.pred_a != d.pred_b)
            out.push_back(d.instance_id);
    return out;
}

nlohmann::json to_json(const PairComparison& pc) {
    nlohmann::json per_instance = nlohmann::json::array();
    for (const auto& d : pc.per_instance)
        per_instance.push_back({{"instance_id", d.instance_id},
                                {"label", d.label},
                                {"pred_a", d.pred_a},
                                {"pred_b", d.pred_b},
                                {"maxproba_a", d.maxproba_a},
                                {"maxproba_b", d.maxproba_b},
                                {"delta", d.delta}});
    nlohmann::json metric_delta = nlohmann::json::object();
    for (std::size_t m = 0; m < all_metrics.size(); ++m) {
        const auto& v = pc.metric_delta[m];
        metric_delta[std::string(to_string(all_metrics[m]))] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    }
    return {{"candidate_a", pc.candidate_a},
            {"candidate_b", pc.candidate_b},
            {"agreement",
             {{"both_correct", pc.agreement.both_correct},
              {"only_a", pc.agreement.only_a},
              {"only_b", pc.agreement.only_b},
              {"both_wrong", pc.agreement.both_wrong}}},
            {"per_instance", std::move(per_instance)},
            {"metric_delta", std::move(metric_delta)},
            {"disagreements", disagreement_instances(pc)}};
}

} // namespace metastack
