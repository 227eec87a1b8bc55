#include "metastack/ranking.hpp"

#include "metastack/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace metastack {

std::vector<RankedCandidate> rank_candidates(std::span<const MetamodelResult> results,
                                             const MetricWeights& weights) {
    weights.validate();
    std::vector<RankedCandidate> ranked;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].failed())
            continue;
        ranked.push_back({results[i].candidate.candidate_id, weighted_score(results[i].metrics, weights), i});
    }
    if (ranked.empty())
        throw NoValidResults();
    std::stable_sort(ranked.begin(), ranked.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return a.candidate_id < b.candidate_id;
    });
    return ranked;
}

void ProblematicCriterion::validate() const {
    auto in_range = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_range(min_fraction_wrong) || !in_range(confidence_ceiling))
        throw std::invalid_argument("problematic-instance thresholds must lie in (0, 1]");
}

std::vector<std::string> ProblematicSet::instance_ids() const {
    std::vector<std::string> out;
    out.reserve(instances.size());
    for (const auto& s : instances)
        out.push_back(s.instance_id);
    return out;
}

std::vector<InstanceStatistics> instance_statistics(std::span<const MetamodelResult> results,
                                                    std::span<const std::string> instance_ids) {
    std::vector<const MetamodelResult*> valid;
    for (const auto& r : results)
        if (!r.failed())
            valid.push_back(&r);
    if (valid.empty())
        throw NoValidResults();
    const std::size_t n = instance_ids.size();
    for (const auto* r : valid)
        if (r->correct.size() != n || r->oof_probabilities.rows() != n)
            throw InstanceMismatch("result '" + r->candidate.candidate_id + "' covers " +
                                   std::to_string(r->correct.size()) + " instances, expected " +
                                   std::to_string(n));

    std::vector<InstanceStatistics> stats(n);
    const double m = static_cast<double>(valid.size());
    for (std::size_t i = 0; i < n; ++i) {
        double wrong = 0.0, confidence = 0.0;
        for (const auto* r : valid) {
            wrong += r->correct[i] ? 0.0 : 1.0;
            const auto row = r->oof_probabilities.row(i);
            confidence += *std::max_element(row.begin(), row.end());
        }
        stats[i] = {i, instance_ids[i], wrong / m, confidence / m};
    }
    return stats;
}

ProblematicSet find_problematic(std::span<const MetamodelResult> results,
                                std::span<const std::string> instance_ids,
                                const ProblematicCriterion& criterion) {
    criterion.validate();
    ProblematicSet set;
    set.criterion = criterion;
    for (auto& s : instance_statistics(results, instance_ids))
        if (s.fraction_wrong >= criterion.min_fraction_wrong ||
            s.mean_confidence <= criterion.confidence_ceiling)
            set.instances.push_back(std::move(s));
    std::stable_sort(set.instances.begin(), set.instances.end(),
                     [](const InstanceStatistics& a, const InstanceStatistics& b) {
                         return a.fraction_wrong > b.fraction_wrong;
                     });
    return set;
}

} // namespace metastack
