#pragma once

#include "metastack/metrics.hpp"
#include "metastack/results.hpp"

#include <span>
#include <string>
#include <vector>

namespace metastack {

struct RankedCandidate {
    std::string candidate_id;
    double score = 0.0;
    std::size_t result_index = 0; ///< position in the input list

    friend bool operator==(const RankedCandidate&, const RankedCandidate&) = default;
};

/// Orders non-failed results by weighted score, descending; equal scores
/// are ordered by ascending candidate_id. Throws NoValidResults.
std::vector<RankedCandidate> rank_candidates(std::span<const MetamodelResult> results,
                                             const MetricWeights& weights);

struct ProblematicCriterion {
    double min_fraction_wrong = 0.5;
    double confidence_ceiling = 0.55;

    /// Throws std::invalid_argument unless both fields lie in (0, 1].
    void validate() const;

    friend bool operator==(const ProblematicCriterion&, const ProblematicCriterion&) = default;
};

struct InstanceStatistics {
    std::size_t index = 0;
    std::string instance_id;
    double fraction_wrong = 0.0;  ///< share of metamodels misclassifying the instance
    double mean_confidence = 0.0; ///< mean max-class probability across metamodels
};

struct ProblematicSet {
    std::vector<InstanceStatistics> instances; ///< fraction_wrong descending, then index
    ProblematicCriterion criterion;

    std::vector<std::string> instance_ids() const;
};

/// Per-instance agreement statistics over the non-failed results, in
/// instance order. Throws NoValidResults or InstanceMismatch.
std::vector<InstanceStatistics> instance_statistics(std::span<const MetamodelResult> results,
                                                    std::span<const std::string> instance_ids);

/// Instances misclassified by at least `min_fraction_wrong` of the
/// metamodels, or whose mean max-class probability is at most
/// `confidence_ceiling`.
ProblematicSet find_problematic(std::span<const MetamodelResult> results,
                                std::span<const std::string> instance_ids,
                                const ProblematicCriterion& criterion);

} // namespace metastack
