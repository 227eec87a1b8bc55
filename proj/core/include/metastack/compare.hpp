#pragma once

#include "metastack/metrics.hpp"
#include "metastack/results.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace metastack {

struct AgreementTable {
    std::size_t both_correct = 0;
    std::size_t only_a = 0;
    std::size_t only_b = 0;
    std::size_t both_wrong = 0;

    std::size_t total() const noexcept { return both_correct + only_a + only_b + both_wrong; }

    friend bool operator==(const AgreementTable&, const AgreementTable&) = default;
};

struct InstanceDelta {
    std::string instance_id;
    int label = 0;
    int pred_a = 0;
    int pred_b = 0;
    double maxproba_a = 0.0;
    double maxproba_b = 0.0;
    double delta = 0.0; ///< maxproba_a - maxproba_b

    friend bool operator==(const InstanceDelta&, const InstanceDelta&) = default;
};

/// Head-to-head view of two metamodels evaluated on the same instances.
struct PairComparison {
    std::string candidate_a;
    std::string candidate_b;
    AgreementTable agreement;
    std::vector<InstanceDelta> per_instance; ///< |delta| descending, then instance_id
    /// a - b per metric; absent where either side is undefined.
    std::array<std::optional<double>, all_metrics.size()> metric_delta{};

    friend bool operator==(const PairComparison&, const PairComparison&) = default;
};

/// Throws InstanceMismatch if the results, labels and ids do not line up,
/// or if either result is a failure.
PairComparison compare_pair(const MetamodelResult& a, const MetamodelResult& b,
                            std::span<const int> labels, std::span<const std::string> instance_ids);

/// Instances where the two metamodels predict different labels, in
/// per_instance order.
std::vector<std::string> disagreement_instances(const PairComparison& pc);

nlohmann::json to_json(const PairComparison& pc);

} // namespace metastack
