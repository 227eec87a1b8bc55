#pragma once

#include "metastack/hyperparameters.hpp"
#include "metastack/matrix.hpp"
#include "metastack/metrics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace metastack {

struct MetamodelCandidate {
    std::string candidate_id;
    Algorithm algorithm = Algorithm::logistic_regression;
    Hyperparameters hyperparameters;
    std::int64_t seed = 0;

    friend bool operator==(const MetamodelCandidate&, const MetamodelCandidate&) = default;
};

struct MetamodelResult {
    MetamodelCandidate candidate;
    Matrix oof_probabilities; ///< n_instances x n_classes
    std::vector<int> predicted_labels;
    std::vector<bool> correct;
    MetricVector metrics;
    double fit_seconds = 0.0;
    /// Set when the candidate could not be trained; such results carry no
    /// predictions and are never ranked.
    std::optional<std::string> failure;

    bool failed() const noexcept { return failure.has_value(); }

    friend bool operator==(const MetamodelResult&, const MetamodelResult&) = default;
};

} // namespace metastack
