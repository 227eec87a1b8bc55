#pragma once

#include "metastack/compare.hpp"
#include "metastack/experiment.hpp"
#include "metastack/store.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace metastack {

// JSON documents shared by the HTTP API and the CLI, so that both emit
// byte-identical output for the same query.

nlohmann::json ranking_view(const ExperimentRecord& record, const MetricWeights& weights);

/// All instances in index order, or only the problematic ones in
/// fraction-wrong order. Throws NoValidResults when the record holds no
/// successful result.
nlohmann::json instances_view(const ExperimentRecord& record, bool problematic_only,
                              const ProblematicCriterion& criterion);

/// Throws UnknownCandidate.
nlohmann::json comparison_view(const ExperimentRecord& record, const std::string& candidate_a,
                               const std::string& candidate_b);

nlohmann::json listing_view(const ExperimentListing& listing);

nlohmann::json error_view(int status, const std::string& code, const std::string& message);

/// Canonical text form: two-space indent plus trailing newline.
std::string render(const nlohmann::json& document);

std::string ranking_csv(const ExperimentRecord& record, const MetricWeights& weights);
std::string comparison_csv(const ExperimentRecord& record, const std::string& candidate_a,
                           const std::string& candidate_b);

/// Shortest round-trip text of a double (the JSON number form).
std::string format_number(double value);

} // namespace metastack
