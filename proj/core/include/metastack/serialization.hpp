#pragma once

#include "metastack/experiment.hpp"

#include <nlohmann/json.hpp>

namespace metastack {

// Experiment config (the file accepted by `metastack run` and POST /experiments).

/// Parses an experiment config. Omitted base-model seeds are derived from
/// (model_id, seed). Throws ConfigError ("missing_target" when
/// target_column is absent, "invalid_config" otherwise), EmptyGrid,
/// UnknownMetric or InvalidHyperparameter.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const MetricVector& m);
nlohmann::json to_json(const MetricWeights& w);
nlohmann::json to_json(const MetamodelCandidate& c);
nlohmann::json to_json(const MetamodelResult& r);
nlohmann::json to_json(const DatasetSummary& s);

/// Schema v1 record document.
nlohmann::json to_json(const ExperimentRecord& record);

/// Inverse of to_json(ExperimentRecord). Throws SchemaValidationError on
/// any structural problem or an unsupported schema_version.
ExperimentRecord record_from_json(const nlohmann::json& j);

/// Record without created_at and fit_seconds, for determinism checks.
nlohmann::json stable_json(const ExperimentRecord& record);

} // namespace metastack
