#include "metastack/errors.hpp"

namespace metastack {

FileNotFound::FileNotFound(const std::string& path)
    : Error("file_not_found", "file not found: " + path) {}

MissingTargetColumn::MissingTargetColumn(const std::string& column)
    : Error("missing_target", "target column not found: '" + column + "'") {}

SingleClassDataset::SingleClassDataset(const std::string& detail)
    : Error("single_class_dataset", "fewer than 2 distinct labels: " + detail) {}

EmptyDataset::EmptyDataset(const std::string& detail)
    : Error("empty_dataset", "empty dataset: " + detail) {}

MalformedInput::MalformedInput(const std::string& detail)
    : Error("malformed_input", detail) {}

KTooLarge::KTooLarge(int k, int smallest_class)
    : Error("k_too_large", "k=" + std::to_string(k) + " exceeds smallest class count " +
                               std::to_string(smallest_class)) {}

KTooSmall::KTooSmall(int k)
    : Error("k_too_small", "k=" + std::to_string(k) + " must be at least 2") {}

ModelTrainingFailure::ModelTrainingFailure(const std::string& model_id, const std::string& cause)
    : Error("model_training_failure", "model '" + model_id + "' failed to train: " + cause),
      model_id_(model_id), cause_(cause) {}

ShapeMismatch::ShapeMismatch(const std::string& detail)
    : Error("shape_mismatch", detail) {}

EmptyGrid::EmptyGrid() : Error("empty_grid", "metamodel grid is empty") {}

InvalidHyperparameter::InvalidHyperparameter(const std::string& algorithm,
                                             const std::string& name,
                                             const std::string& detail)
    : Error("invalid_hyperparameter",
            "invalid hyperparameter '" + name + "' for " + algorithm + ": " + detail) {}

LengthMismatch::LengthMismatch(const std::string& detail)
    : Error("length_mismatch", detail) {}

AllWeightsZeroAfterExclusion::AllWeightsZeroAfterExclusion()
    : Error("all_weights_zero", "no positive weight remains on a defined metric") {}

NoValidResults::NoValidResults()
    : Error("no_valid_results", "no successfully evaluated metamodel to rank") {}

InstanceMismatch::InstanceMismatch(const std::string& detail)
    : Error("instance_mismatch", detail) {}

UnknownMetric::UnknownMetric(const std::string& name)
    : Error("unknown_metric", "unknown metric: '" + name + "'") {}

UnknownCandidate::UnknownCandidate(const std::string& candidate_id)
    : Error("unknown_candidate", "unknown candidate: '" + candidate_id + "'") {}

IOFailure::IOFailure(const std::string& detail) : Error("io_failure", detail) {}

DuplicateExperiment::DuplicateExperiment(const std::string& experiment_id)
    : Error("duplicate_experiment", "experiment already exists: " + experiment_id) {}

SchemaValidationError::SchemaValidationError(const std::string& detail)
    : Error("schema_validation_error", detail) {}

ExperimentNotFound::ExperimentNotFound(const std::string& experiment_id)
    : Error("not_found", "experiment not found: " + experiment_id) {}

} // namespace metastack
