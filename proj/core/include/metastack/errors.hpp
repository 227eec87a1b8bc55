#pragma once

#include <stdexcept>
#include <string>

namespace metastack {

/// Base of every error raised by the library. `code()` is a stable machine
/// string used by the HTTP layer and the CLI exit-code mapping.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// dataset
class FileNotFound : public Error {
public:
    explicit FileNotFound(const std::string& path);
};
class MissingTargetColumn : public Error {
public:
    explicit MissingTargetColumn(const std::string& column);
};
class SingleClassDataset : public Error {
public:
    explicit SingleClassDataset(const std::string& detail);
};
class EmptyDataset : public Error {
public:
    explicit EmptyDataset(const std::string& detail);
};
class MalformedInput : public Error {
public:
    explicit MalformedInput(const std::string& detail);
};
class KTooLarge : public Error {
public:
    KTooLarge(int k, int smallest_class);
};
class KTooSmall : public Error {
public:
    explicit KTooSmall(int k);
};

// models / ensemble / metamodels
class ModelTrainingFailure : public Error {
public:
    ModelTrainingFailure(const std::string& model_id, const std::string& cause);
    const std::string& model_id() const noexcept { return model_id_; }
    const std::string& cause() const noexcept { return cause_; }

private:
    std::string model_id_;
    std::string cause_;
};
class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& detail);
};
class EmptyGrid : public Error {
public:
    EmptyGrid();
};
class InvalidHyperparameter : public Error {
public:
    InvalidHyperparameter(const std::string& algorithm, const std::string& name,
                          const std::string& detail);
};

// metrics / compare
class LengthMismatch : public Error {
public:
    explicit LengthMismatch(const std::string& detail);
};
class AllWeightsZeroAfterExclusion : public Error {
public:
    AllWeightsZeroAfterExclusion();
};
class NoValidResults : public Error {
public:
    NoValidResults();
};
class InstanceMismatch : public Error {
public:
    explicit InstanceMismatch(const std::string& detail);
};
class UnknownMetric : public Error {
public:
    explicit UnknownMetric(const std::string& name);
};
class UnknownCandidate : public Error {
public:
    explicit UnknownCandidate(const std::string& candidate_id);
};

// config / store
class ConfigError : public Error {
public:
    ConfigError(std::string code, const std::string& detail) : Error(std::move(code), detail) {}
    explicit ConfigError(const std::string& detail) : Error("invalid_config", detail) {}
};
class IOFailure : public Error {
public:
    explicit IOFailure(const std::string& detail);
};
class DuplicateExperiment : public Error {
public:
    explicit DuplicateExperiment(const std::string& experiment_id);
};
class SchemaValidationError : public Error {
public:
    explicit SchemaValidationError(const std::string& detail);
};
class ExperimentNotFound : public Error {
public:
    explicit ExperimentNotFound(const std::string& experiment_id);
};

} // namespace metastack
