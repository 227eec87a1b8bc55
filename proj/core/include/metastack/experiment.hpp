#pragma once

#include "metastack/dataset.hpp"
#include "metastack/ensemble.hpp"
#include "metastack/metamodels.hpp"
#include "metastack/metrics.hpp"
#include "metastack/ranking.hpp"
#include "metastack/results.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace metastack {

/// Everything that determines an experiment. Two equal configs produce
/// the same experiment id and the same results.
struct ExperimentConfig {
    std::string name;
    std::string dataset;     ///< path to delimited text
    std::string dataset_csv; ///< inline delimited text, alternative to `dataset`
    std::string target_column;
    std::string id_column;
    char delimiter = ',';
    int k = default_fold_count;
    std::int64_t seed = default_seed;
    bool include_raw_features = false;
    std::vector<BaseModelSpec> base_specs;
    MetamodelGrid metamodel_grid;
    MetricWeights metric_weights = MetricWeights::equal();
    ProblematicCriterion problematic;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct DatasetSummary {
    std::string name;
    std::size_t n_instances = 0;
    std::size_t n_features = 0;
    std::vector<std::string> class_names;

    friend bool operator==(const DatasetSummary&, const DatasetSummary&) = default;
};

struct CandidateFailure {
    std::string candidate_id;
    std::string message;

    friend bool operator==(const CandidateFailure&, const CandidateFailure&) = default;
};

inline constexpr int schema_version = 1;

struct ExperimentRecord {
    std::string experiment_id;
    int schema_version = metastack::schema_version;
    std::string created_at; ///< UTC ISO-8601
    ExperimentConfig config;
    DatasetSummary dataset_summary;
    std::vector<std::string> instance_ids;
    std::vector<int> labels;
    std::vector<MetamodelResult> results; ///< enumeration order, successful candidates only
    std::vector<CandidateFailure> failures;

    const MetamodelResult* find_result(const std::string& candidate_id) const;

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct RunOptions {
    int threads = 0; ///< 0 = hardware concurrency
    /// When set, the record is saved there.
    std::optional<std::filesystem::path> store_root;
    bool overwrite = false;
};

/// Fills defaults (base layer, grid), normalizes hyperparameters and checks
/// the config. Throws ConfigError with code "missing_target" or
/// "invalid_config", or InvalidHyperparameter.
ExperimentConfig normalize_config(ExperimentConfig config);

/// Content hash of the normalized config (which includes the seed).
std::string experiment_id(const ExperimentConfig& normalized);

/// Loads the dataset named by the config (file or inline text).
Dataset load_config_dataset(const ExperimentConfig& config);

/// Stratified folds -> base layer -> candidate grid -> per-candidate
/// out-of-fold evaluation. Candidate failures are recorded, not thrown.
ExperimentRecord run_experiment(const Dataset& ds, const ExperimentConfig& config,
                                const RunOptions& options = {});

/// Loads the dataset, runs, and saves when options.store_root is set.
ExperimentRecord run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Current UTC time, ISO-8601 with milliseconds.
std::string utc_timestamp();

} // namespace metastack
