#pragma once

#include "metastack/experiment.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace metastack {

/// Writes {root}/{experiment_id}.json through a temporary file and an
/// atomic rename. Creates `root` if needed.
/// Throws DuplicateExperiment (unless overwrite) or IOFailure.
std::filesystem::path save_experiment(const ExperimentRecord& record,
                                      const std::filesystem::path& root, bool overwrite = false);

/// Throws ExperimentNotFound, IOFailure or SchemaValidationError.
ExperimentRecord load_experiment(const std::filesystem::path& path);

/// Loads {root}/{experiment_id}.json. Ids are restricted to [A-Za-z0-9_-]
/// so they cannot escape the store; anything else is reported as not found.
ExperimentRecord load_experiment(const std::filesystem::path& root, const std::string& experiment_id);

bool experiment_exists(const std::filesystem::path& root, const std::string& experiment_id);

/// Throws ExperimentNotFound or IOFailure.
void delete_experiment(const std::filesystem::path& root, const std::string& experiment_id);

struct ExperimentSummary {
    std::string experiment_id;
    std::string created_at;
    DatasetSummary dataset_summary;
};

struct StoreWarning {
    std::string file;
    std::string message;
};

struct ExperimentListing {
    std::vector<ExperimentSummary> experiments; ///< newest first
    std::vector<StoreWarning> warnings;         ///< unreadable files
};

/// Lists every *.json record under root. A missing root is an empty store.
ExperimentListing list_experiments(const std::filesystem::path& root);

/// Store directory from METASTACK_DATA_ROOT, else "./experiments".
std::filesystem::path default_store_root();

} // namespace metastack
