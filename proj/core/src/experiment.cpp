#include "metastack/experiment.hpp"

#include "metastack/errors.hpp"
#include "metastack/hash.hpp"
#include "metastack/serialization.hpp"
#include "metastack/store.hpp"
#include "parallel.hpp"

#include <chrono>
#include <ctime>
#include <set>

namespace metastack {

const MetamodelResult* ExperimentRecord::find_result(const std::string& candidate_id) const {
    for (const auto& r : results)
        if (r.candidate.candidate_id == candidate_id)
            return &r;
    return nullptr;
}

ExperimentConfig normalize_config(ExperimentConfig config) {
    if (config.target_column.empty())
        throw ConfigError("missing_target", "config must name a target_column");
    if (config.dataset.empty() && config.dataset_csv.empty())
        throw ConfigError("config must provide 'dataset' (path) or 'dataset_csv' (inline text)");
    if (config.k < 2)
        throw ConfigError("k must be at least 2");
    try {
        config.metric_weights.validate();
        config.problematic.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (config.base_specs.empty())
        config.base_specs = default_base_specs(config.seed);
    std::set<std::string> ids;
    for (auto& spec : config.base_specs) {
        if (spec.model_id.empty())
            throw ConfigError("base model ids must be non-empty");
        if (!ids.insert(spec.model_id).second)
            throw ConfigError("duplicate base model id: " + spec.model_id);
        spec.hyperparameters = normalize_hyperparameters(spec.algorithm, spec.hyperparameters);
    }

    if (config.metamodel_grid.empty())
        config.metamodel_grid = default_metamodel_grid();
    for (auto& [algorithm, list] : config.metamodel_grid)
        for (auto& params : list)
            params = normalize_hyperparameters(algorithm, params);
    return config;
}

std::string experiment_id(const ExperimentConfig& normalized) {
    return hex64(fnv1a64(to_json(normalized).dump()));
}

Dataset load_config_dataset(const ExperimentConfig& config) {
    IngestionOptions options;
    options.delimiter = config.delimiter;
    options.id_column = config.id_column;
    options.name = config.name;
    if (!config.dataset_csv.empty()) {
        if (options.name.empty())
            options.name = "inline";
        return parse_dataset(config.dataset_csv, config.target_column, options);
    }
    return load_dataset(config.dataset, config.target_column, options);
}

ExperimentRecord run_experiment(const Dataset& ds, const ExperimentConfig& raw_config,
                                const RunOptions& options) {
    const ExperimentConfig config = normalize_config(raw_config);
    const int threads = detail::resolve_threads(options.threads);

    const FoldAssignment folds = stratified_kfold(ds, config.k, config.seed);
    const BaseLayer layer = train_base_layer(ds, config.base_specs, folds, threads);
    const auto candidates = enumerate_candidates(config.metamodel_grid, config.seed);

    const Matrix inputs = config.include_raw_features
                              ? Matrix::hcat(layer.training_meta_features.values, ds.features)
                              : layer.training_meta_features.values;

    std::vector<MetamodelResult> evaluated(candidates.size());
    detail::parallel_for(candidates.size(), threads, [&](std::size_t i) {
        evaluated[i] = evaluate_candidate(candidates[i], inputs, ds.labels, ds.n_classes(), folds);
    });

    ExperimentRecord record;
    record.experiment_id = experiment_id(config);
    record.created_at = utc_timestamp();
    record.config = config;
    record.dataset_summary = {ds.name, ds.n_instances(), ds.n_features(), ds.class_names};
    record.instance_ids = ds.instance_ids;
    record.labels = ds.labels;
    for (auto& r : evaluated) {
        if (r.failed())
            record.failures.push_back({r.candidate.candidate_id, *r.failure});
        else
            record.results.push_back(std::move(r));
    }

    if (options.store_root)
        save_experiment(record, *options.store_root, options.overwrite);
    return record;
}

ExperimentRecord run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    const ExperimentConfig normalized = normalize_config(config);
    // Refuse early, before spending time on training.
    if (options.store_root && !options.overwrite &&
        experiment_exists(*options.store_root, experiment_id(normalized)))
        throw DuplicateExperiment(experiment_id(normalized));
    return run_experiment(load_config_dataset(normalized), normalized, options);
}

std::string utc_timestamp() {
    using namespace std::chrono;
    const auto now = system_clock::now();
    const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
    const std::time_t t = system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
    char out[40];
    std::snprintf(out, sizeof(out), "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

} // namespace metastack
