#include "metastack/metamodels.hpp"

#include "metastack/errors.hpp"
#include "metastack/hash.hpp"
#include "metastack/metrics.hpp"

#include <algorithm>
#include <chrono>

namespace metastack {

MetamodelGrid default_metamodel_grid() {
    MetamodelGrid grid;
    for (Algorithm a : all_algorithms)
        grid[a] = default_presets(a);
    return grid;
}

std::string candidate_id(Algorithm algorithm, const Hyperparameters& params) {
    const std::string key = std::string(to_string(algorithm)) + "|" + canonical_string(params);
    return std::string(algorithm_tag(algorithm)) + "-" + hex64(fnv1a64(key)).substr(0, 8);
}

std::vector<MetamodelCandidate> enumerate_candidates(const MetamodelGrid& grid, std::int64_t seed) {
    std::vector<MetamodelCandidate> out;
    for (Algorithm a : all_algorithms) {
        const auto it = grid.find(a);
        if (it == grid.end())
            continue;
        std::vector<std::pair<std::string, Hyperparameters>> configs;
        for (const auto& raw : it->second) {
            auto normalized = normalize_hyperparameters(a, raw);
            configs.emplace_back(canonical_string(normalized), std::move(normalized));
        }
        std::sort(configs.begin(), configs.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        configs.erase(std::unique(configs.begin(), configs.end(),
                                  [](const auto& l, const auto& r) { return l.first == r.first; }),
                      configs.end());
        for (auto& [text, params] : configs) {
            MetamodelCandidate c;
            c.candidate_id = candidate_id(a, params);
            c.algorithm = a;
            c.hyperparameters = std::move(params);
            c.seed = static_cast<std::int64_t>(derive_seed(c.candidate_id, static_cast<std::uint64_t>(seed)));
            out.push_back(std::move(c));
        }
    }
    if (out.empty())
        throw EmptyGrid();
    return out;
}

MetamodelResult evaluate_candidate(const MetamodelCandidate& candidate, const Matrix& inputs,
                                   std::span<const int> labels, int n_classes,
                                   const FoldAssignment& folds, int threads) {
    if (inputs.rows() != labels.size() || folds.fold_of.size() != labels.size())
        throw ShapeMismatch("meta-features, labels and folds must cover the same instances");

    MetamodelResult result;
    result.candidate = candidate;
    const auto start = std::chrono::steady_clock::now();
    try {
        result.oof_probabilities =
            out_of_fold_proba(candidate.candidate_id, candidate.algorithm, candidate.hyperparameters,
                              candidate.seed, inputs, labels, n_classes, folds, threads);
    } catch (const ModelTrainingFailure& e) {
        result.failure = e.cause();
    } catch (const std::exception& e) {
        result.failure = e.what();
    }
    result.fit_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (result.failed()) {
        result.oof_probabilities = Matrix();
        return result;
    }

    result.predicted_labels = argmax_rows(result.oof_probabilities);
    result.correct.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        result.correct[i] = result.predicted_labels[i] == labels[i];
    result.metrics = compute_metrics(labels, result.predicted_labels, result.oof_probabilities);
    return result;
}

MetamodelResult evaluate_candidate(const MetamodelCandidate& candidate,
                                   const MetaFeatureMatrix& meta, std::span<const int> labels,
                                   const FoldAssignment& folds) {
    int n_classes = 0;
    for (const auto& col : meta.column_layout)
        n_classes = std::max(n_classes, col.class_index + 1);
    return evaluate_candidate(candidate, meta.values, labels, n_classes, folds);
}

} // namespace metastack
