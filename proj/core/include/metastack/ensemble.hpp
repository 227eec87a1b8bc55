#pragma once

#include "metastack/classifier.hpp"
#include "metastack/dataset.hpp"
#include "metastack/hyperparameters.hpp"
#include "metastack/matrix.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace metastack {

struct BaseModelSpec {
    std::string model_id;
    Algorithm algorithm = Algorithm::logistic_regression;
    Hyperparameters hyperparameters;
    std::int64_t seed = 0;

    friend bool operator==(const BaseModelSpec&, const BaseModelSpec&) = default;
};

struct MetaColumn {
    std::string model_id;
    int class_index = 0;

    friend bool operator==(const MetaColumn&, const MetaColumn&) = default;
};

/// Out-of-fold base-model probabilities: one n_classes block per base
/// model, blocks in spec order (model-major, class-minor).
struct MetaFeatureMatrix {
    Matrix values;
    std::vector<MetaColumn> column_layout;
    FoldAssignment source_folds;
};

struct BaseLayer {
    std::vector<BaseModelSpec> specs;
    /// One model per spec, refit on the full training data.
    std::vector<std::shared_ptr<const Classifier>> fitted_full;
    MetaFeatureMatrix training_meta_features;
    std::size_t n_features = 0;
    int n_classes = 0;
};

/// Tolerance for a probability row summing to one.
inline constexpr double probability_sum_tolerance = 1e-9;

/// The default base layer: both presets of every algorithm, ids "<tag>-1"
/// and "<tag>-2", seeds derived from (model_id, experiment_seed).
std::vector<BaseModelSpec> default_base_specs(std::int64_t experiment_seed);

/// Out-of-fold class probabilities for one model configuration: for every
/// fold, a fresh model seeded with `seed` is fitted on the other folds and
/// predicts the held-out fold. Fits may run on up to `threads` threads;
/// the result does not depend on the thread count.
/// Throws ModelTrainingFailure(model_id, cause).
Matrix out_of_fold_proba(const std::string& model_id, Algorithm algorithm,
                         const Hyperparameters& params, std::int64_t seed, const Matrix& x,
                         std::span<const int> y, int n_classes, const FoldAssignment& folds,
                         int threads = 1);

/// Builds the stacking base layer (out-of-fold meta-features plus full refits).
/// Throws ModelTrainingFailure if any base model cannot be trained, and
/// ShapeMismatch/InvalidHyperparameter/ConfigError on bad input.
BaseLayer train_base_layer(const Dataset& ds, std::span<const BaseModelSpec> specs,
                           const FoldAssignment& folds, int threads = 1);

/// Probabilities of the full refits on new rows, in the training column
/// layout. Throws ShapeMismatch on a feature-width mismatch.
Matrix base_predict(const BaseLayer& layer, const Matrix& features);

} // namespace metastack
