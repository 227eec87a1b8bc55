#include "metastack/ensemble.hpp"

#include "metastack/errors.hpp"
#include "metastack/hash.hpp"
#include "parallel.hpp"

#include <cmath>
#include <set>

namespace metastack {

namespace {

/// Rejects probability rows outside [0, 1] or off the simplex.
void check_probabilities(const std::string& model_id, const Matrix& proba) {
    for (std::size_t i = 0; i < proba.rows(); ++i) {
        auto row = proba.row(i);
        double sum = 0.0;
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                throw ModelTrainingFailure(model_id, "produced an invalid probability");
            sum += v;
        }
        if (std::abs(sum - 1.0) > probability_sum_tolerance)
            throw ModelTrainingFailure(model_id, "probabilities do not sum to one");
    }
}

std::unique_ptr<Classifier> fit_model(const std::string& model_id, Algorithm algorithm,
                                      const Hyperparameters& params, std::int64_t seed,
                                      const Matrix& x, std::span<const int> y, int n_classes) {
    auto model = make_classifier(algorithm, params, static_cast<std::uint64_t>(seed));
    try {
        model->fit(x, y, n_classes);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ModelTrainingFailure(model_id, e.what());
    }
    return model;
}

} // namespace

std::vector<BaseModelSpec> default_base_specs(std::int64_t experiment_seed) {
    std::vector<BaseModelSpec> specs;
    for (Algorithm a : all_algorithms) {
        const auto presets = default_presets(a);
        for (std::size_t p = 0; p < presets.size(); ++p) {
            BaseModelSpec s;
            s.model_id = std::string(algorithm_tag(a)) + "-" + std::to_string(p + 1);
            s.algorithm = a;
            s.hyperparameters = presets[p];
            s.seed = static_cast<std::int64_t>(derive_seed(s.model_id, static_cast<std::uint64_t>(experiment_seed)));
            specs.push_back(std::move(s));
        }
    }
    return specs;
}

Matrix out_of_fold_proba(const std::string& model_id, Algorithm algorithm,
                         const Hyperparameters& params, std::int64_t seed, const Matrix& x,
                         std::span<const int> y, int n_classes, const FoldAssignment& folds,
                         int threads) {
    if (x.rows() != y.size() || folds.fold_of.size() != y.size())
        throw ShapeMismatch("features, labels and folds must cover the same instances");
    const auto normalized = normalize_hyperparameters(algorithm, params);

    Matrix out(x.rows(), static_cast<std::size_t>(n_classes), 0.0);
    detail::parallel_for(static_cast<std::size_t>(folds.k), threads, [&](std::size_t f) {
        const int fold = static_cast<int>(f);
        const auto train = folds.train_indices(fold);
        const auto test = folds.test_indices(fold);
        std::vector<int> ytrain;
        ytrain.reserve(train.size());
        for (std::size_t i : train)
            ytrain.push_back(y[i]);
        auto model = fit_model(model_id, algorithm, normalized, seed, x.select_rows(train), ytrain, n_classes);
        Matrix proba = model->predict_proba(x.select_rows(test));
        check_probabilities(model_id, proba);
        // Each fold writes a disjoint set of rows.
        for (std::size_t t = 0; t < test.size(); ++t)
            std::copy(proba.row(t).begin(), proba.row(t).end(), out.row(test[t]).begin());
    });
    return out;
}

BaseLayer train_base_layer(const Dataset& ds, std::span<const BaseModelSpec> specs,
                           const FoldAssignment& folds, int threads) {
    if (specs.empty())
        throw ConfigError("base layer needs at least one model");
    if (folds.fold_of.size() != ds.n_instances())
        throw ShapeMismatch("fold assignment does not cover the dataset");
    std::set<std::string> ids;
    for (const auto& s : specs)
        if (!ids.insert(s.model_id).second)
            throw ConfigError("duplicate base model id: " + s.model_id);

    const std::size_t m = specs.size();
    const auto k = static_cast<std::size_t>(ds.n_classes());
    const std::size_t folds_per_model = static_cast<std::size_t>(folds.k);

    BaseLayer layer;
    layer.specs.assign(specs.begin(), specs.end());
    for (auto& s : layer.specs)
        s.hyperparameters = normalize_hyperparameters(s.algorithm, s.hyperparameters);
    layer.n_features = ds.n_features();
    layer.n_classes = ds.n_classes();
    layer.fitted_full.resize(m);

    // Work items: (spec, fold) out-of-fold fits followed by one full refit
    // per spec. Each writes to its own slot; merging is by index.
    std::vector<Matrix> blocks(m * folds_per_model);
    std::vector<std::vector<std::size_t>> test_rows(folds_per_model);
    for (std::size_t f = 0; f < folds_per_model; ++f)
        test_rows[f] = folds.test_indices(static_cast<int>(f));

    const std::size_t n_items = m * folds_per_model + m;
    detail::parallel_for(n_items, threads, [&](std::size_t item) {
        if (item < m * folds_per_model) {
            const std::size_t s = item / folds_per_model, f = item % folds_per_model;
            const auto& spec = layer.specs[s];
            const auto train = folds.train_indices(static_cast<int>(f));
            std::vector<int> ytrain;
            ytrain.reserve(train.size());
            for (std::size_t i : train)
                ytrain.push_back(ds.labels[i]);
            auto model = fit_model(spec.model_id, spec.algorithm, spec.hyperparameters, spec.seed,
                                   ds.features.select_rows(train), ytrain, ds.n_classes());
            Matrix proba = model->predict_proba(ds.features.select_rows(test_rows[f]));
            check_probabilities(spec.model_id, proba);
            blocks[item] = std::move(proba);
        } else {
            const std::size_t s = item - m * folds_per_model;
            const auto& spec = layer.specs[s];
            layer.fitted_full[s] = fit_model(spec.model_id, spec.algorithm, spec.hyperparameters,
                                             spec.seed, ds.features, ds.labels, ds.n_classes());
        }
    });

    auto& meta = layer.training_meta_features;
    meta.values = Matrix(ds.n_instances(), m * k, 0.0);
    meta.source_folds = folds;
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t c = 0; c < k; ++c)
            meta.column_layout.push_back({layer.specs[s].model_id, static_cast<int>(c)});
        for (std::size_t f = 0; f < folds_per_model; ++f) {
            const Matrix& block = blocks[s * folds_per_model + f];
            for (std::size_t t = 0; t < test_rows[f].size(); ++t)
                for (std::size_t c = 0; c < k; ++c)
                    meta.values(test_rows[f][t], s * k + c) = block(t, c);
        }
    }
    return layer;
}

Matrix base_predict(const BaseLayer& layer, const Matrix& features) {
    if (features.cols() != layer.n_features)
        throw ShapeMismatch("expected " + std::to_string(layer.n_features) + " features, got " +
                            std::to_string(features.cols()));
    const auto k = static_cast<std::size_t>(layer.n_classes);
    Matrix out(features.rows(), layer.specs.size() * k, 0.0);
    if (features.rows() == 0)
        return out;
    for (std::size_t s = 0; s < layer.specs.size(); ++s) {
        Matrix proba = layer.fitted_full[s]->predict_proba(features);
        check_probabilities(layer.specs[s].model_id, proba);
        for (std::size_t i = 0; i < features.rows(); ++i)
            for (std::size_t c = 0; c < k; ++c)
                out(i, s * k + c) = proba(i, c);
    }
    return out;
}

} // namespace metastack
