#include "metastack/classifier.hpp"

#include "models/models.hpp"

namespace metastack {

std::unique_ptr<Classifier> make_classifier(Algorithm algorithm, const Hyperparameters& raw,
                                            std::uint64_t seed) {
    using namespace detail;
    const Hyperparameters p = normalize_hyperparameters(algorithm, raw);
    auto as_int = [&](const char* name) { return static_cast<int>(get_int(p, name)); };
    auto tree_params = [&] {
        TreeParams t;
        t.max_depth = as_int("max_depth");
        t.min_samples_leaf = as_int("min_samples_leaf");
        return t;
    };

    switch (algorithm) {
    case Algorithm::logistic_regression:
        return std::make_unique<LogisticRegression>(get_real(p, "C"), as_int("max_iter"),
                                                    get_real(p, "learning_rate"));
    case Algorithm::k_nearest_neighbors:
        return std::make_unique<KNearestNeighbors>(as_int("k"), get_string(p, "weights") == "distance");
    case Algorithm::decision_tree: {
        TreeParams t = tree_params();
        t.entropy = get_string(p, "criterion") == "entropy";
        return std::make_unique<DecisionTree>(t);
    }
    case Algorithm::random_forest:
        return std::make_unique<RandomForest>(as_int("n_estimators"), tree_params(),
                                              get_string(p, "max_features"), seed);
    case Algorithm::gradient_boosting:
        return std::make_unique<GradientBoosting>(as_int("n_estimators"), get_real(p, "learning_rate"),
                                                  as_int("max_depth"), get_real(p, "subsample"), seed);
    case Algorithm::naive_bayes:
        return std::make_unique<GaussianNaiveBayes>(get_real(p, "var_smoothing"));
    case Algorithm::multilayer_perceptron:
        return std::make_unique<MultilayerPerceptron>(
            as_int("hidden_units"), get_string(p, "activation") == "tanh", get_real(p, "alpha"),
            get_real(p, "learning_rate"), as_int("max_iter"), seed);
    case Algorithm::support_vector_machine: {
        const double gamma = holds_string(p, "gamma") ? 0.0 : get_real(p, "gamma");
        return std::make_unique<SupportVectorMachine>(get_real(p, "C"), get_string(p, "kernel") == "rbf",
                                                      gamma, as_int("max_iter"), seed);
    }
    }
    throw InvalidHyperparameter("unknown", "algorithm", "unsupported algorithm");
}

std::vector<int> argmax_rows(const Matrix& proba) {
    std::vector<int> out(proba.rows(), 0);
    for (std::size_t i = 0; i < proba.rows(); ++i) {
        auto row = proba.row(i);
        std::size_t best = 0;
        for (std::size_t c = 1; c < row.size(); ++c)
            if (row[c] > row[best])
                best = c;
        out[i] = static_cast<int>(best);
    }
    return out;
}

} // namespace metastack
