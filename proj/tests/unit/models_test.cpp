#include "fixtures.hpp"

#include "metastack/classifier.hpp"
#include "metastack/errors.hpp"
#include "metastack/hyperparameters.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace metastack;

namespace {

class EveryAlgorithm : public ::testing::TestWithParam<Algorithm> {};

double training_accuracy(const Classifier& model, const Dataset& ds) {
    const auto pred = argmax_rows(model.predict_proba(ds.features));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        hits += pred[i] == ds.labels[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

} // namespace

TEST_P(EveryAlgorithm, FitsSeparableDataAndEmitsDistributions) {
    const auto ds = fixtures::separable_dataset(120, 5);
    auto model = make_classifier(GetParam(), normalize_hyperparameters(GetParam(), {}), 17);
    model->fit(ds.features, ds.labels, ds.n_classes());
    const Matrix proba = model->predict_proba(ds.features);
    ASSERT_EQ(proba.rows(), ds.n_instances());
    ASSERT_EQ(proba.cols(), 2u);
    for (std::size_t i = 0; i < proba.rows(); ++i) {
        double sum = 0.0;
        for (double p : proba.row(i)) {
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
            sum += p;
        }
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
    EXPECT_GE(training_accuracy(*model, ds), 0.9);
}

TEST_P(EveryAlgorithm, SameSeedSameProbabilities) {
    const auto ds = fixtures::toy_dataset_20();
    const auto params = normalize_hyperparameters(GetParam(), {});
    auto a = make_classifier(GetParam(), params, 3);
    auto b = make_classifier(GetParam(), params, 3);
    a->fit(ds.features, ds.labels, 2);
    b->fit(ds.features, ds.labels, 2);
    EXPECT_EQ(a->predict_proba(ds.features), b->predict_proba(ds.features));
}

TEST_P(EveryAlgorithm, EmptyInputAndWidthMismatch) {
    const auto ds = fixtures::toy_dataset_20();
    auto model = make_classifier(GetParam(), normalize_hyperparameters(GetParam(), {}), 3);
    model->fit(ds.features, ds.labels, 2);
    const Matrix none = model->predict_proba(Matrix(0, 2));
    EXPECT_EQ(none.rows(), 0u);
    EXPECT_EQ(none.cols(), 2u);
    EXPECT_THROW(model->predict_proba(Matrix(3, 5)), ShapeMismatch);
}

TEST_P(EveryAlgorithm, ClassAbsentFromTrainingGetsColumn) {
    // Three declared classes, only two present in the training rows.
    const auto ds = fixtures::toy_dataset_20();
    auto model = make_classifier(GetParam(), normalize_hyperparameters(GetParam(), {}), 3);
    model->fit(ds.features, ds.labels, 3);
    const Matrix proba = model->predict_proba(ds.features);
    ASSERT_EQ(proba.cols(), 3u);
    for (std::size_t i = 0; i < proba.rows(); ++i)
        EXPECT_NEAR(proba(i, 0) + proba(i, 1) + proba(i, 2), 1.0, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Models, EveryAlgorithm, ::testing::ValuesIn(all_algorithms),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(SupportVectorMachine, EmitsOneHotRows) {
    const auto ds = fixtures::separable_dataset(60, 8);
    auto model = make_classifier(Algorithm::support_vector_machine,
                                 normalize_hyperparameters(Algorithm::support_vector_machine, {}), 1);
    EXPECT_FALSE(model->emits_probabilities());
    model->fit(ds.features, ds.labels, 2);
    const Matrix proba = model->predict_proba(ds.features);
    for (std::size_t i = 0; i < proba.rows(); ++i)
        EXPECT_TRUE((proba(i, 0) == 1.0 && proba(i, 1) == 0.0) || (proba(i, 0) == 0.0 && proba(i, 1) == 1.0));
}

TEST(ArgmaxRows, TiesGoToLowestIndex) {
    Matrix m(3, 3);
    m(0, 0) = 0.5, m(0, 1) = 0.5;
    m(1, 1) = 0.4, m(1, 2) = 0.4, m(1, 0) = 0.2;
    m(2, 0) = 1.0 / 3, m(2, 1) = 1.0 / 3, m(2, 2) = 1.0 / 3;
    EXPECT_EQ(argmax_rows(m), (std::vector<int>{0, 1, 0}));
}

TEST(Hyperparameters, DefaultsAreFilledAndCoerced) {
    const auto p = normalize_hyperparameters(Algorithm::k_nearest_neighbors, {{"k", 3.0}});
    EXPECT_EQ(get_int(p, "k"), 3);
    EXPECT_EQ(get_string(p, "weights"), "uniform");
    const auto lr = normalize_hyperparameters(Algorithm::logistic_regression, {{"C", std::int64_t{2}}});
    EXPECT_DOUBLE_EQ(get_real(lr, "C"), 2.0);
}

TEST(Hyperparameters, InvalidValuesAreRejected) {
    EXPECT_THROW(normalize_hyperparameters(Algorithm::k_nearest_neighbors, {{"k", std::int64_t{0}}}),
                 InvalidHyperparameter);
    EXPECT_THROW(normalize_hyperparameters(Algorithm::k_nearest_neighbors, {{"k", 2.5}}), InvalidHyperparameter);
    EXPECT_THROW(normalize_hyperparameters(Algorithm::decision_tree, {{"criterion", std::string("mse")}}),
                 InvalidHyperparameter);
    EXPECT_THROW(normalize_hyperparameters(Algorithm::naive_bayes, {{"bogus", 1.0}}), InvalidHyperparameter);
    EXPECT_THROW(normalize_hyperparameters(Algorithm::logistic_regression, {{"C", -1.0}}), InvalidHyperparameter);
}

TEST(Hyperparameters, SvmGammaAcceptsScaleOrNumber) {
    EXPECT_TRUE(holds_string(normalize_hyperparameters(Algorithm::support_vector_machine, {}), "gamma"));
    const auto p = normalize_hyperparameters(Algorithm::support_vector_machine, {{"gamma", 0.5}});
    EXPECT_DOUBLE_EQ(get_real(p, "gamma"), 0.5);
}

TEST(Hyperparameters, CanonicalStringIsOrderIndependent) {
    Hyperparameters a{{"k", std::int64_t{3}}, {"weights", std::string("distance")}};
    Hyperparameters b;
    b["weights"] = std::string("distance");
    b["k"] = std::int64_t{3};
    EXPECT_EQ(canonical_string(a), canonical_string(b));
}

TEST(Hyperparameters, TwoPresetsPerAlgorithm) {
    for (Algorithm a : all_algorithms) {
        const auto presets = default_presets(a);
        ASSERT_EQ(presets.size(), 2u);
        EXPECT_NE(canonical_string(presets[0]), canonical_string(presets[1]));
    }
}

TEST(Algorithms, NamesAndShortTagsParse) {
    for (Algorithm a : all_algorithms)
        EXPECT_EQ(parse_algorithm(to_string(a)), a);
    EXPECT_EQ(parse_algorithm("knn"), Algorithm::k_nearest_neighbors);
    EXPECT_EQ(parse_algorithm("svm"), Algorithm::support_vector_machine);
    EXPECT_FALSE(parse_algorithm("xgboost").has_value());
}
