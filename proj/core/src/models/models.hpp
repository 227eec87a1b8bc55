#pragma once

#include "metastack/classifier.hpp"
#include "metastack/random.hpp"
#include "models/common.hpp"
#include "models/tree.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace metastack::detail {

class LogisticRegression final : public Classifier {
public:
    LogisticRegression(double c, int max_iter, double learning_rate)
        : c_(c), max_iter_(max_iter), learning_rate_(learning_rate) {}
    void fit(const Matrix& x, std::span<const int> y, int n_classes) override;
    Matrix predict_proba(const Matrix& x) const override;

private:
    double c_;
    int max_iter_;
    double learning_rate_;
    Standardizer scaler_;
    int n_classes_ = 0;
    std::vector<bool> present_;
    Matrix weights_; ///< n_classes x (n_features + 1), bias last
};

class KNearestNeighbors final : public Classifier {
public:
    KNearestNeighbors(int k, bool distance_weighted) : k_(k), distance_weighted_(distance_weighted) {}
    void fit(const Matrix& x, std::span<const int> y, int n_classes) override;
    Matrix predict_proba(const Matrix& x) const override;

private:
    int k_;
    bool distance_weighted_;
    Standardizer scaler_;
    Matrix train_;
    std::vector<int> labels_;
    int n_classes_ = 0;
};

class DecisionTree final : public Classifier {
public:
    explicit DecisionTree(TreeParams params) : params_(params) {}
    void fit(const Matrix& x, std::span<const int> y, int n_classes) override;
    Matrix predict_proba(const Matrix& x) const override;

    const ClassificationTree& tree() const noexcept { return tree_; }

private:
    TreeParams params_;
    ClassificationTree tree_;
    std::size_t width_ = 0;
    int n_classes_ = 0;
};

class RandomForest final : public Classifier {
public:
    RandomForest(int n_estimators, TreeParams params, std::string max_features, std::uint64_t seed)
        : n_estimators_(n_estimators), params_(params), max_features_(std::move(max_features)),
          seed_(seed) {}
    void fit(const Matrix& x, std::span<const int> y, int n_classes) override;
    Matrix predict_proba(const Matrix& x) const override;

private:
    int n_estimators_;
    TreeParams params_;
    std::string max_features_;
    std::uint64_t seed_;
    std::vector<ClassificationTree> trees_;
    std::size_t width_ = 0;
    int n_classes_ = 0;
};

class GradientBoosting final : public Classifier {
public:
    GradientBoosting(int n_estimators, double learning_rate, int max_depth, double subsample,
                     std::uint64_t seed)
        : n_estimators_(n_estimators), learning_rate_(learning_rate), max_depth_(max_depth),
          subsample_(subsample), seed_(seed) {}
    void fit(const Matrix& x, std::span<const int> y, int n_classes) override;
    Matrix predict_proba(const Matrix& x) const override;

private:
    int n_estimators_;
    double learning_rate_;
    int max_depth_;
    double subsample_;
    std::uint64_t seed_;
    int n_classes_ = 0;
    std::size_t width_ = 0;
    std::vector<bool> present_;
    std::vector<double> init_;              ///< per-class initial raw score
    std::vector<std::vector<RegressionTree>> stages_; ///< [stage][class]
};

class GaussianNaiveBayes final : public Classifier {
public:
    explicit GaussianNaiveBayes(double var_smoothing) : var_smoothing_(var_smoothing) {}
    void fit(const Matrix& x, std::span<const int> y, int n_classes) override;
    Matrix predict_proba(const Matrix& x) const override;

private:
    double var_smoothing_;
    int n_classes_ = 0;
    std::vector<double> log_prior_;
    Matrix mean_;
    Matrix var_;
};

class MultilayerPerceptron final : public Classifier {
public:
    MultilayerPerceptron(int hidden_units, bool tanh_activation, double alpha,
                         double learning_rate, int max_iter, std::uint64_t seed)
        : hidden_(hidden_units), tanh_(tanh_activation), alpha_(alpha),
          learning_rate_(learning_rate), max_iter_(max_iter), seed_(seed) {}
    void fit(const Matrix& x, std::span<const int> y, int n_classes) override;
    Matrix predict_proba(const Matrix& x) const override;

private:
    Matrix forward_hidden(const Matrix& xs) const;

    int hidden_;
    bool tanh_;
    double alpha_;
    double learning_rate_;
    int max_iter_;
    std::uint64_t seed_;
    Standardizer scaler_;
    int n_classes_ = 0;
    std::vector<bool> present_;
    Matrix w1_; ///< hidden x (d + 1)
    Matrix w2_; ///< n_classes x (hidden + 1)
};

/// Kernel SVM trained one-vs-rest by dual coordinate descent. The model
/// emits hard labels, so predictions go through the one-hot adapter.
class SupportVectorMachine final : public Classifier {
public:
    SupportVectorMachine(double c, bool rbf, double gamma, int max_iter, std::uint64_t seed)
        : c_(c), rbf_(rbf), gamma_(gamma), max_iter_(max_iter), seed_(seed) {}
    void fit(const Matrix& x, std::span<const int> y, int n_classes) override;
    Matrix predict_proba(const Matrix& x) const override;
    bool emits_probabilities() const override { return false; }

    /// Raw one-vs-rest decision values, n_rows x n_classes.
    Matrix decision_function(const Matrix& x) const;

private:
    double kernel(std::span<const double> a, std::span<const double> b) const;

    double c_;
    bool rbf_;
    double gamma_; ///< <= 0 selects 1 / n_features on standardized inputs
    int max_iter_;
    std::uint64_t seed_;
    double effective_gamma_ = 0.0;
    Standardizer scaler_;
    int n_classes_ = 0;
    std::vector<bool> present_;
    Matrix support_;             ///< standardized training rows
    Matrix dual_coef_;           ///< n_classes x n_train, alpha_i * y_i
};

} // namespace metastack::detail
