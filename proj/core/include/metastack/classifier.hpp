#pragma once

#include "metastack/hyperparameters.hpp"
#include "metastack/matrix.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace metastack {

/// A probabilistic classifier. Implementations are deterministic given the
/// seed they were constructed with: fitting the same data twice yields
/// bitwise-identical predictions.
class Classifier {
public:
    virtual ~Classifier() = default;

    /// Fits on `x` with labels in [0, n_classes). Classes absent from `y`
    /// receive probability 0 at prediction time. Throws std::runtime_error
    /// (or a subclass) if training diverges.
    virtual void fit(const Matrix& x, std::span<const int> y, int n_classes) = 0;

    /// n_rows x n_classes, each row a probability distribution.
    /// Throws ShapeMismatch if the feature width differs from training.
    virtual Matrix predict_proba(const Matrix& x) const = 0;

    /// False for models wrapped through the hard-label one-hot adapter.
    virtual bool emits_probabilities() const { return true; }
};

/// Builds an unfitted classifier. `params` is normalized internally, so
/// partial maps are accepted.
std::unique_ptr<Classifier> make_classifier(Algorithm algorithm, const Hyperparameters& params,
                                            std::uint64_t seed);

/// Row-wise argmax; ties go to the lowest class index.
std::vector<int> argmax_rows(const Matrix& proba);

} // namespace metastack
