#pragma once

#include "metastack/errors.hpp"
#include "metastack/matrix.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace metastack::detail {

/// Per-column z-scoring fitted on training data. Constant columns keep
/// scale 1 so they map to 0.
class Standardizer {
public:
    void fit(const Matrix& x) {
        const std::size_t n = x.rows(), d = x.cols();
        mean_.assign(d, 0.0);
        scale_.assign(d, 1.0);
        if (n == 0)
            return;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j)
                mean_[j] += x(i, j);
        for (auto& m : mean_)
            m /= static_cast<double>(n);
        std::vector<double> var(d, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const double dv = x(i, j) - mean_[j];
                var[j] += dv * dv;
            }
        for (std::size_t j = 0; j < d; ++j) {
            const double sd = std::sqrt(var[j] / static_cast<double>(n));
            scale_[j] = sd > 1e-12 ? sd : 1.0;
        }
    }

    Matrix transform(const Matrix& x) const {
        Matrix out(x.rows(), x.cols());
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j)
                out(i, j) = (x(i, j) - mean_[j]) / scale_[j];
        return out;
    }

    std::size_t width() const noexcept { return mean_.size(); }

private:
    std::vector<double> mean_;
    std::vector<double> scale_;
};

/// In-place numerically stable softmax over a row.
inline void softmax(std::span<double> z) {
    double m = z.empty() ? 0.0 : z[0];
    for (double v : z)
        m = std::max(m, v);
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - m);
        sum += v;
    }
    for (double& v : z)
        v /= sum;
}

inline void check_width(std::size_t expected, const Matrix& x) {
    if (x.cols() != expected)
        throw ShapeMismatch("expected " + std::to_string(expected) + " features, got " +
                            std::to_string(x.cols()));
}

inline void check_finite(std::span<const double> values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v))
            throw std::runtime_error(std::string(what) + " diverged (non-finite parameters)");
}

inline void check_training_input(const Matrix& x, std::span<const int> y, int n_classes) {
    if (x.rows() != y.size())
        throw ShapeMismatch("feature rows and labels differ in length");
    if (x.rows() == 0)
        throw std::runtime_error("no training instances");
    if (n_classes < 2)
        throw std::runtime_error("need at least 2 classes");
    for (int label : y)
        if (label < 0 || label >= n_classes)
            throw std::runtime_error("label out of range");
}

/// Fraction of each class in y.
inline std::vector<double> class_priors(std::span<const int> y, int n_classes) {
    std::vector<double> p(static_cast<std::size_t>(n_classes), 0.0);
    for (int label : y)
        p[static_cast<std::size_t>(label)] += 1.0;
    for (double& v : p)
        v /= static_cast<double>(y.size());
    return p;
}

} // namespace metastack::detail
