#include "models/models.hpp"

#include <cmath>

namespace metastack::detail {

namespace {

struct Adam {
    explicit Adam(std::size_t size) : m(size, 0.0), v(size, 0.0) {}

    void step(std::span<double> params, std::span<const double> grad, double lr, int t) {
        constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
        const double c1 = 1.0 - std::pow(beta1, t);
        const double c2 = 1.0 - std::pow(beta2, t);
        for (std::size_t i = 0; i < params.size(); ++i) {
            m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
            v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
            params[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
        }
    }

    std::vector<double> m, v;
};

} // namespace

Matrix MultilayerPerceptron::forward_hidden(const Matrix& xs) const {
    const std::size_t d = xs.cols(), h = static_cast<std::size_t>(hidden_);
    Matrix a(xs.rows(), h);
    for (std::size_t i = 0; i < xs.rows(); ++i) {
        auto row = xs.row(i);
        for (std::size_t u = 0; u < h; ++u) {
            double acc = w1_(u, d);
            for (std::size_t j = 0; j < d; ++j)
                acc += w1_(u, j) * row[j];
            a(i, u) = tanh_ ? std::tanh(acc) : std::max(acc, 0.0);
        }
    }
    return a;
}

// One hidden layer, softmax output, full-batch Adam on mean cross-entropy
// with an L2 penalty alpha / (2n) on the weights.
void MultilayerPerceptron::fit(const Matrix& x, std::span<const int> y, int n_classes) {
    check_training_input(x, y, n_classes);
    n_classes_ = n_classes;
    scaler_.fit(x);
    const Matrix xs = scaler_.transform(x);
    const std::size_t n = xs.rows(), d = xs.cols(), h = static_cast<std::size_t>(hidden_),
                      k = static_cast<std::size_t>(n_classes);

    present_.assign(k, false);
    for (int label : y)
        present_[static_cast<std::size_t>(label)] = true;

    Rng rng(seed_);
    w1_ = Matrix(h, d + 1);
    w2_ = Matrix(k, h + 1);
    const double lim1 = std::sqrt(6.0 / static_cast<double>(d + h));
    const double lim2 = std::sqrt(6.0 / static_cast<double>(h + k));
    for (double& w : w1_.data())
        w = rng.uniform(-lim1, lim1);
    for (double& w : w2_.data())
        w = rng.uniform(-lim2, lim2);

    Adam opt1(w1_.data().size()), opt2(w2_.data().size());
    Matrix g1(h, d + 1), g2(k, h + 1);
    std::vector<double> z(k), dh(h);
    const double inv_n = 1.0 / static_cast<double>(n);
    const double reg = alpha_ * inv_n;

    for (int iter = 1; iter <= max_iter_; ++iter) {
        const Matrix a = forward_hidden(xs);
        std::fill(g1.data().begin(), g1.data().end(), 0.0);
        std::fill(g2.data().begin(), g2.data().end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto hidden = a.row(i);
            for (std::size_t c = 0; c < k; ++c) {
                if (!present_[c]) {
                    z[c] = -std::numeric_limits<double>::infinity();
                    continue;
                }
                double acc = w2_(c, h);
                for (std::size_t u = 0; u < h; ++u)
                    acc += w2_(c, u) * hidden[u];
                z[c] = acc;
            }
            softmax(z);
            std::fill(dh.begin(), dh.end(), 0.0);
            for (std::size_t c = 0; c < k; ++c) {
                if (!present_[c])
                    continue;
                const double err = (z[c] - (static_cast<std::size_t>(y[i]) == c ? 1.0 : 0.0)) * inv_n;
                for (std::size_t u = 0; u < h; ++u) {
                    g2(c, u) += err * hidden[u];
                    dh[u] += err * w2_(c, u);
                }
                g2(c, h) += err;
            }
            auto row = xs.row(i);
            for (std::size_t u = 0; u < h; ++u) {
                const double deriv = tanh_ ? 1.0 - hidden[u] * hidden[u] : (hidden[u] > 0.0 ? 1.0 : 0.0);
                const double delta = dh[u] * deriv;
                if (delta == 0.0)
                    continue;
                for (std::size_t j = 0; j < d; ++j)
                    g1(u, j) += delta * row[j];
                g1(u, d) += delta;
            }
        }
        for (std::size_t u = 0; u < h; ++u)
            for (std::size_t j = 0; j < d; ++j)
                g1(u, j) += reg * w1_(u, j);
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t u = 0; u < h; ++u)
                g2(c, u) += reg * w2_(c, u);

        opt1.step(w1_.data(), g1.data(), learning_rate_, iter);
        opt2.step(w2_.data(), g2.data(), learning_rate_, iter);
        check_finite(w1_.data(), "multilayer perceptron");
        check_finite(w2_.data(), "multilayer perceptron");
    }
}

Matrix MultilayerPerceptron::predict_proba(const Matrix& x) const {
    check_width(scaler_.width(), x);
    const Matrix a = forward_hidden(scaler_.transform(x));
    const std::size_t h = static_cast<std::size_t>(hidden_), k = static_cast<std::size_t>(n_classes_);
    Matrix out(x.rows(), k);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        auto z = out.row(i);
        auto hidden = a.row(i);
        for (std::size_t c = 0; c < k; ++c) {
            if (!present_[c]) {
                z[c] = -std::numeric_limits<double>::infinity();
                continue;
            }
            double acc = w2_(c, h);
            for (std::size_t u = 0; u < h; ++u)
                acc += w2_(c, u) * hidden[u];
            z[c] = acc;
        }
        softmax(z);
    }
    return out;
}

} // namespace metastack::detail
