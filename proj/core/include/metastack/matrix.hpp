#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace metastack {

/// Dense row-major matrix of doubles. Rows are the instance axis everywhere
/// in the library.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    /// Rows selected by index, in the given order (duplicates allowed).
    Matrix select_rows(std::span<const std::size_t> indices) const {
        Matrix out(indices.size(), cols_);
        for (std::size_t i = 0; i < indices.size(); ++i) {
            auto src = row(indices[i]);
            std::copy(src.begin(), src.end(), out.row(i).begin());
        }
        return out;
    }

    /// Horizontal concatenation; both operands must have the same row count.
    static Matrix hcat(const Matrix& left, const Matrix& right) {
        assert(left.rows() == right.rows());
        Matrix out(left.rows(), left.cols() + right.cols());
        for (std::size_t r = 0; r < left.rows(); ++r) {
            auto dst = out.row(r);
            std::copy(left.row(r).begin(), left.row(r).end(), dst.begin());
            std::copy(right.row(r).begin(), right.row(r).end(),
                      dst.begin() + static_cast<std::ptrdiff_t>(left.cols()));
        }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace metastack
