#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace ttc {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double &operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    /// A x
    std::vector<double> multiply(std::span<const double> x) const {
        assert(x.size() == cols_);
        std::vector<double> y(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const double *a = data_.data() + r * cols_;
            double sum = 0.0;
            for (std::size_t c = 0; c < cols_; ++c) sum += a[c] * x[c];
            y[r] = sum;
        }
        return y;
    }

    /// Aᵀ x, row-streaming so memory is walked in order.
    std::vector<double> multiply_transposed(std::span<const double> x) const {
        assert(x.size() == rows_);
        std::vector<double> y(cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const double *a = data_.data() + r * cols_;
            const double xr = x[r];
            for (std::size_t c = 0; c < cols_; ++c) y[c] += a[c] * xr;
        }
        return y;
    }

    friend bool operator==(const Matrix &, const Matrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace ttc
