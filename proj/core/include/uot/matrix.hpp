#pragma once

#include <cstddef>
#include <vector>

#include "uot/errors.hpp"

namespace uot {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Instances in this library are at most
// a few hundred per side, so no blocking or sparsity is attempted.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix ones(std::size_t rows, std::size_t cols) {
        return Matrix(rows, cols, 1.0);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// All reductions below accumulate left-to-right in index order so that
// repeated runs produce bit-identical results.
Vector row_sums(const Matrix& m);
Vector col_sums(const Matrix& m);
double max_entry(const Matrix& m);

inline void require_same_shape(const Matrix& x, const Matrix& y, const char* where) {
    if (!x.same_shape(y)) {
        throw DimensionMismatch(std::string(where) + ": shapes differ");
    }
}

}  // namespace uot
