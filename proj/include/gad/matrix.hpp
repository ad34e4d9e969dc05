#pragma once

#include <cstddef>
#include <vector>

#include "gad/rational.hpp"

namespace gad {

// Dense exact-rational matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix operator*(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix scaled(const Rational& c) const;
    bool operator==(const Matrix&) const = default;

    std::size_t rank() const;
    // Indices of a maximal set of linearly independent columns
    // (pivot columns of the reduced echelon form), in increasing order.
    std::vector<std::size_t> pivot_columns() const;
    // Columns selected by `which`, as a new matrix.
    Matrix select_columns(const std::vector<std::size_t>& which) const;
    // Solve self * X = rhs; throws if inconsistent or rank-deficient in a
    // way that leaves the system unsolvable. Free variables are set to 0.
    Matrix solve(const Matrix& rhs) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

}  // namespace gad
