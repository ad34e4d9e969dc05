#include "gad/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace gad {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Rational& b = other.at(k, j);
                if (b != 0) out.at(i, j) += a * b;
            }
        }
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix difference shape mismatch");
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

Matrix Matrix::scaled(const Rational& c) const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * c;
    return out;
}

namespace {

// Forward elimination in place; returns pivot (row, col) pairs.
std::vector<std::pair<std::size_t, std::size_t>> eliminate(Matrix& m) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m.at(pr, col) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t j = col; j < m.cols(); ++j)
                std::swap(m.at(pr, j), m.at(row, j));
        Rational inv = Rational(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const Rational f = m.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) -= f * m.at(row, j);
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t Matrix::rank() const {
    Matrix m = *this;
    return eliminate(m).size();
}

std::vector<std::size_t> Matrix::pivot_columns() const {
    Matrix m = *this;
    auto pivots = eliminate(m);
    std::vector<std::size_t> cols;
    for (auto [r, c] : pivots) cols.push_back(c);
    return cols;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& which) const {
    Matrix out(rows_, which.size());
    for (std::size_t j = 0; j < which.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) out.at(i, j) = at(i, which[j]);
    return out;
}

Matrix Matrix::solve(const Matrix& rhs) const {
    if (rows_ != rhs.rows()) throw std::invalid_argument("solve: shape mismatch");
    Matrix aug(rows_, cols_ + rhs.cols());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < rhs.cols(); ++j) aug.at(i, cols_ + j) = rhs.at(i, j);
    }
    Matrix work = aug;
    auto pivots = eliminate(work);
    Matrix x(cols_, rhs.cols());
    for (auto [r, c] : pivots) {
        if (c >= cols_) throw std::invalid_argument("solve: inconsistent system");
        for (std::size_t j = 0; j < rhs.cols(); ++j) x.at(c, j) = work.at(r, cols_ + j);
    }
    // Consistency: rows below the last pivot must be entirely zero.
    for (std::size_t i = pivots.size(); i < rows_; ++i)
        for (std::size_t j = cols_; j < aug.cols(); ++j)
            if (work.at(i, j) != 0) throw std::invalid_argument("solve: inconsistent system");
    return x;
}

}  // namespace gad
