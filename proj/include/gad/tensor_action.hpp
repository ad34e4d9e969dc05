#pragma once

#include <cstddef>

#include "gad/group_algebra.hpp"
#include "gad/matrix.hpp"

namespace gad {

// Construction cap on the total tensor dimension e^n; overridable via
// the GAD_MAX_TENSOR_DIM environment variable.
std::size_t tensor_cap();

// Right action of x in Q[S_n] on the n-th tensor power of an
// e-dimensional rational space, permuting factors. Basis is the
// lexicographic tensor basis; v_s * sigma has factor sigma(k) of v_s in
// slot k, so action(x*y) = action(y) compose action(x).
class TensorAction {
  public:
    TensorAction(GroupAlgebraElement x, std::size_t e);

    std::size_t e() const { return e_; }
    std::size_t n() const { return x_.degree(); }
    std::size_t total_dim() const { return total_dim_; }

    // Full e^n x e^n matrix; throws if e^n exceeds the cap.
    Matrix dense() const;

    // Exact rank, computed blockwise: the action preserves the content
    // (value multiset) of a basis tensor, so the matrix is block
    // diagonal over contents.
    std::size_t rank() const;

    // Column s of the operator matrix as sparse (row, coeff) pairs.
    std::vector<std::pair<std::size_t, Rational>> column(std::size_t s) const;

    // Global column indices whose operator columns form a basis of the
    // image (per-content-block pivot columns), ascending.
    std::vector<std::size_t> image_basis_columns() const;

  private:
    GroupAlgebraElement x_;
    std::size_t e_;
    std::size_t total_dim_;
};

// Matrix of the n-fold tensor power of a linear map m (rows x cols),
// acting between lexicographic tensor bases.
Matrix tensor_power_of_map(const Matrix& m, std::size_t n);

}  // namespace gad
