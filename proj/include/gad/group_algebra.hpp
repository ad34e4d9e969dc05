#pragma once

#include <map>
#include <string>

#include "gad/partition.hpp"
#include "gad/permutation.hpp"
#include "gad/rational.hpp"

namespace gad {

// Formal rational combination of elements of S_n. Zero coefficients are
// never stored.
class GroupAlgebraElement {
  public:
    explicit GroupAlgebraElement(std::size_t degree) : degree_(degree) {}
    static GroupAlgebraElement unit(std::size_t degree);  // 1 * id

    std::size_t degree() const { return degree_; }
    const std::map<Permutation, Rational>& terms() const { return terms_; }
    Rational coeff(const Permutation& p) const;
    std::size_t num_terms() const { return terms_.size(); }

    void add_term(const Permutation& p, const Rational& c);

    GroupAlgebraElement operator+(const GroupAlgebraElement& other) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& other) const;
    GroupAlgebraElement operator*(const GroupAlgebraElement& other) const;
    GroupAlgebraElement scaled(const Rational& c) const;

    bool operator==(const GroupAlgebraElement&) const = default;

    std::string to_json_string() const;  // {"one-line": "p/q", ...}
    static GroupAlgebraElement from_json_string(const std::string& text);

  private:
    std::size_t degree_ = 0;
    std::map<Permutation, Rational> terms_;
};

struct YoungTableau {
    Partition shape;
    // labels[i][j] in {1..|shape|}, row i (0-based), col j (0-based).
    std::vector<std::vector<unsigned long>> labels;
};

// Row-major filling: label cells left-to-right, top-to-bottom.
YoungTableau canonical_tableau(const Partition& lam);

// Sum over permutations preserving each row's label set.
GroupAlgebraElement row_symmetrizer(const YoungTableau& t);

// Signed sum over permutations preserving each column's label set.
GroupAlgebraElement column_antisymmetrizer(const YoungTableau& t);

// c_lambda = row_symmetrizer * column_antisymmetrizer on the canonical
// tableau (integer coefficients).
GroupAlgebraElement young_symmetrizer(const Partition& lam);

// e_lambda = (f^lambda / |lambda|!) * c_lambda; satisfies e*e = e.
GroupAlgebraElement young_idempotent(const Partition& lam);

}  // namespace gad
