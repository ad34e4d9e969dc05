#include "gad/schur.hpp"

#include <algorithm>
#include <stdexcept>

#include "gad/group_algebra.hpp"
#include "gad/tensor_action.hpp"

namespace gad {

unsigned long long schur_dim(const Partition& lam, std::size_t e) {
    if (lam.length() > e) return 0;
    Integer num = 1, den = 1;
    for (Cell c : lam.cells()) {
        long content = static_cast<long>(c.col) - static_cast<long>(c.row);
        num *= Integer(static_cast<long>(e) + content);
        den *= Integer(lam.hook_length(c));
    }
    Integer d = num / den;
    return d.convert_to<unsigned long long>();
}

unsigned long long weyl_dim(const std::vector<long>& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] < w[i + 1]) throw std::invalid_argument("weyl_dim: weight not dominant");
    Integer num = 1, den = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            num *= Integer(w[i] - w[j] + static_cast<long>(j - i));
            den *= Integer(static_cast<long>(j - i));
        }
    Integer d = num / den;
    return d.convert_to<unsigned long long>();
}

namespace {

// Per-content-block image basis of the idempotent action.
SchurModule build_schur_module(const Partition& lam, std::size_t e) {
    SchurModule mod;
    mod.shape = lam;
    mod.ambient_dim = e;
    if (lam.is_zero()) {
        mod.dim = 1;
        mod.basis = Matrix::identity(1);
        return mod;
    }
    auto idem = young_idempotent(lam);
    TensorAction action(idem, e);
    auto cols = action.image_basis_columns();
    Matrix basis(action.total_dim(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, c] : action.column(cols[j])) basis.at(r, j) = c;
    mod.basis = std::move(basis);
    mod.dim = cols.size();
    return mod;
}

}  // namespace

SchurModule schur_apply(const Partition& lam, std::size_t e) {
    return build_schur_module(lam, e);
}

std::size_t schur_quotient(const Partition& lam, std::size_t e) {
    if (lam.is_zero()) return 1;
    auto idem = young_idempotent(lam);
    auto one_minus = GroupAlgebraElement::unit(idem.degree()) - idem;
    TensorAction action(one_minus, e);
    return action.total_dim() - action.rank();
}

Matrix schur_of_map(const Partition& lam, const Matrix& m) {
    std::size_t n = lam.weight();
    SchurModule src = schur_apply(lam, m.cols());
    SchurModule dst = schur_apply(lam, m.rows());
    if (src.dim == 0 || dst.dim == 0) return Matrix(dst.dim, src.dim);
    Matrix big = tensor_power_of_map(m, n);
    Matrix mapped = big * *src.basis;
    return dst.basis->solve(mapped);
}

DecompositionMultiset tensor_power_multiplicities(unsigned long n) {
    if (n > 8) throw std::invalid_argument("tensor_power_multiplicities: n > 8");
    DecompositionMultiset out;
    for (const Partition& lam : partitions_of(n)) out[lam] = lam.num_standard_tableaux();
    return out;
}

namespace {

bool contains(const Partition& nu, const Partition& lam) {
    for (std::size_t i = 1; i <= lam.length(); ++i)
        if (nu.part(i) < lam.part(i)) return false;
    return true;
}

// Count semistandard fillings of nu/lam with content mu whose
// right-to-left, top-to-bottom reading word is a lattice word.
unsigned long long lr_fillings(const Partition& nu, const Partition& lam,
                               const Partition& mu) {
    std::size_t rows = nu.length();
    std::vector<std::vector<unsigned long>> fill(rows);
    for (std::size_t i = 0; i < rows; ++i) fill[i].assign(nu.part(i + 1), 0);
    std::vector<unsigned long> remaining(mu.parts().begin(), mu.parts().end());

    auto column_above = [&](std::size_t r, std::size_t c) -> unsigned long {
        // Entry directly above (0 when in the fixed inner shape or absent).
        if (r == 0) return 0;
        if (c < lam.part(r)) return 0;  // above cell is part of lam
        if (c >= nu.part(r)) return 0;
        return fill[r - 1][c];
    };

    unsigned long long count = 0;
    auto rec = [&](auto&& self, std::size_t r, std::size_t c) -> void {
        if (r == rows) {
            // Check the lattice condition on the reading word.
            std::vector<long> seen(mu.length() + 1, 0);
            for (std::size_t i = 0; i < rows; ++i) {
                for (std::size_t j = fill[i].size(); j-- > lam.part(i + 1);) {
                    unsigned long v = fill[i][j];
                    ++seen[v - 1];
                    if (v >= 2 && seen[v - 1] > seen[v - 2]) return;
                }
            }
            ++count;
            return;
        }
        if (c >= nu.part(r + 1)) {
            self(self, r + 1, r + 1 < rows ? lam.part(r + 2) : 0);
            return;
        }
        unsigned long lo = 1, hi = mu.length();
        if (c > lam.part(r + 1)) lo = std::max(lo, fill[r][c - 1]);  // weak rows
        unsigned long above = column_above(r, c);
        if (above > 0) lo = std::max(lo, above + 1);  // strict columns
        for (unsigned long v = lo; v <= hi; ++v) {
            if (remaining[v - 1] == 0) continue;
            fill[r][c] = v;
            --remaining[v - 1];
            self(self, r, c + 1);
            ++remaining[v - 1];
            fill[r][c] = 0;
        }
    };
    if (rows == 0) return 1;
    rec(rec, 0, lam.part(1));
    return count;
}

}  // namespace

DecompositionMultiset littlewood_richardson(const Partition& lam, const Partition& mu) {
    if (lam.weight() + mu.weight() > 10)
        throw std::invalid_argument("littlewood_richardson: |lambda|+|mu| > 10");
    if (mu.is_zero()) return {{lam, 1}};
    if (lam.is_zero()) return {{mu, 1}};
    DecompositionMultiset out;
    for (const Partition& nu : partitions_of(lam.weight() + mu.weight())) {
        if (!contains(nu, lam)) continue;
        unsigned long long c = lr_fillings(nu, lam, mu);
        if (c > 0) out[nu] = c;
    }
    return out;
}

DecompositionMultiset pieri(const Partition& lam, unsigned long k) {
    DecompositionMultiset out;
    if (k == 0) {
        out[lam] = 1;
        return out;
    }
    std::size_t rows = lam.length() + 1;
    std::vector<unsigned long> nu(rows, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned long left) -> void {
        if (i == rows) {
            if (left == 0) out[Partition(std::vector<unsigned long>(nu))] = 1;
            return;
        }
        // Horizontal strip: lam_i <= nu_i <= lam_{i-1}; also nu nonincreasing.
        unsigned long lo = lam.part(i + 1);
        unsigned long hi = (i == 0) ? lam.part(1) + left : lam.part(i);
        if (i > 0) hi = std::min(hi, nu[i - 1]);
        for (unsigned long v = lo; v <= hi && v - lo <= left; ++v) {
            nu[i] = v;
            self(self, i + 1, left - (v - lo));
        }
    };
    rec(rec, 0, k);
    return out;
}

namespace {
unsigned long long binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Integer out = 1;
    for (unsigned long i = 1; i <= k; ++i) {
        out *= Integer(n - k + i);
        out /= Integer(i);
    }
    return out.convert_to<unsigned long long>();
}
}  // namespace

std::vector<CauchyPiece> cauchy_sum_decomposition(unsigned long n, std::size_t e1,
                                                  std::size_t e2) {
    std::vector<CauchyPiece> out;
    for (unsigned long a = n + 1; a-- > 0;) {
        CauchyPiece piece;
        piece.deg_first = a;
        piece.deg_second = n - a;
        piece.dim = schur_dim(Partition({a}), e1) * schur_dim(Partition({n - a}), e2);
        out.push_back(piece);
    }
    return out;
}

SummandWitness summand_in_symmetric_product(const Partition& lam, std::size_t e) {
    SummandWitness w;
    w.exponents.assign(lam.parts().begin(), lam.parts().end());
    if (lam.is_zero()) {
        w.found = true;
        return w;
    }
    DecompositionMultiset acc{{Partition({lam.part(1)}), 1}};
    for (std::size_t i = 2; i <= lam.length(); ++i) {
        DecompositionMultiset next;
        for (const auto& [nu, mult] : acc)
            for (const auto& [rho, one] : pieri(nu, lam.part(i))) next[rho] += mult * one;
        acc = std::move(next);
    }
    auto it = acc.find(lam);
    w.found = lam.length() <= e && it != acc.end() && it->second >= 1;
    return w;
}

std::map<std::vector<unsigned long>, unsigned long long> monomial_expansion(
    const Partition& lam, std::size_t r) {
    std::map<std::vector<unsigned long>, unsigned long long> out;
    if (lam.length() > r) return out;
    if (lam.is_zero()) {
        out[std::vector<unsigned long>(r, 0)] = 1;
        return out;
    }
    std::size_t rows = lam.length();
    std::vector<std::vector<unsigned long>> fill(rows);
    for (std::size_t i = 0; i < rows; ++i) fill[i].assign(lam.part(i + 1), 0);
    std::vector<unsigned long> content(r, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
        if (i == rows) {
            ++out[content];
            return;
        }
        if (j >= fill[i].size()) {
            self(self, i + 1, 0);
            return;
        }
        unsigned long lo = 1;
        if (j > 0) lo = std::max(lo, fill[i][j - 1]);
        if (i > 0 && j < fill[i - 1].size()) lo = std::max(lo, fill[i - 1][j] + 1);
        for (unsigned long v = lo; v <= r; ++v) {
            fill[i][j] = v;
            ++content[v - 1];
            self(self, i, j + 1);
            --content[v - 1];
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace gad
