#include "gad/tensor_action.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>

namespace gad {

std::size_t tensor_cap() {
    if (const char* env = std::getenv("GAD_MAX_TENSOR_DIM")) {
        unsigned long v = std::stoul(env);
        if (v >= 1) return v;
    }
    return 4096;
}

namespace {

std::size_t pow_checked(std::size_t e, std::size_t n) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (e != 0 && out > (std::size_t(1) << 40)) throw std::overflow_error("tensor dimension overflow");
        out *= e;
    }
    return out;
}

// Sequence s: [n] -> [e] from its lexicographic index.
std::vector<std::size_t> unrank(std::size_t idx, std::size_t e, std::size_t n) {
    std::vector<std::size_t> s(n);
    for (std::size_t k = n; k-- > 0;) {
        s[k] = idx % e;
        idx /= e;
    }
    return s;
}

std::size_t rank_of(const std::vector<std::size_t>& s, std::size_t e) {
    std::size_t idx = 0;
    for (std::size_t v : s) idx = idx * e + v;
    return idx;
}

std::vector<std::size_t> permute_seq(const std::vector<std::size_t>& s, const Permutation& p) {
    std::vector<std::size_t> t(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) t[k] = s[p.apply(k)];
    return t;
}

}  // namespace

TensorAction::TensorAction(GroupAlgebraElement x, std::size_t e)
    : x_(std::move(x)), e_(e), total_dim_(pow_checked(e, x_.degree())) {}

Matrix TensorAction::dense() const {
    if (total_dim_ > tensor_cap())
        throw std::length_error("tensor dimension " + std::to_string(total_dim_) +
                                " exceeds cap " + std::to_string(tensor_cap()));
    Matrix m(total_dim_, total_dim_);
    for (std::size_t s = 0; s < total_dim_; ++s) {
        auto seq = unrank(s, e_, n());
        for (const auto& [p, c] : x_.terms())
            m.at(rank_of(permute_seq(seq, p), e_), s) += c;
    }
    return m;
}

std::size_t TensorAction::rank() const {
    if (total_dim_ > tensor_cap())
        throw std::length_error("tensor dimension " + std::to_string(total_dim_) +
                                " exceeds cap " + std::to_string(tensor_cap()));
    // Group basis indices by content.
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> blocks;
    for (std::size_t s = 0; s < total_dim_; ++s) {
        auto seq = unrank(s, e_, n());
        std::vector<std::size_t> content(e_, 0);
        for (std::size_t v : seq) ++content[v];
        blocks[content].push_back(s);
    }
    std::size_t total = 0;
    for (const auto& [content, indices] : blocks) {
        std::map<std::size_t, std::size_t> local;
        for (std::size_t i = 0; i < indices.size(); ++i) local[indices[i]] = i;
        Matrix b(indices.size(), indices.size());
        for (std::size_t j = 0; j < indices.size(); ++j) {
            auto seq = unrank(indices[j], e_, n());
            for (const auto& [p, c] : x_.terms())
                b.at(local.at(rank_of(permute_seq(seq, p), e_)), j) += c;
        }
        total += b.rank();
    }
    return total;
}

std::vector<std::pair<std::size_t, Rational>> TensorAction::column(std::size_t s) const {
    std::map<std::size_t, Rational> acc;
    auto seq = unrank(s, e_, n());
    for (const auto& [p, c] : x_.terms()) acc[rank_of(permute_seq(seq, p), e_)] += c;
    std::vector<std::pair<std::size_t, Rational>> out;
    for (auto& [r, c] : acc)
        if (c != 0) out.emplace_back(r, c);
    return out;
}

std::vector<std::size_t> TensorAction::image_basis_columns() const {
    if (total_dim_ > tensor_cap())
        throw std::length_error("tensor dimension exceeds cap");
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> blocks;
    for (std::size_t s = 0; s < total_dim_; ++s) {
        auto seq = unrank(s, e_, n());
        std::vector<std::size_t> content(e_, 0);
        for (std::size_t v : seq) ++content[v];
        blocks[content].push_back(s);
    }
    std::vector<std::size_t> out;
    for (const auto& [content, indices] : blocks) {
        std::map<std::size_t, std::size_t> local;
        for (std::size_t i = 0; i < indices.size(); ++i) local[indices[i]] = i;
        Matrix b(indices.size(), indices.size());
        for (std::size_t j = 0; j < indices.size(); ++j)
            for (const auto& [r, c] : column(indices[j])) b.at(local.at(r), j) += c;
        for (std::size_t p : b.pivot_columns()) out.push_back(indices[p]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Matrix tensor_power_of_map(const Matrix& m, std::size_t n) {
    std::size_t rows = pow_checked(m.rows(), n);
    std::size_t cols = pow_checked(m.cols(), n);
    if (rows > tensor_cap() || cols > tensor_cap())
        throw std::length_error("tensor power of map exceeds cap");
    Matrix out(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        auto src = unrank(j, m.cols(), n);
        // Expand the product over slots recursively.
        std::vector<std::size_t> dst(n, 0);
        auto rec = [&](auto&& self, std::size_t slot, const Rational& acc) -> void {
            if (acc == 0) return;
            if (slot == n) {
                out.at(rank_of(dst, m.rows()), j) += acc;
                return;
            }
            for (std::size_t i = 0; i < m.rows(); ++i) {
                const Rational& v = m.at(i, src[slot]);
                if (v == 0) continue;
                dst[slot] = i;
                self(self, slot + 1, acc * v);
            }
        };
        rec(rec, 0, Rational(1));
    }
    return out;
}

}  // namespace gad
