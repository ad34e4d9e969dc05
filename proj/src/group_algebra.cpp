#include "gad/group_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace gad {

GroupAlgebraElement GroupAlgebraElement::unit(std::size_t degree) {
    GroupAlgebraElement x(degree);
    x.add_term(Permutation::identity(degree), 1);
    return x;
}

Rational GroupAlgebraElement::coeff(const Permutation& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
}

void GroupAlgebraElement::add_term(const Permutation& p, const Rational& c) {
    if (p.degree() != degree_) throw std::invalid_argument("group algebra degree mismatch");
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(p, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& other) const {
    GroupAlgebraElement out = *this;
    for (const auto& [p, c] : other.terms_) out.add_term(p, c);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& other) const {
    GroupAlgebraElement out = *this;
    for (const auto& [p, c] : other.terms_) out.add_term(p, -c);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& other) const {
    if (degree_ != other.degree_) throw std::invalid_argument("group algebra degree mismatch");
    GroupAlgebraElement out(degree_);
    for (const auto& [p, a] : terms_)
        for (const auto& [q, b] : other.terms_) out.add_term(p.compose(q), a * b);
    return out;
}

GroupAlgebraElement GroupAlgebraElement::scaled(const Rational& c) const {
    GroupAlgebraElement out(degree_);
    if (c == 0) return out;
    for (const auto& [p, a] : terms_) out.add_term(p, a * c);
    return out;
}

std::string GroupAlgebraElement::to_json_string() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [p, c] : terms_) j[p.to_string()] = rational_to_string(c);
    return j.dump();
}

GroupAlgebraElement GroupAlgebraElement::from_json_string(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::size_t degree = 0;
    std::vector<std::pair<Permutation, Rational>> terms;
    for (auto it = j.begin(); it != j.end(); ++it) {
        Permutation p = Permutation::parse(it.key());
        degree = p.degree();
        terms.emplace_back(p, rational_from_string(it.value().get<std::string>()));
    }
    GroupAlgebraElement out(degree);
    for (auto& [p, c] : terms) out.add_term(p, c);
    return out;
}

YoungTableau canonical_tableau(const Partition& lam) {
    YoungTableau t;
    t.shape = lam;
    unsigned long next = 1;
    for (unsigned long p : lam.parts()) {
        std::vector<unsigned long> row;
        for (unsigned long j = 0; j < p; ++j) row.push_back(next++);
        t.labels.push_back(std::move(row));
    }
    return t;
}

namespace {

// Sum over the subgroup permuting each group's labels among themselves,
// weighting by sign when signed.
GroupAlgebraElement group_sum(std::size_t n,
                              const std::vector<std::vector<unsigned long>>& groups,
                              bool with_sign) {
    GroupAlgebraElement out(n);
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), 0);
    std::vector<std::vector<unsigned long>> perms(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) perms[g] = groups[g];

    // Iterate over the cartesian product of per-group permutations.
    auto emit = [&]() {
        std::vector<std::size_t> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (std::size_t k = 0; k < groups[g].size(); ++k)
                img[groups[g][k] - 1] = perms[g][k] - 1;
        Permutation p(std::move(img));
        out.add_term(p, with_sign ? Rational(p.sign()) : Rational(1));
    };
    // Recursive product over groups.
    auto rec = [&](auto&& self, std::size_t g) -> void {
        if (g == groups.size()) {
            emit();
            return;
        }
        std::sort(perms[g].begin(), perms[g].end());
        do {
            self(self, g + 1);
        } while (std::next_permutation(perms[g].begin(), perms[g].end()));
    };
    rec(rec, 0);
    return out;
}

}  // namespace

GroupAlgebraElement row_symmetrizer(const YoungTableau& t) {
    return group_sum(t.shape.weight(), t.labels, false);
}

GroupAlgebraElement column_antisymmetrizer(const YoungTableau& t) {
    std::vector<std::vector<unsigned long>> cols;
    if (!t.labels.empty()) {
        cols.resize(t.labels[0].size());
        for (const auto& row : t.labels)
            for (std::size_t j = 0; j < row.size(); ++j) cols[j].push_back(row[j]);
    }
    return group_sum(t.shape.weight(), cols, true);
}

GroupAlgebraElement young_symmetrizer(const Partition& lam) {
    auto t = canonical_tableau(lam);
    return row_symmetrizer(t) * column_antisymmetrizer(t);
}

GroupAlgebraElement young_idempotent(const Partition& lam) {
    if (lam.is_zero()) throw std::invalid_argument("young_idempotent: zero partition");
    unsigned long long fact = 1;
    for (unsigned long k = 1; k <= lam.weight(); ++k) fact *= k;
    Rational scale(Integer(lam.num_standard_tableaux()), Integer(fact));
    return young_symmetrizer(lam).scaled(scale);
}

}  // namespace gad
