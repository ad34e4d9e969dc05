#include "gad/bwb.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "gad/schur.hpp"

namespace gad {

long long CohomologyTable::euler_characteristic() const {
    long long chi = 0;
    for (const auto& [deg, d] : dims)
        chi += (deg % 2 == 0 ? 1 : -1) * static_cast<long long>(d);
    return chi;
}

std::string CohomologyTable::to_json_string() const {
    nlohmann::ordered_json j;
    j["h"] = nlohmann::ordered_json::object();
    for (const auto& [deg, d] : dims) j["h"][std::to_string(deg)] = d;
    if (!label.empty()) j["label"] = label;
    return j.dump();
}

CohomologyTable bwb_cohomology(const WeightVector& w) {
    CohomologyTable out;
    std::size_t e = w.size();
    std::vector<long> shifted(e);
    for (std::size_t i = 0; i < e; ++i) shifted[i] = w[i] + static_cast<long>(e - 1 - i);
    std::set<long> uniq(shifted.begin(), shifted.end());
    if (uniq.size() < e) return out;  // singular: no cohomology
    // Inversions of the permutation sorting shifted strictly decreasing.
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = i + 1; j < e; ++j)
            if (shifted[i] < shifted[j]) ++inversions;
    std::vector<long> sorted = shifted;
    std::sort(sorted.begin(), sorted.end(), std::greater<long>());
    std::vector<long> highest(e);
    for (std::size_t i = 0; i < e; ++i) highest[i] = sorted[i] - static_cast<long>(e - 1 - i);
    out.dims[static_cast<int>(inversions)] = weyl_dim(highest);
    std::string label;
    for (std::size_t i = 0; i < e; ++i) {
        if (i) label += ',';
        label += std::to_string(highest[i]);
    }
    out.label = label;
    return out;
}

WeightVector twists_to_weight(const std::vector<std::pair<std::size_t, long>>& twists,
                              std::size_t e) {
    std::vector<long> w(e, 0);
    std::size_t prev = 0;
    for (auto [k, a] : twists) {
        if (k < 1 || k > e) throw std::out_of_range("twists_to_weight: index out of range");
        if (k <= prev) throw std::invalid_argument("twists_to_weight: indices must increase");
        prev = k;
        for (std::size_t j = 0; j < k; ++j) w[j] += a;
    }
    return w;
}

WeightVector canonical_weight(const std::vector<std::size_t>& flag_indices, std::size_t e) {
    std::size_t m = flag_indices.size();
    if (m == 0) throw std::invalid_argument("canonical_weight: empty index list");
    for (std::size_t i = 0; i < m; ++i) {
        if (flag_indices[i] < 1 || (i > 0 && flag_indices[i] <= flag_indices[i - 1]))
            throw std::invalid_argument("canonical_weight: indices must strictly increase");
    }
    if (flag_indices[m - 1] >= e)
        throw std::invalid_argument("canonical_weight: largest index must be < e");
    std::vector<std::pair<std::size_t, long>> twists;
    for (std::size_t i = 0; i < m; ++i) {
        long prev = (i == 0) ? 0 : static_cast<long>(flag_indices[i - 1]);
        long next = (i + 1 < m) ? static_cast<long>(flag_indices[i + 1])
                                : static_cast<long>(e);
        twists.emplace_back(flag_indices[i], prev - next);
    }
    twists.emplace_back(e, static_cast<long>(flag_indices[m - 1]));  // det exponent
    return twists_to_weight(twists, e);
}

namespace {
unsigned long long binom(long n, long k) {
    if (k < 0 || n < k) return 0;
    Integer out = 1;
    for (long i = 1; i <= k; ++i) {
        out *= Integer(n - k + i);
        out /= Integer(i);
    }
    return out.convert_to<unsigned long long>();
}
}  // namespace

CohomologyTable bott_formula(unsigned n, unsigned p, long k) {
    if (p > n) throw std::invalid_argument("bott_formula: p > n");
    CohomologyTable out;
    long pl = static_cast<long>(p), nl = static_cast<long>(n);
    if (k > pl) {
        out.dims[0] = binom(k + nl - pl, nl - pl) * binom(k - 1, pl);
    } else if (k == 0) {
        out.dims[static_cast<int>(p)] = 1;
    } else if (k < pl - nl) {
        out.dims[static_cast<int>(n)] = binom(-k - 1, nl - pl) * binom(-k + pl, pl);
    }
    return out;
}

unsigned long long verify_tangent_counterexample(unsigned n, unsigned i) {
    if (i == 0 || i >= n)
        throw std::invalid_argument("verify_tangent_counterexample: need 0 < i < n");
    // omega tensor wedge^i T is Omega^{n-i}; take H^{n-i}.
    return bott_formula(n, n - i, 0).dim(static_cast<int>(n - i));
}

CohomologyTable line_bundle_cohomology_pn(unsigned n, long d) {
    CohomologyTable out;
    long nl = static_cast<long>(n);
    if (d >= 0)
        out.dims[0] = binom(nl + d, nl);
    else if (d <= -nl - 1)
        out.dims[static_cast<int>(n)] = binom(-d - 1, nl);
    return out;
}

CohomologyTable split_bundle_cohomology(unsigned n, const std::vector<long>& degrees,
                                        const Partition& lam, long twist,
                                        bool with_canonical) {
    if (degrees.empty()) throw std::invalid_argument("split_bundle_cohomology: empty bundle");
    CohomologyTable out;
    long base = twist + (with_canonical ? -(static_cast<long>(n) + 1) : 0);
    for (const auto& [alpha, mult] : monomial_expansion(lam, degrees.size())) {
        long d = base;
        for (std::size_t i = 0; i < degrees.size(); ++i)
            d += static_cast<long>(alpha[i]) * degrees[i];
        for (const auto& [deg, dim] : line_bundle_cohomology_pn(n, d).dims) {
            auto& slot = out.dims[deg];
            slot += mult * dim;
        }
    }
    // Drop explicit zeros (cannot arise, but keep the invariant tight).
    for (auto it = out.dims.begin(); it != out.dims.end();)
        it = (it->second == 0) ? out.dims.erase(it) : std::next(it);
    return out;
}

}  // namespace gad
