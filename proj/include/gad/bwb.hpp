#pragma once

#include <map>
#include <string>
#include <vector>

#include "gad/partition.hpp"

namespace gad {

// Integer weight on the full flag variety of a rank-e space; dominant
// iff nonincreasing.
using WeightVector = std::vector<long>;

struct CohomologyTable {
    std::map<int, unsigned long long> dims;  // degree -> dimension, zeros omitted
    std::string label;  // generalized partition in the nonzero degree, if any

    unsigned long long dim(int degree) const {
        auto it = dims.find(degree);
        return it == dims.end() ? 0 : it->second;
    }
    bool all_zero() const { return dims.empty(); }
    long long euler_characteristic() const;
    std::string to_json_string() const;  // {"h": {"0": d0, ...}, "label": "..."}
};

// Dot-action algorithm with rho = (e-1, ..., 0): singular weights give
// the zero table, otherwise cohomology concentrates in the inversion
// count of the sorting permutation.
CohomologyTable bwb_cohomology(const WeightVector& w);

// Weight with consecutive differences a_i at positions k_i; index e
// carries the det exponent.
WeightVector twists_to_weight(
    const std::vector<std::pair<std::size_t, long>>& twists, std::size_t e);

// Weight of the relative dualizing bundle of the partial flag variety
// of type k_1 < ... < k_m over a point: det exponent k_m plus twist
// k_{i-1} - k_{i+1} at each k_i (k_0 = 0, k_{m+1} = e).
WeightVector canonical_weight(const std::vector<std::size_t>& flag_indices, std::size_t e);

// dims of H^q(P^n, Omega^p(k)) for all q.
CohomologyTable bott_formula(unsigned n, unsigned p, long k);

// dim H^{n-i}(P^n, omega tensor wedge^i T) = dim H^{n-i}(Omega^{n-i});
// nonzero for 0 < i < n.
unsigned long long verify_tangent_counterexample(unsigned n, unsigned i);

// h^q(P^n, O(d)) for all q (nonzero only at q = 0 or q = n).
CohomologyTable line_bundle_cohomology_pn(unsigned n, long d);

// Cohomology of S^lambda(O(d_1) + ... + O(d_r)) twisted by O(twist)
// and optionally by omega = O(-n-1), summed over the monomial
// decomposition into line bundles.
CohomologyTable split_bundle_cohomology(unsigned n, const std::vector<long>& degrees,
                                        const Partition& lam, long twist,
                                        bool with_canonical);

}  // namespace gad
