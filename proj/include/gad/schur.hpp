#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gad/matrix.hpp"
#include "gad/partition.hpp"

namespace gad {

struct SchurModule {
    Partition shape;
    std::size_t ambient_dim = 0;
    std::size_t dim = 0;
    // Basis of the image of e_lambda inside the |lambda|-th tensor
    // power, one column per basis vector; present when the module was
    // explicitly constructed.
    std::optional<Matrix> basis;
};

using DecompositionMultiset = std::map<Partition, unsigned long long>;

// Hook-content value prod (e + j - i) / hook(i,j); 0 when length > e.
unsigned long long schur_dim(const Partition& lam, std::size_t e);

// Weyl dimension of the irreducible with dominant (nonincreasing)
// integer highest weight w of length e; valid for negative entries.
unsigned long long weyl_dim(const std::vector<long>& w);

// Image of the idempotent action on the tensor power, with basis.
SchurModule schur_apply(const Partition& lam, std::size_t e);

// Dimension of the cokernel of (1 - e_lambda) on the tensor power.
std::size_t schur_quotient(const Partition& lam, std::size_t e);

// Induced map on Schur powers of a linear map (cols-dim space to
// rows-dim space): restrict the |lambda|-fold tensor power of m to the
// images of e_lambda.
Matrix schur_of_map(const Partition& lam, const Matrix& m);

// lambda |-> f^lambda over partitions of n.
DecompositionMultiset tensor_power_multiplicities(unsigned long n);

// nu |-> c^nu_{lambda,mu} by lattice-word skew tableau enumeration.
DecompositionMultiset littlewood_richardson(const Partition& lam, const Partition& mu);

// Closed Pieri rule: nu with multiplicity 1 when nu/lambda is a
// horizontal k-strip.
DecompositionMultiset pieri(const Partition& lam, unsigned long k);

struct CauchyPiece {
    unsigned long deg_first = 0, deg_second = 0;
    unsigned long long dim = 0;
};
// Graded pieces S^a(E1) (x) S^{n-a}(E2) of S^n(E1 + E2).
std::vector<CauchyPiece> cauchy_sum_decomposition(unsigned long n, std::size_t e1,
                                                  std::size_t e2);

struct SummandWitness {
    bool found = false;
    std::vector<unsigned long> exponents;  // N_i, one per row of lambda
};
// lambda occurs in S^{lambda_1}(E) (x) ... (x) S^{lambda_r}(E).
SummandWitness summand_in_symmetric_product(const Partition& lam, std::size_t e);

// Monomial (Kostka) expansion of the Schur polynomial in r variables:
// exponent vector -> multiplicity, by semistandard tableau enumeration.
std::map<std::vector<unsigned long>, unsigned long long> monomial_expansion(
    const Partition& lam, std::size_t r);

}  // namespace gad
