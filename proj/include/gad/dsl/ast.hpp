#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gad/partition.hpp"
#include "gad/rational.hpp"

namespace gad::dsl {

struct Span {
    int line = 0, col = 0;
    bool operator==(const Span&) const { return true; }  // spans never affect equality
};

enum class ExprKind {
    Omega,      // omega(X)
    Structure,  // structure(X)
    Line,       // declared line bundle by name
    Bundle,     // declared vector bundle by name
    Push,       // push(f, expr)
    RPush,      // rpush(i, f, expr)
    Tensor,     // a * b
    Schur,      // schur([2,1], expr)
    SchurPlus,  // schur_plus([2,1], expr)
    Det,        // det(expr)
    Dual,       // dual(expr)
    TwistCeil,  // twist_ceil(line-expr, D)
};

struct SheafExpr;
using ExprPtr = std::shared_ptr<const SheafExpr>;

struct SheafExpr {
    ExprKind kind{};
    std::string name;   // variety / line / bundle / morphism / divisor name
    int index = 0;      // rpush degree
    Partition lambda;   // schur shapes
    ExprPtr a, b;       // children
    Span span;

    bool operator==(const SheafExpr& o) const;
};

std::string to_string(const ExprPtr& e);  // canonical rendering

struct Variety {
    std::string name;
    unsigned dim = 0;
    std::set<std::string> flags;  // smooth, projective, rational_singularities, irreducible
};

struct Morphism {
    std::string name, source, target;
    // surjective, generically_finite, birational, finite, etale, smooth_morphism
    std::set<std::string> flags;
};

struct DivisorComponent {
    std::string name;
    Rational coeff;
    bool operator==(const DivisorComponent&) const = default;
};

struct Divisor {
    std::string name, variety;
    std::vector<DivisorComponent> components;
    std::set<std::string> flags;  // normal_crossing, reduced, effective
};

struct LineBundle {
    std::string name, variety;
    std::set<std::string> flags;  // ample, nef, big, very_ample, canonical
};

struct Bundle {
    std::string name, variety;
    unsigned rank = 1;
    // nef, big, ample, globally_generated, strongly_semistable,
    // unitary_flat, uniformly_nef, c1_zero
    std::set<std::string> flags;
};

struct SheafDef {
    std::string name;
    ExprPtr expr;
};

// Declared relations between expressions or named objects.
//   extension  F2 of F3 by F1        (0 -> F1 -> F2 -> F3 -> 0)
//   summand    S of F
//   quotient   F of E                (locally free quotient)
//   sum        E = E1 + E2
//   det        E = L
//   reldual    E via f               (E is the relative canonical pushforward)
//   cotangent  E of X
//   zero_scheme Z of E               (Z cut out by a regular section of E)
//   base_locus E = b
//   nefbig_pair L D
struct Fact {
    std::string kind;
    std::vector<std::string> names;
    ExprPtr e1, e2, e3;
    long value = 0;
    Span span;
};

struct Query {
    // acyclic, semipositive, positive, nef, big, vanishing_range,
    // koszul_restriction, connectedness, qlambda
    std::string kind;
    ExprPtr subject;
    std::string name2;  // koszul_restriction: Z; connectedness: Z; qlambda: X
    Partition lambda;   // qlambda
    Span span;
};

struct Context {
    std::map<std::string, Variety> varieties;
    std::map<std::string, Morphism> morphisms;
    std::map<std::string, Divisor> divisors;
    std::map<std::string, LineBundle> line_bundles;
    std::map<std::string, Bundle> bundles;
    std::vector<SheafDef> sheaves;  // in declaration order
    std::vector<Fact> facts;
    // Declaration order per category, for printing.
    std::vector<std::string> variety_order, morphism_order, divisor_order,
        line_bundle_order, bundle_order;

    const SheafDef* find_sheaf(const std::string& name) const;
};

struct Document {
    Context ctx;
    std::vector<Query> queries;
};

bool structurally_equal(const Document& a, const Document& b);

// Ambient variety of an expression; throws std::invalid_argument on
// bookkeeping mismatches (tensor across different varieties, push from
// the wrong source).
std::string ambient_variety(const Context& ctx, const ExprPtr& e);

// Rank of a locally free expression, when determined by declarations.
// Returns 0 for expressions that denote the zero sheaf.
unsigned long long expr_rank(const Context& ctx, const ExprPtr& e);

}  // namespace gad::dsl
