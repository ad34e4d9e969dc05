#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gad/dsl/ast.hpp"

namespace gad::engine {

// Derivation tree. Leaves cite declared (or validator-derived) flags and
// facts; inner nodes name the rule that fired.
struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

struct Certificate {
    std::string conclusion;
    std::string rule;    // catalog id, or "declared" for leaves
    std::string anchor;  // statement of the rule / declaration cited
    std::vector<CertPtr> children;
};

std::string certificate_to_json(const CertPtr& cert);
std::string explain(const CertPtr& cert);

// Rule catalog metadata: fixed ids with their anchor statements, in the
// order the engine tries them.
const std::vector<std::pair<std::string, std::string>>& rule_catalog();
std::string rule_catalog_hash();

struct Claim {
    std::string kind;  // sheaf_vanishing | cohomology_vanishing |
                       // restriction_iso | restriction_inj | connected |
                       // invariant_stability
    std::string subject;
    std::string range;  // decidable degree predicate, e.g. "i>0"
    std::string rule;
    dsl::ExprPtr subject_expr;  // set when the subject is a sheaf expression
};

struct Options {
    bool pos_strict = false;  // require lambda_e strictly above the reduced length
    int max_depth = 12;       // bound on query expression depth
};

enum class Status { Derived, Unknown, DepthExceeded };

struct QueryResult {
    dsl::Query query;
    Status status = Status::Unknown;
    CertPtr certificate;
    std::vector<Claim> claims;
    std::string detail;
};

// One derivation session: saturates the finite expression universe of the
// document under the rule catalog, then answers queries from the memo
// table. Deterministic for identical inputs.
class Session {
public:
    Session(const dsl::Document& doc, Options opt = {});

    QueryResult run_query(const dsl::Query& q);
    std::vector<QueryResult> run_all();

    // Judgment lookup by property name ("GA", "GeomSemiPos", "GeomPos",
    // "Nef", "Big", "StronglySemistable", "UniformlyNef").
    CertPtr lookup(const std::string& property, const dsl::ExprPtr& subject) const;
    std::size_t num_judgments() const { return derived_.size(); }

    // Runs one more saturation pass; returns the number of new judgments
    // (zero once saturated).
    std::size_t resaturate();

    const dsl::Document& document() const { return doc_; }
    const Options& options() const { return opt_; }

private:
    dsl::Document doc_;
    Options opt_;
    std::map<std::string, dsl::ExprPtr> universe_;  // canonical string -> expr
    std::map<std::string, CertPtr> derived_;        // judgment key -> certificate

    void build_universe();
    void add_to_universe(const dsl::ExprPtr& e);
    void seed_declarations();
    void saturate();
    bool pass();  // one sweep over the catalog; true if anything new fired

    bool add(const std::string& key, CertPtr cert);
    CertPtr get(const std::string& key) const;

    std::vector<Claim> ga5_claims(const dsl::ExprPtr& subject, const CertPtr& cert) const;
};

std::string query_result_to_json(const QueryResult& r);
int exit_code(const std::vector<QueryResult>& results);

// --- Numerical harness -----------------------------------------------------

// Split-bundle instantiation on projective space: every declared bundle
// becomes a direct sum of line bundles O(d_i) (rank-many degrees), every
// line bundle a single degree. Text form: "n=2;E=1,1;L=3".
struct SplitInstantiation {
    unsigned n = 1;
    std::map<std::string, std::vector<long>> degrees;
};

SplitInstantiation parse_instantiation(const std::string& text);

enum class VerifyOutcome { Pass, Fail, NotInstantiable };
const char* to_string(VerifyOutcome v);

// Compiles the claim subject to a sum of line bundles on P^n and checks
// the claimed vanishing numerically. Pushforwards, twists by divisors,
// and non-cohomological claims are NotInstantiable.
VerifyOutcome verify_split(const Claim& claim, const dsl::Context& ctx,
                           const SplitInstantiation& inst);

// The compiled degree list (empty = zero sheaf), when instantiable.
std::optional<std::vector<long>> compile_split_degrees(const dsl::ExprPtr& e,
                                                       const dsl::Context& ctx,
                                                       const SplitInstantiation& inst);

}  // namespace gad::engine
