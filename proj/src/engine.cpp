#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "gad/engine/engine.hpp"

namespace gad::engine {

using dsl::ExprKind;
using dsl::ExprPtr;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Rule catalog
// ---------------------------------------------------------------------------

const std::vector<std::pair<std::string, std::string>>& rule_catalog() {
    static const std::vector<std::pair<std::string, std::string>> catalog = {
        {"GA1",
         "a pushforward of the canonical sheaf of a smooth projective variety, tensored "
         "with an ample line bundle, is geometrically acyclic"},
        {"GA2", "an extension of geometrically acyclic sheaves is geometrically acyclic"},
        {"GA3",
         "a direct summand of a geometrically acyclic sheaf is geometrically acyclic"},
        {"GA4", "a pushforward of a geometrically acyclic sheaf is geometrically acyclic"},
        {"GA5",
         "a geometrically acyclic sheaf is acyclic and has vanishing higher direct images "
         "under every morphism"},
        {"EX1",
         "the canonical sheaf twisted by a reduced normal-crossing divisor and an ample "
         "line bundle is geometrically acyclic"},
        {"EX2",
         "the canonical sheaf twisted by the round-up of a normal-crossing Q-divisor is "
         "geometrically acyclic when the associated pair is nef and big"},
        {"SPLIT",
         "for a generically finite morphism between smooth varieties, the canonical sheaf "
         "of the target is a direct summand of the pushforward of the canonical sheaf of "
         "the source"},
        {"EX3",
         "a pushforward of the canonical sheaf under a surjective morphism from a smooth "
         "variety, tensored with a nef and big line bundle, is geometrically acyclic"},
        {"SEMI-DEF",
         "tensoring a geometrically acyclic sheaf with a geometrically semipositive bundle "
         "preserves geometric acyclicity"},
        {"POS-DEF",
         "tensoring a pushed-forward canonical sheaf with a geometrically positive bundle "
         "yields a geometrically acyclic sheaf"},
        {"NEFLINE", "a nef line bundle is geometrically semipositive"},
        {"NEFBIGLINE", "a nef and big line bundle is geometrically positive"},
        {"SW-SEMI",
         "a Schur-Weyl power of a geometrically semipositive bundle is geometrically "
         "semipositive"},
        {"CLOSURE",
         "geometric semipositivity and positivity are stable under extensions, direct "
         "summands, and tensor products"},
        {"THM2a",
         "the det-shifted Schur-Weyl power of a nef bundle is geometrically semipositive"},
        {"THM2b",
         "the det-shifted Schur-Weyl power of a nef and big bundle is geometrically "
         "positive"},
        {"POSCOR",
         "a Schur-Weyl power with shape in the positivity cone of a nef (resp. nef and "
         "big) bundle is geometrically semipositive (resp. positive)"},
        {"NEF-SUM", "a direct sum of nef bundles is nef"},
        {"NEF-TENSOR", "a tensor product of nef bundles is nef"},
        {"NEF-QUOT", "a locally free quotient of a nef bundle is nef"},
        {"BIG-QUOT", "a locally free quotient of a big bundle is big"},
        {"BIG-SUM", "a direct sum of big bundles is big"},
        {"BIG-SW", "a nonzero Schur-Weyl power of a big bundle is big"},
        {"BIG-TENSOR", "a tensor product of big bundles is big"},
        {"HDI",
         "higher direct images of the canonical sheaf from a variety with rational "
         "singularities, tensored with a geometrically positive bundle, are geometrically "
         "acyclic"},
        {"CORVAN",
         "higher direct images of the canonical sheaf tensored with Schur-Weyl powers of "
         "nef bundles, at least one of them big, have vanishing higher cohomology"},
        {"KAMPLE",
         "pulling back a geometrically positive bundle along a surjective morphism and "
         "twisting by the canonical sheaf gives vanishing above the fiber dimension"},
        {"KOSZUL",
         "restriction to the zero scheme of a regular section of a geometrically positive "
         "bundle is an isomorphism below, and injective at, the critical degree"},
        {"CONNECT",
         "the zero scheme of a regular section of a geometrically positive bundle of rank "
         "below the dimension is connected"},
        {"SS-DEF",
         "strong semistability asserts that the rank-th symmetric power twisted down by "
         "the determinant is nef"},
        {"SS-TWIST", "strong semistability is invariant under twisting by any line bundle"},
        {"SS-C1", "a nef bundle with vanishing first Chern class is strongly semistable"},
        {"SS-COR",
         "a strongly semistable bundle with nef (resp. nef and big) determinant is "
         "geometrically semipositive (resp. positive)"},
        {"UNIF", "a uniformly nef bundle is geometrically semipositive"},
        {"RELDUAL",
         "the pushforward of the relative canonical sheaf of a smooth projective family is "
         "geometrically semipositive"},
        {"QLAMBDA",
         "under a nef cotangent bundle and a big canonical bundle, the associated "
         "invariant is multiplicative under etale covers and deformation-invariant"},
        {"BASELOC",
         "vanishing holds above the base-locus dimension for canonical twists by positive "
         "Schur-Weyl powers"},
    };
    return catalog;
}

std::string rule_catalog_hash() {
    unsigned long long h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [id, anchor] : rule_catalog()) {
        mix(id);
        mix(":");
        mix(anchor);
        mix("\n");
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

namespace {

std::string anchor_of(const std::string& rule) {
    for (const auto& [id, a] : rule_catalog())
        if (id == rule) return a;
    return "";
}

CertPtr leaf(const std::string& conclusion) {
    auto c = std::make_shared<Certificate>();
    c->conclusion = conclusion;
    c->rule = "declared";
    c->anchor = "declaration in the input context";
    return c;
}

CertPtr cond(const std::string& conclusion) {
    auto c = std::make_shared<Certificate>();
    c->conclusion = conclusion;
    c->rule = "condition";
    c->anchor = "arithmetic side condition verified by the engine";
    return c;
}

CertPtr node(std::string conclusion, const std::string& rule, std::vector<CertPtr> children) {
    auto c = std::make_shared<Certificate>();
    c->conclusion = std::move(conclusion);
    c->rule = rule;
    c->anchor = anchor_of(rule);
    c->children = std::move(children);
    return c;
}

std::string canon(const ExprPtr& e) { return dsl::to_string(e); }

std::string jkey(const std::string& prop, const ExprPtr& e) { return prop + "|" + canon(e); }

std::string display(const std::string& prop, const ExprPtr& e) {
    static const std::map<std::string, std::string> names = {
        {"GA", "geometrically_acyclic"},
        {"GeomSemiPos", "geometrically_semipositive"},
        {"GeomPos", "geometrically_positive"},
        {"Nef", "nef"},
        {"Big", "big"},
        {"StronglySemistable", "strongly_semistable"},
        {"UniformlyNef", "uniformly_nef"},
    };
    return names.at(prop) + "(" + canon(e) + ")";
}

void flatten_tensor(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind == ExprKind::Tensor) {
        flatten_tensor(e->a, out);
        flatten_tensor(e->b, out);
    } else {
        out.push_back(e);
    }
}

std::vector<ExprPtr> factors(const ExprPtr& e) {
    std::vector<ExprPtr> out;
    flatten_tensor(e, out);
    return out;
}

bool bundle_like(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Line:
        case ExprKind::Bundle:
        case ExprKind::Det:
        case ExprKind::Dual:
        case ExprKind::Schur:
        case ExprKind::SchurPlus:
        case ExprKind::TwistCeil:
            return true;
        case ExprKind::Tensor:
            return bundle_like(e->a) && bundle_like(e->b);
        default:
            return false;
    }
}

int expr_depth(const ExprPtr& e) {
    if (!e) return 0;
    return 1 + std::max(expr_depth(e->a), expr_depth(e->b));
}

// Non-strict: lambda_e at least the reduced length (and lambda nonzero);
// strict: strictly above it.
bool pos_ok(const Partition& lam, std::size_t e, bool strict) {
    if (lam.is_zero() || lam.length() > e) return false;
    if (strict) return qlambda_condition(lam, e, 1);
    return in_pos(lam, e);
}

ExprPtr make_omega(const std::string& x) {
    auto e = std::make_shared<dsl::SheafExpr>();
    e->kind = ExprKind::Omega;
    e->name = x;
    return e;
}

ExprPtr make_push(const std::string& f, ExprPtr inner) {
    auto e = std::make_shared<dsl::SheafExpr>();
    e->kind = ExprKind::Push;
    e->name = f;
    e->a = std::move(inner);
    return e;
}

ExprPtr make_tensor(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<dsl::SheafExpr>();
    e->kind = ExprKind::Tensor;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

ExprPtr make_dual(ExprPtr a) {
    auto e = std::make_shared<dsl::SheafExpr>();
    e->kind = ExprKind::Dual;
    e->a = std::move(a);
    return e;
}

// Replaces one occurrence of `from` (by structural equality) with `to`;
// returns nullptr when nothing was replaced.
ExprPtr substitute_once(const ExprPtr& e, const ExprPtr& from, const ExprPtr& to) {
    if (*e == *from) return to;
    if (e->a) {
        if (ExprPtr na = substitute_once(e->a, from, to)) {
            auto copy = std::make_shared<dsl::SheafExpr>(*e);
            copy->a = na;
            return copy;
        }
    }
    if (e->b) {
        if (ExprPtr nb = substitute_once(e->b, from, to)) {
            auto copy = std::make_shared<dsl::SheafExpr>(*e);
            copy->b = nb;
            return copy;
        }
    }
    return nullptr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Certificate serialization
// ---------------------------------------------------------------------------

namespace {

ordered_json cert_json(const CertPtr& c) {
    ordered_json j;
    j["conclusion"] = c->conclusion;
    j["rule"] = c->rule;
    j["anchor"] = c->anchor;
    ordered_json kids = ordered_json::array();
    for (const auto& k : c->children) kids.push_back(cert_json(k));
    j["children"] = kids;
    return j;
}

}  // namespace

std::string certificate_to_json(const CertPtr& cert) {
    return cert_json(cert).dump(2);
}

std::string explain(const CertPtr& cert) {
    std::ostringstream out;
    std::function<void(const CertPtr&, int)> rec = [&](const CertPtr& c, int depth) {
        for (int i = 0; i < depth; ++i) out << "  ";
        out << c->conclusion << "  [" << c->rule << "]";
        if (!c->anchor.empty()) out << "  -- " << c->anchor;
        out << "\n";
        for (const auto& k : c->children) rec(k, depth + 1);
    };
    rec(cert, 0);
    return out.str();
}

// ---------------------------------------------------------------------------
// Session: universe and seeding
// ---------------------------------------------------------------------------

Session::Session(const dsl::Document& doc, Options opt) : doc_(doc), opt_(opt) {
    build_universe();
    seed_declarations();
    saturate();
}

void Session::add_to_universe(const ExprPtr& e) {
    if (!e) return;
    universe_.emplace(canon(e), e);
    add_to_universe(e->a);
    add_to_universe(e->b);
}

// Summand relations live in derived_ under keys "Summand|sub|whole";
// both expressions are registered in the universe.

void Session::build_universe() {
    const dsl::Context& c = doc_.ctx;
    for (const auto& n : c.line_bundle_order) {
        auto e = std::make_shared<dsl::SheafExpr>();
        e->kind = ExprKind::Line;
        e->name = n;
        add_to_universe(e);
    }
    for (const auto& n : c.bundle_order) {
        auto e = std::make_shared<dsl::SheafExpr>();
        e->kind = ExprKind::Bundle;
        e->name = n;
        add_to_universe(e);
        add_to_universe(make_dual(e));
    }
    for (const auto& s : c.sheaves) add_to_universe(s.expr);
    for (const auto& f : c.facts) {
        add_to_universe(f.e1);
        add_to_universe(f.e2);
        add_to_universe(f.e3);
    }
    for (const auto& q : doc_.queries) {
        add_to_universe(q.subject);
        if (q.kind == "koszul_restriction" && q.subject)
            add_to_universe(make_dual(q.subject));
    }
}

bool Session::add(const std::string& key, CertPtr cert) {
    return derived_.emplace(key, std::move(cert)).second;
}

CertPtr Session::get(const std::string& key) const {
    auto it = derived_.find(key);
    return it == derived_.end() ? nullptr : it->second;
}

CertPtr Session::lookup(const std::string& property, const ExprPtr& subject) const {
    return get(jkey(property, subject));
}

void Session::seed_declarations() {
    const dsl::Context& c = doc_.ctx;
    for (const auto& n : c.line_bundle_order) {
        const dsl::LineBundle& l = c.line_bundles.at(n);
        auto e = universe_.at(n);
        if (l.flags.count("nef")) add(jkey("Nef", e), leaf(display("Nef", e)));
        if (l.flags.count("big")) add(jkey("Big", e), leaf(display("Big", e)));
    }
    for (const auto& n : c.bundle_order) {
        const dsl::Bundle& b = c.bundles.at(n);
        auto e = universe_.at(n);
        if (b.flags.count("nef")) add(jkey("Nef", e), leaf(display("Nef", e)));
        if (b.flags.count("big")) add(jkey("Big", e), leaf(display("Big", e)));
        if (b.flags.count("strongly_semistable"))
            add(jkey("StronglySemistable", e), leaf(display("StronglySemistable", e)));
        if (b.flags.count("uniformly_nef"))
            add(jkey("UniformlyNef", e), leaf(display("UniformlyNef", e)));
    }
    // Declared summand facts.
    for (const auto& f : c.facts)
        if (f.kind == "summand")
            add("Summand|" + canon(f.e1) + "|" + canon(f.e2),
                leaf(canon(f.e1) + " is a direct summand of " + canon(f.e2)));

    // SPLIT: generically finite maps between smooth varieties yield the
    // canonical summand relation, preserved by tensoring with any factor
    // already present in the universe.
    for (const auto& n : c.morphism_order) {
        const dsl::Morphism& m = c.morphisms.at(n);
        if (!m.flags.count("generically_finite")) continue;
        if (!c.varieties.at(m.source).flags.count("smooth") ||
            !c.varieties.at(m.target).flags.count("smooth"))
            continue;
        ExprPtr sub = make_omega(m.target);
        ExprPtr whole = make_push(m.name, make_omega(m.source));
        add_to_universe(sub);
        add_to_universe(whole);
        CertPtr base = node(canon(sub) + " is a direct summand of " + canon(whole), "SPLIT",
                            {leaf(m.name + " is generically finite between smooth varieties")});
        add("Summand|" + canon(sub) + "|" + canon(whole), base);
        // Tensored variants over existing universe members.
        std::vector<std::pair<std::string, ExprPtr>> snapshot(universe_.begin(),
                                                              universe_.end());
        for (const auto& [k, t] : snapshot) {
            if (t->kind != ExprKind::Tensor) continue;
            ExprPtr replaced = substitute_once(t, whole, sub);
            if (!replaced) continue;
            add_to_universe(replaced);
            add("Summand|" + canon(replaced) + "|" + canon(t),
                node(canon(replaced) + " is a direct summand of " + canon(t), "SPLIT",
                     {base}));
        }
    }
}

// ---------------------------------------------------------------------------
// Saturation
// ---------------------------------------------------------------------------

void Session::saturate() {
    while (pass()) {
    }
}

std::size_t Session::resaturate() {
    std::size_t before = derived_.size();
    saturate();
    return derived_.size() - before;
}

bool Session::pass() {
    bool changed = false;
    const dsl::Context& c = doc_.ctx;

    auto variety_flag = [&](const std::string& x, const char* flag) {
        return c.varieties.at(x).flags.count(flag) != 0;
    };
    auto line_flag = [&](const ExprPtr& e, const char* flag) {
        return e->kind == ExprKind::Line && c.line_bundles.at(e->name).flags.count(flag) != 0;
    };

    // Snapshot: rules only consult the universe built up front (plus the
    // SPLIT-synthesized members added during seeding), so iteration over
    // the sorted map is deterministic and stable.

    // GA1 / EX1 / EX2 / EX3 / SEMI-DEF / POS-DEF / HDI / NEF-TENSOR /
    // BIG-TENSOR / BIG-SW / SW-SEMI / THM2 / POSCOR / CLOSURE(tensor) /
    // SS-TWIST walk the universe; the fact-driven rules walk the facts.

    for (const auto& [k, t] : universe_) {
        // ---- rules on tensor nodes ----
        if (t->kind == ExprKind::Tensor) {
            ExprPtr a = t->a, b = t->b;
            std::vector<ExprPtr> fs = factors(t);

            // GA1 (including the identity-morphism form).
            if (fs.size() == 2 && !get(jkey("GA", t))) {
                for (int swap = 0; swap < 2; ++swap) {
                    ExprPtr lhs = swap ? fs[1] : fs[0], rhs = swap ? fs[0] : fs[1];
                    if (!line_flag(rhs, "ample")) continue;
                    if (lhs->kind == ExprKind::Push && lhs->a->kind == ExprKind::Omega) {
                        const dsl::Morphism& m = c.morphisms.at(lhs->name);
                        if (lhs->a->name == m.source && variety_flag(m.source, "smooth") &&
                            variety_flag(m.source, "projective")) {
                            changed |= add(
                                jkey("GA", t),
                                node(display("GA", t), "GA1",
                                     {leaf(m.source + " is smooth and projective"),
                                      leaf(rhs->name + " is ample")}));
                            break;
                        }
                    }
                    if (lhs->kind == ExprKind::Omega && variety_flag(lhs->name, "smooth") &&
                        variety_flag(lhs->name, "projective")) {
                        changed |= add(jkey("GA", t),
                                       node(display("GA", t), "GA1",
                                            {leaf(lhs->name + " is smooth and projective"),
                                             leaf(rhs->name + " is ample")}));
                        break;
                    }
                }
            }

            // EX1 / EX2: omega(X) * twist_ceil(L, D).
            if (fs.size() == 2 && !get(jkey("GA", t))) {
                for (int swap = 0; swap < 2; ++swap) {
                    ExprPtr lhs = swap ? fs[1] : fs[0], rhs = swap ? fs[0] : fs[1];
                    if (lhs->kind != ExprKind::Omega || rhs->kind != ExprKind::TwistCeil)
                        continue;
                    if (!variety_flag(lhs->name, "smooth")) continue;
                    const dsl::Divisor& d = c.divisors.at(rhs->name);
                    if (!d.flags.count("normal_crossing")) continue;
                    ExprPtr lb = rhs->a;
                    if (d.flags.count("reduced") && line_flag(lb, "ample")) {
                        changed |= add(jkey("GA", t),
                                       node(display("GA", t), "EX1",
                                            {leaf(lhs->name + " is smooth"),
                                             leaf(d.name +
                                                  " is reduced with normal crossings"),
                                             leaf(lb->name + " is ample")}));
                        break;
                    }
                    bool pair_ok = false;
                    if (lb->kind == ExprKind::Line)
                        for (const auto& f : c.facts)
                            if (f.kind == "nefbig_pair" && f.names[0] == lb->name &&
                                f.names[1] == d.name)
                                pair_ok = true;
                    if (pair_ok) {
                        changed |= add(
                            jkey("GA", t),
                            node(display("GA", t), "EX2",
                                 {leaf(lhs->name + " is smooth"),
                                  leaf(d.name + " has normal-crossing support"),
                                  leaf("the pair (" + lb->name + ", " + d.name +
                                       ") is declared nef and big")}));
                        break;
                    }
                }
            }

            // EX3: pushforward of omega (or omega itself) times a nef and
            // big line bundle.
            if (fs.size() == 2 && !get(jkey("GA", t))) {
                for (int swap = 0; swap < 2; ++swap) {
                    ExprPtr lhs = swap ? fs[1] : fs[0], rhs = swap ? fs[0] : fs[1];
                    if (rhs->kind != ExprKind::Line) continue;
                    CertPtr nf = get(jkey("Nef", rhs)), bg = get(jkey("Big", rhs));
                    if (!nf || !bg) continue;
                    if (lhs->kind == ExprKind::Push && lhs->a->kind == ExprKind::Omega) {
                        const dsl::Morphism& m = c.morphisms.at(lhs->name);
                        if (lhs->a->name == m.source && m.flags.count("surjective") &&
                            variety_flag(m.source, "smooth")) {
                            changed |= add(jkey("GA", t),
                                           node(display("GA", t), "EX3",
                                                {nf, bg,
                                                 leaf(m.name +
                                                      " is surjective from the smooth "
                                                      "variety " +
                                                      m.source)}));
                            break;
                        }
                    }
                    if (lhs->kind == ExprKind::Omega && variety_flag(lhs->name, "smooth") &&
                        variety_flag(lhs->name, "projective")) {
                        changed |= add(jkey("GA", t),
                                       node(display("GA", t), "EX3",
                                            {nf, bg,
                                             leaf(lhs->name + " is smooth and projective")}));
                        break;
                    }
                }
            }

            // SEMI-DEF.
            if (!get(jkey("GA", t))) {
                for (int swap = 0; swap < 2; ++swap) {
                    ExprPtr lhs = swap ? b : a, rhs = swap ? a : b;
                    CertPtr ga = get(jkey("GA", lhs));
                    CertPtr sp = get(jkey("GeomSemiPos", rhs));
                    if (ga && sp) {
                        changed |= add(jkey("GA", t),
                                       node(display("GA", t), "SEMI-DEF", {ga, sp}));
                        break;
                    }
                }
            }

            // POS-DEF (including the identity-morphism form).
            if (!get(jkey("GA", t))) {
                for (int swap = 0; swap < 2; ++swap) {
                    ExprPtr lhs = swap ? b : a, rhs = swap ? a : b;
                    CertPtr gp = get(jkey("GeomPos", rhs));
                    if (!gp) continue;
                    if (lhs->kind == ExprKind::Push && lhs->a->kind == ExprKind::Omega) {
                        const dsl::Morphism& m = c.morphisms.at(lhs->name);
                        if (lhs->a->name == m.source && m.flags.count("surjective") &&
                            variety_flag(m.source, "smooth")) {
                            changed |= add(
                                jkey("GA", t),
                                node(display("GA", t), "POS-DEF",
                                     {gp, leaf(m.name + " is surjective from the smooth "
                                                        "variety " +
                                               m.source)}));
                            break;
                        }
                    }
                    if (lhs->kind == ExprKind::Omega && variety_flag(lhs->name, "smooth") &&
                        variety_flag(lhs->name, "projective")) {
                        changed |= add(jkey("GA", t),
                                       node(display("GA", t), "POS-DEF",
                                            {gp,
                                             leaf(lhs->name + " is smooth and projective")}));
                        break;
                    }
                }
            }

            // HDI: rpush(i, f, omega(Y)) * E with Y rational singularities.
            if (!get(jkey("GA", t))) {
                for (int swap = 0; swap < 2; ++swap) {
                    ExprPtr lhs = swap ? b : a, rhs = swap ? a : b;
                    CertPtr gp = get(jkey("GeomPos", rhs));
                    if (!gp) continue;
                    if (lhs->kind == ExprKind::RPush && lhs->a->kind == ExprKind::Omega) {
                        const dsl::Morphism& m = c.morphisms.at(lhs->name);
                        if (lhs->a->name == m.source &&
                            variety_flag(m.source, "rational_singularities")) {
                            changed |= add(
                                jkey("GA", t),
                                node(display("GA", t), "HDI",
                                     {gp, leaf(m.source +
                                               " has at worst rational singularities")}));
                            break;
                        }
                    }
                }
            }

            // CLOSURE on tensor products; NEF-TENSOR; BIG-TENSOR; SS-TWIST.
            if (bundle_like(a) && bundle_like(b)) {
                CertPtr sa = get(jkey("GeomSemiPos", a)), sb = get(jkey("GeomSemiPos", b));
                CertPtr pa = get(jkey("GeomPos", a)), pb = get(jkey("GeomPos", b));
                if (sa && sb)
                    changed |= add(jkey("GeomSemiPos", t),
                                   node(display("GeomSemiPos", t), "CLOSURE", {sa, sb}));
                if (pa && (pb || sb))
                    changed |= add(jkey("GeomPos", t),
                                   node(display("GeomPos", t), "CLOSURE",
                                        {pa, pb ? pb : sb}));
                else if (pb && (pa || sa))
                    changed |= add(jkey("GeomPos", t),
                                   node(display("GeomPos", t), "CLOSURE",
                                        {pb, pa ? pa : sa}));
                CertPtr na = get(jkey("Nef", a)), nb = get(jkey("Nef", b));
                if (na && nb)
                    changed |= add(jkey("Nef", t),
                                   node(display("Nef", t), "NEF-TENSOR", {na, nb}));
                CertPtr ba = get(jkey("Big", a)), bb = get(jkey("Big", b));
                if (ba && bb)
                    changed |= add(jkey("Big", t),
                                   node(display("Big", t), "BIG-TENSOR", {ba, bb}));
                for (int swap = 0; swap < 2; ++swap) {
                    ExprPtr bundle = swap ? b : a, line = swap ? a : b;
                    if (line->kind != ExprKind::Line) continue;
                    if (CertPtr ss = get(jkey("StronglySemistable", bundle)))
                        changed |= add(jkey("StronglySemistable", t),
                                       node(display("StronglySemistable", t), "SS-TWIST",
                                            {ss}));
                    if (CertPtr ss = get(jkey("StronglySemistable", t)))
                        changed |= add(jkey("StronglySemistable", bundle),
                                       node(display("StronglySemistable", bundle),
                                            "SS-TWIST", {ss}));
                }
            }
        }

        // ---- rules on pushforwards ----
        if (t->kind == ExprKind::Push) {
            if (CertPtr ga = get(jkey("GA", t->a)))
                changed |= add(jkey("GA", t), node(display("GA", t), "GA4", {ga}));
        }

        // ---- rules on line atoms ----
        if (t->kind == ExprKind::Line) {
            CertPtr nf = get(jkey("Nef", t));
            if (nf)
                changed |= add(jkey("GeomSemiPos", t),
                               node(display("GeomSemiPos", t), "NEFLINE", {nf}));
            CertPtr bg = get(jkey("Big", t));
            if (nf && bg)
                changed |= add(jkey("GeomPos", t),
                               node(display("GeomPos", t), "NEFBIGLINE", {nf, bg}));
        }

        // ---- rules on bundle atoms ----
        if (t->kind == ExprKind::Bundle) {
            const dsl::Bundle& bd = c.bundles.at(t->name);
            CertPtr nf = get(jkey("Nef", t));
            if (nf && bd.flags.count("c1_zero"))
                changed |= add(jkey("StronglySemistable", t),
                               node(display("StronglySemistable", t), "SS-C1",
                                    {nf, leaf(t->name + " has first Chern class zero")}));
            if (CertPtr un = get(jkey("UniformlyNef", t)))
                changed |= add(jkey("GeomSemiPos", t),
                               node(display("GeomSemiPos", t), "UNIF", {un}));
        }

        // ---- rules on Schur nodes ----
        if (t->kind == ExprKind::Schur && !t->lambda.is_zero() &&
            dsl::expr_rank(c, t) != 0) {
            if (CertPtr sp = get(jkey("GeomSemiPos", t->a)))
                changed |= add(jkey("GeomSemiPos", t),
                               node(display("GeomSemiPos", t), "SW-SEMI", {sp}));
            if (CertPtr bg = get(jkey("Big", t->a)))
                changed |= add(jkey("Big", t), node(display("Big", t), "BIG-SW", {bg}));
            if (t->a->kind == ExprKind::Bundle) {
                std::size_t r = c.bundles.at(t->a->name).rank;
                if (pos_ok(t->lambda, r, opt_.pos_strict)) {
                    CertPtr nf = get(jkey("Nef", t->a));
                    CertPtr bg = get(jkey("Big", t->a));
                    CertPtr shape = cond("shape [" + t->lambda.to_string() +
                                         "] lies in the positivity cone for rank " +
                                         std::to_string(r));
                    if (nf)
                        changed |= add(jkey("GeomSemiPos", t),
                                       node(display("GeomSemiPos", t), "POSCOR",
                                            {nf, shape}));
                    if (nf && bg)
                        changed |= add(jkey("GeomPos", t),
                                       node(display("GeomPos", t), "POSCOR",
                                            {nf, bg, shape}));
                }
            }
        }

        // ---- rules on det-shifted Schur nodes ----
        if (t->kind == ExprKind::SchurPlus && !t->lambda.is_zero()) {
            CertPtr nf = get(jkey("Nef", t->a));
            CertPtr bg = get(jkey("Big", t->a));
            if (nf)
                changed |= add(jkey("GeomSemiPos", t),
                               node(display("GeomSemiPos", t), "THM2a", {nf}));
            if (nf && bg)
                changed |= add(jkey("GeomPos", t),
                               node(display("GeomPos", t), "THM2b", {nf, bg}));
        }
    }

    // ---- summand-driven rules (GA3 and CLOSURE) ----
    for (const auto& [k, cert] : derived_) {
        if (k.rfind("Summand|", 0) != 0) continue;
        std::string rest = k.substr(8);
        std::size_t bar = rest.find('|');
        std::string sub_key = rest.substr(0, bar), whole_key = rest.substr(bar + 1);
        auto its = universe_.find(sub_key);
        auto itw = universe_.find(whole_key);
        if (its == universe_.end() || itw == universe_.end()) continue;
        ExprPtr sub = its->second, whole = itw->second;
        if (CertPtr ga = get(jkey("GA", whole)))
            if (add(jkey("GA", sub), node(display("GA", sub), "GA3", {ga, cert}))) {
                changed = true;
                break;  // derived_ mutated; restart this sweep next pass
            }
        if (bundle_like(sub) && bundle_like(whole)) {
            if (CertPtr sp = get(jkey("GeomSemiPos", whole)))
                if (add(jkey("GeomSemiPos", sub),
                        node(display("GeomSemiPos", sub), "CLOSURE", {sp, cert}))) {
                    changed = true;
                    break;
                }
            if (CertPtr gp = get(jkey("GeomPos", whole)))
                if (add(jkey("GeomPos", sub),
                        node(display("GeomPos", sub), "CLOSURE", {gp, cert}))) {
                    changed = true;
                    break;
                }
        }
    }

    // ---- fact-driven rules ----
    for (const auto& f : doc_.ctx.facts) {
        if (f.kind == "extension") {
            ExprPtr f2 = f.e1, f3 = f.e2, f1 = f.e3;
            CertPtr fact = leaf(canon(f2) + " is an extension of " + canon(f3) + " by " +
                                canon(f1));
            CertPtr a1 = get(jkey("GA", f1)), a3 = get(jkey("GA", f3));
            if (a1 && a3)
                changed |=
                    add(jkey("GA", f2), node(display("GA", f2), "GA2", {a1, a3, fact}));
            CertPtr s1 = get(jkey("GeomSemiPos", f1)), s3 = get(jkey("GeomSemiPos", f3));
            if (s1 && s3)
                changed |= add(jkey("GeomSemiPos", f2),
                               node(display("GeomSemiPos", f2), "CLOSURE", {s1, s3, fact}));
            CertPtr p1 = get(jkey("GeomPos", f1)), p3 = get(jkey("GeomPos", f3));
            if (p1 && p3)
                changed |= add(jkey("GeomPos", f2),
                               node(display("GeomPos", f2), "CLOSURE", {p1, p3, fact}));
        } else if (f.kind == "sum") {
            ExprPtr e = universe_.at(f.names[0]), e1 = universe_.at(f.names[1]),
                    e2 = universe_.at(f.names[2]);
            CertPtr fact = leaf(f.names[0] + " = " + f.names[1] + " + " + f.names[2]);
            CertPtr n1 = get(jkey("Nef", e1)), n2 = get(jkey("Nef", e2));
            if (n1 && n2)
                changed |=
                    add(jkey("Nef", e), node(display("Nef", e), "NEF-SUM", {n1, n2, fact}));
            CertPtr b1 = get(jkey("Big", e1)), b2 = get(jkey("Big", e2));
            if (b1 && b2)
                changed |=
                    add(jkey("Big", e), node(display("Big", e), "BIG-SUM", {b1, b2, fact}));
        } else if (f.kind == "quotient") {
            ExprPtr q = universe_.at(f.names[0]), e = universe_.at(f.names[1]);
            CertPtr fact = leaf(f.names[0] + " is a locally free quotient of " + f.names[1]);
            if (CertPtr nf = get(jkey("Nef", e)))
                changed |=
                    add(jkey("Nef", q), node(display("Nef", q), "NEF-QUOT", {nf, fact}));
            if (CertPtr bg = get(jkey("Big", e)))
                changed |=
                    add(jkey("Big", q), node(display("Big", q), "BIG-QUOT", {bg, fact}));
        } else if (f.kind == "det") {
            ExprPtr e = universe_.at(f.names[0]), l = universe_.at(f.names[1]);
            CertPtr ss = get(jkey("StronglySemistable", e));
            if (!ss) continue;
            CertPtr fact = leaf("det(" + f.names[0] + ") = " + f.names[1]);
            if (CertPtr nf = get(jkey("Nef", l)))
                changed |= add(jkey("GeomSemiPos", e),
                               node(display("GeomSemiPos", e), "SS-COR", {ss, nf, fact}));
            CertPtr nf = get(jkey("Nef", l)), bg = get(jkey("Big", l));
            if (nf && bg)
                changed |= add(jkey("GeomPos", e),
                               node(display("GeomPos", e), "SS-COR", {ss, nf, bg, fact}));
        } else if (f.kind == "reldual") {
            const dsl::Morphism& m = doc_.ctx.morphisms.at(f.names[1]);
            if (!m.flags.count("smooth_morphism")) continue;
            if (!doc_.ctx.varieties.at(m.source).flags.count("projective")) continue;
            ExprPtr e = universe_.at(f.names[0]);
            changed |= add(
                jkey("GeomSemiPos", e),
                node(display("GeomSemiPos", e), "RELDUAL",
                     {leaf(f.names[0] + " is the pushforward of the relative canonical "
                                        "sheaf of the smooth projective family " +
                           m.name)}));
        }
    }

    return changed;
}

// ---------------------------------------------------------------------------
// Claims and queries
// ---------------------------------------------------------------------------

std::vector<Claim> Session::ga5_claims(const ExprPtr& subject, const CertPtr&) const {
    std::vector<Claim> claims;
    std::string s = canon(subject);
    claims.push_back({"cohomology_vanishing", s, "i>0", "GA5", subject});
    std::string ambient;
    try {
        ambient = dsl::ambient_variety(doc_.ctx, subject);
    } catch (const std::exception&) {
        return claims;
    }
    for (const auto& n : doc_.ctx.morphism_order) {
        const dsl::Morphism& m = doc_.ctx.morphisms.at(n);
        if (m.source != ambient) continue;
        claims.push_back(
            {"sheaf_vanishing", "R^i " + m.name + "_* " + s, "i>0", "GA5", nullptr});
    }
    return claims;
}

QueryResult Session::run_query(const dsl::Query& q) {
    QueryResult res;
    res.query = q;
    const dsl::Context& c = doc_.ctx;

    if (q.subject && expr_depth(q.subject) > opt_.max_depth) {
        res.status = Status::DepthExceeded;
        res.detail = "expression depth " + std::to_string(expr_depth(q.subject)) +
                     " exceeds the bound " + std::to_string(opt_.max_depth);
        return res;
    }

    auto unknown = [&](const std::string& goal) {
        res.status = Status::Unknown;
        res.detail = "no rule in the catalog establishes " + goal +
                     " from the declarations; unknown is not a refutation";
    };

    auto simple = [&](const std::string& prop) {
        if (CertPtr cert = lookup(prop, q.subject)) {
            res.status = Status::Derived;
            res.certificate = cert;
        } else {
            unknown(display(prop, q.subject));
        }
    };

    if (q.kind == "acyclic") {
        simple("GA");
        if (res.status == Status::Derived)
            res.claims = ga5_claims(q.subject, res.certificate);
    } else if (q.kind == "semipositive") {
        simple("GeomSemiPos");
    } else if (q.kind == "nef") {
        simple("Nef");
    } else if (q.kind == "big") {
        simple("Big");
    } else if (q.kind == "positive") {
        simple("GeomPos");
        if (res.status == Status::Derived) {
            std::string ambient = dsl::ambient_variety(c, q.subject);
            unsigned dim_x = c.varieties.at(ambient).dim;
            // KAMPLE along every surjective map from a smooth source.
            for (const auto& n : c.morphism_order) {
                const dsl::Morphism& m = c.morphisms.at(n);
                if (m.target != ambient || !m.flags.count("surjective")) continue;
                if (!c.varieties.at(m.source).flags.count("smooth")) continue;
                unsigned dim_y = c.varieties.at(m.source).dim;
                long bound = static_cast<long>(dim_y) - static_cast<long>(dim_x);
                res.claims.push_back({"cohomology_vanishing",
                                      "omega(" + m.source + ") * pullback(" + m.name +
                                          ", " + canon(q.subject) + ")",
                                      "i>" + std::to_string(bound), "KAMPLE", nullptr});
            }
            // Zero schemes of regular sections: restriction and
            // connectedness (the trivially semipositive structure-sheaf
            // case; general coefficients go through koszul_restriction).
            if (q.subject->kind == ExprKind::Bundle) {
                unsigned rk = c.bundles.at(q.subject->name).rank;
                for (const auto& f : c.facts) {
                    if (f.kind != "zero_scheme" || f.names[1] != q.subject->name) continue;
                    long crit = static_cast<long>(dim_x) - static_cast<long>(rk);
                    res.claims.push_back(
                        {"restriction_iso",
                         "H^i(" + ambient + ") -> H^i(" + f.names[0] + ")",
                         "i<" + std::to_string(crit), "KOSZUL", nullptr});
                    res.claims.push_back(
                        {"restriction_inj",
                         "H^i(" + ambient + ") -> H^i(" + f.names[0] + ")",
                         "i=" + std::to_string(crit), "KOSZUL", nullptr});
                    if (rk < dim_x && c.varieties.at(ambient).flags.count("irreducible"))
                        res.claims.push_back(
                            {"connected", f.names[0], "", "CONNECT", nullptr});
                }
            }
        }
    } else if (q.kind == "vanishing_range") {
        if (CertPtr cert = lookup("GA", q.subject)) {
            res.status = Status::Derived;
            res.certificate = cert;
            res.claims = ga5_claims(q.subject, cert);
            return res;
        }
        // CORVAN: rpush(j, f, omega(Y)) * product of positive Schur powers.
        {
            std::vector<ExprPtr> fs = factors(q.subject);
            ExprPtr rp;
            std::vector<ExprPtr> schurs;
            bool shape_ok = true;
            for (const auto& e : fs) {
                if (e->kind == ExprKind::RPush && e->a->kind == ExprKind::Omega && !rp)
                    rp = e;
                else if (e->kind == ExprKind::Schur && e->a->kind == ExprKind::Bundle)
                    schurs.push_back(e);
                else
                    shape_ok = false;
            }
            if (shape_ok && rp && !schurs.empty()) {
                const dsl::Morphism& m = c.morphisms.at(rp->name);
                bool rational = c.varieties.at(m.source).flags.count("rational_singularities");
                std::vector<CertPtr> children;
                CertPtr some_big;
                bool all_ok = rational && rp->a->name == m.source;
                for (const auto& s : schurs) {
                    std::size_t r = c.bundles.at(s->a->name).rank;
                    CertPtr nf = get(jkey("Nef", s->a));
                    if (!nf || !pos_ok(s->lambda, r, opt_.pos_strict)) {
                        all_ok = false;
                        break;
                    }
                    children.push_back(nf);
                    if (!some_big)
                        if (CertPtr bg = get(jkey("Big", s->a))) some_big = bg;
                }
                if (all_ok && some_big) {
                    children.push_back(some_big);
                    children.push_back(
                        leaf(m.source + " has at worst rational singularities"));
                    res.status = Status::Derived;
                    res.certificate = node("vanishing(" + canon(q.subject) + ", i>0)",
                                           "CORVAN", children);
                    res.claims.push_back({"cohomology_vanishing", canon(q.subject), "i>0",
                                          "CORVAN", q.subject});
                    return res;
                }
            }
        }
        // BASELOC: omega(X) * schur(lambda, E) * L above the base locus.
        {
            std::vector<ExprPtr> fs = factors(q.subject);
            ExprPtr om, schur, line;
            bool shape_ok = true;
            for (const auto& e : fs) {
                if (e->kind == ExprKind::Omega && !om)
                    om = e;
                else if (e->kind == ExprKind::Schur && e->a->kind == ExprKind::Bundle &&
                         !schur)
                    schur = e;
                else if (e->kind == ExprKind::Line && !line)
                    line = e;
                else
                    shape_ok = false;
            }
            if (shape_ok && om && schur && line) {
                const dsl::Fact* bl = nullptr;
                for (const auto& f : c.facts)
                    if (f.kind == "base_locus" && f.names[0] == schur->a->name) bl = &f;
                std::size_t r = c.bundles.at(schur->a->name).rank;
                CertPtr nf = get(jkey("Nef", line)), bg = get(jkey("Big", line));
                if (bl && nf && bg && pos_ok(schur->lambda, r, opt_.pos_strict)) {
                    std::string range = "i>" + std::to_string(bl->value);
                    res.status = Status::Derived;
                    res.certificate =
                        node("vanishing(" + canon(q.subject) + ", " + range + ")", "BASELOC",
                             {nf, bg,
                              leaf("the base locus of " + schur->a->name +
                                   " has dimension " + std::to_string(bl->value))});
                    res.claims.push_back({"cohomology_vanishing", canon(q.subject), range,
                                          "BASELOC", q.subject});
                    return res;
                }
            }
        }
        unknown("a vanishing range for " + canon(q.subject));
    } else if (q.kind == "koszul_restriction") {
        const dsl::Fact* zs = nullptr;
        for (const auto& f : c.facts)
            if (f.kind == "zero_scheme" && f.names[0] == q.name2) zs = &f;
        if (!zs) {
            unknown("a zero-scheme declaration for " + q.name2);
            return res;
        }
        ExprPtr bundle = universe_.at(zs->names[1]);
        CertPtr gp = get(jkey("GeomPos", bundle));
        ExprPtr dual_subject =
            q.subject->kind == ExprKind::Dual ? q.subject->a : make_dual(q.subject);
        CertPtr sp = get(jkey("GeomSemiPos", dual_subject));
        if (gp && sp) {
            const dsl::Bundle& b = c.bundles.at(zs->names[1]);
            unsigned dim_x = c.varieties.at(b.variety).dim;
            long crit = static_cast<long>(dim_x) - static_cast<long>(b.rank);
            res.status = Status::Derived;
            res.certificate =
                node("restriction of " + canon(q.subject) + " to " + q.name2, "KOSZUL",
                     {gp, sp,
                      leaf(q.name2 + " is the zero scheme of a regular section of " +
                           zs->names[1])});
            std::string subj = "H^i(" + b.variety + ", " + canon(q.subject) + ") -> H^i(" +
                               q.name2 + ")";
            res.claims.push_back(
                {"restriction_iso", subj, "i<" + std::to_string(crit), "KOSZUL", nullptr});
            res.claims.push_back(
                {"restriction_inj", subj, "i=" + std::to_string(crit), "KOSZUL", nullptr});
        } else if (!gp) {
            unknown(display("GeomPos", bundle));
        } else {
            unknown(display("GeomSemiPos", dual_subject));
        }
    } else if (q.kind == "connectedness") {
        const dsl::Fact* zs = nullptr;
        for (const auto& f : c.facts)
            if (f.kind == "zero_scheme" && f.names[0] == q.name2) zs = &f;
        if (!zs) {
            unknown("a zero-scheme declaration for " + q.name2);
            return res;
        }
        ExprPtr bundle = universe_.at(zs->names[1]);
        const dsl::Bundle& b = c.bundles.at(zs->names[1]);
        unsigned dim_x = c.varieties.at(b.variety).dim;
        CertPtr gp = get(jkey("GeomPos", bundle));
        bool irr = c.varieties.at(b.variety).flags.count("irreducible");
        if (gp && b.rank < dim_x && irr) {
            res.status = Status::Derived;
            res.certificate = node("connected(" + q.name2 + ")", "CONNECT",
                                   {gp,
                                    cond("rank " + std::to_string(b.rank) +
                                         " is below dim " + std::to_string(dim_x)),
                                    leaf(b.variety + " is irreducible")});
            res.claims.push_back({"connected", q.name2, "", "CONNECT", nullptr});
        } else if (!gp) {
            unknown(display("GeomPos", bundle));
        } else {
            unknown("connectedness of " + q.name2 +
                    (irr ? " (rank is not below the dimension)"
                         : " (ambient variety not declared irreducible)"));
        }
    } else if (q.kind == "qlambda") {
        const dsl::Fact* ct = nullptr;
        for (const auto& f : c.facts)
            if (f.kind == "cotangent" && f.names[1] == q.name2) ct = &f;
        const dsl::LineBundle* can = nullptr;
        for (const auto& n : c.line_bundle_order) {
            const dsl::LineBundle& l = c.line_bundles.at(n);
            if (l.variety == q.name2 && l.flags.count("canonical")) can = &l;
        }
        if (!ct || !can) {
            unknown("a cotangent bundle and canonical line bundle declaration for " +
                    q.name2);
            return res;
        }
        ExprPtr cot = universe_.at(ct->names[0]);
        CertPtr nf = get(jkey("Nef", cot));
        if (!nf) {
            unknown(display("Nef", cot));
            return res;
        }
        ExprPtr kan = universe_.at(can->name);
        CertPtr kbig = get(jkey("Big", kan));
        CertPtr knef = get(jkey("Nef", kan));
        unsigned d = c.varieties.at(q.name2).dim;
        std::string subj = "q_[" + q.lambda.to_string() + "](" + q.name2 +
                           ") is multiplicative under etale covers and "
                           "deformation-invariant";
        if (kbig && qlambda_condition(q.lambda, d, 2)) {
            res.claims.push_back({"invariant_stability", subj, "slack=2", "QLAMBDA", nullptr});
            res.certificate = node(subj, "QLAMBDA",
                                   {nf, kbig,
                                    cond("shape [" + q.lambda.to_string() +
                                         "] satisfies the slack-2 condition in dimension " +
                                         std::to_string(d))});
        }
        if (kbig && knef && qlambda_condition(q.lambda, d, 1)) {
            res.claims.push_back({"invariant_stability", subj, "slack=1", "QLAMBDA", nullptr});
            if (!res.certificate)
                res.certificate =
                    node(subj, "QLAMBDA",
                         {nf, knef, kbig,
                          cond("shape [" + q.lambda.to_string() +
                               "] satisfies the slack-1 condition in dimension " +
                               std::to_string(d))});
        }
        if (!res.claims.empty())
            res.status = Status::Derived;
        else
            unknown("the positivity condition for q_[" + q.lambda.to_string() + "] on " +
                    q.name2);
    } else {
        unknown("query kind " + q.kind);
    }
    return res;
}

std::vector<QueryResult> Session::run_all() {
    std::vector<QueryResult> out;
    for (const auto& q : doc_.queries) out.push_back(run_query(q));
    return out;
}

// ---------------------------------------------------------------------------
// Result serialization and exit codes
// ---------------------------------------------------------------------------

namespace {

std::string query_display(const dsl::Query& q) {
    if (q.kind == "connectedness") return q.kind + "(" + q.name2 + ")";
    if (q.kind == "qlambda")
        return q.kind + "([" + q.lambda.to_string() + "], " + q.name2 + ")";
    if (q.kind == "koszul_restriction")
        return q.kind + "(" + canon(q.subject) + ", " + q.name2 + ")";
    return q.kind + "(" + canon(q.subject) + ")";
}

}  // namespace

std::string query_result_to_json(const QueryResult& r) {
    ordered_json j;
    j["query"] = query_display(r.query);
    switch (r.status) {
        case Status::Derived: j["status"] = "derived"; break;
        case Status::Unknown: j["status"] = "unknown"; break;
        case Status::DepthExceeded: j["status"] = "depth_exceeded"; break;
    }
    j["certificate"] = r.certificate ? cert_json(r.certificate) : ordered_json(nullptr);
    ordered_json claims = ordered_json::array();
    for (const auto& cl : r.claims)
        claims.push_back({{"kind", cl.kind},
                          {"subject", cl.subject},
                          {"range", cl.range},
                          {"rule", cl.rule}});
    j["claims"] = claims;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j.dump(2);
}

int exit_code(const std::vector<QueryResult>& results) {
    bool unknown = false;
    for (const auto& r : results) {
        if (r.status == Status::DepthExceeded) return 11;
        if (r.status == Status::Unknown) unknown = true;
    }
    return unknown ? 10 : 0;
}

}  // namespace gad::engine
