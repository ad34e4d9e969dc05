#include <sstream>

#include "gad/bwb.hpp"
#include "gad/engine/engine.hpp"
#include "gad/schur.hpp"

namespace gad::engine {

using dsl::ExprKind;
using dsl::ExprPtr;

const char* to_string(VerifyOutcome v) {
    switch (v) {
        case VerifyOutcome::Pass: return "PASS";
        case VerifyOutcome::Fail: return "FAIL";
        case VerifyOutcome::NotInstantiable: return "NOT_INSTANTIABLE";
    }
    return "?";
}

SplitInstantiation parse_instantiation(const std::string& text) {
    SplitInstantiation inst;
    bool have_n = false;
    std::istringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ';')) {
        if (piece.empty()) continue;
        std::size_t eq = piece.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("instantiation piece without '=': " + piece);
        std::string name = piece.substr(0, eq);
        std::string rhs = piece.substr(eq + 1);
        if (name == "n") {
            long n = std::stol(rhs);
            if (n < 1) throw std::invalid_argument("instantiation needs n >= 1");
            inst.n = static_cast<unsigned>(n);
            have_n = true;
            continue;
        }
        std::vector<long> degs;
        std::istringstream ds(rhs);
        std::string d;
        while (std::getline(ds, d, ',')) degs.push_back(std::stol(d));
        if (degs.empty())
            throw std::invalid_argument("instantiation of " + name + " has no degrees");
        inst.degrees[name] = degs;
    }
    if (!have_n) throw std::invalid_argument("instantiation must set n");
    return inst;
}

std::optional<std::vector<long>> compile_split_degrees(const ExprPtr& e,
                                                       const dsl::Context& ctx,
                                                       const SplitInstantiation& inst) {
    using Out = std::optional<std::vector<long>>;
    if (!e) return std::nullopt;
    switch (e->kind) {
        case ExprKind::Omega:
            return Out(std::vector<long>{-static_cast<long>(inst.n) - 1});
        case ExprKind::Structure:
            return Out(std::vector<long>{0});
        case ExprKind::Line: {
            auto it = inst.degrees.find(e->name);
            if (it == inst.degrees.end() || it->second.size() != 1) return std::nullopt;
            return Out(it->second);
        }
        case ExprKind::Bundle: {
            auto it = inst.degrees.find(e->name);
            if (it == inst.degrees.end()) return std::nullopt;
            if (it->second.size() != ctx.bundles.at(e->name).rank) return std::nullopt;
            return Out(it->second);
        }
        case ExprKind::Tensor: {
            auto a = compile_split_degrees(e->a, ctx, inst);
            auto b = compile_split_degrees(e->b, ctx, inst);
            if (!a || !b) return std::nullopt;
            std::vector<long> out;
            for (long x : *a)
                for (long y : *b) out.push_back(x + y);
            return Out(out);
        }
        case ExprKind::Det: {
            auto a = compile_split_degrees(e->a, ctx, inst);
            if (!a) return std::nullopt;
            long s = 0;
            for (long x : *a) s += x;
            return Out(std::vector<long>{s});
        }
        case ExprKind::Dual: {
            auto a = compile_split_degrees(e->a, ctx, inst);
            if (!a) return std::nullopt;
            for (long& x : *a) x = -x;
            return a;
        }
        case ExprKind::Schur:
        case ExprKind::SchurPlus: {
            auto a = compile_split_degrees(e->a, ctx, inst);
            if (!a) return std::nullopt;
            std::size_t r = a->size();
            Partition lam = e->lambda;
            if (e->kind == ExprKind::SchurPlus && !lam.is_zero()) lam = plus_shift(lam, r);
            if (lam.length() > r) return Out(std::vector<long>{});  // zero sheaf
            std::vector<long> out;
            for (const auto& [alpha, mult] : monomial_expansion(lam, r)) {
                long d = 0;
                for (std::size_t i = 0; i < r; ++i)
                    d += static_cast<long>(alpha[i]) * (*a)[i];
                for (unsigned long long m = 0; m < mult; ++m) out.push_back(d);
            }
            return Out(out);
        }
        case ExprKind::Push:
        case ExprKind::RPush:
        case ExprKind::TwistCeil:
            return std::nullopt;
    }
    return std::nullopt;
}

VerifyOutcome verify_split(const Claim& claim, const dsl::Context& ctx,
                           const SplitInstantiation& inst) {
    if (claim.kind != "cohomology_vanishing" || !claim.subject_expr)
        return VerifyOutcome::NotInstantiable;
    // Only lower-bounded ranges "i>b" are checkable here.
    if (claim.range.size() < 3 || claim.range[0] != 'i' || claim.range[1] != '>')
        return VerifyOutcome::NotInstantiable;
    long bound = std::stol(claim.range.substr(2));

    auto degrees = compile_split_degrees(claim.subject_expr, ctx, inst);
    if (!degrees) return VerifyOutcome::NotInstantiable;

    for (long d : *degrees) {
        auto table = line_bundle_cohomology_pn(inst.n, d);
        for (unsigned q = 1; q <= inst.n; ++q) {
            if (static_cast<long>(q) <= bound) continue;
            if (table.dim(static_cast<int>(q)) != 0) return VerifyOutcome::Fail;
        }
    }
    return VerifyOutcome::Pass;
}

}  // namespace gad::engine
