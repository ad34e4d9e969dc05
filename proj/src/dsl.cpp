#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "gad/dsl/parse.hpp"

namespace gad::dsl {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// AST helpers
// ---------------------------------------------------------------------------

bool SheafExpr::operator==(const SheafExpr& o) const {
    if (kind != o.kind || name != o.name || index != o.index || !(lambda == o.lambda))
        return false;
    auto eq = [](const ExprPtr& x, const ExprPtr& y) {
        if (!x || !y) return !x && !y;
        return *x == *y;
    };
    return eq(a, o.a) && eq(b, o.b);
}

std::string to_string(const ExprPtr& e) {
    if (!e) return "<null>";
    switch (e->kind) {
        case ExprKind::Omega:
            return "omega(" + e->name + ")";
        case ExprKind::Structure:
            return "structure(" + e->name + ")";
        case ExprKind::Line:
        case ExprKind::Bundle:
            return e->name;
        case ExprKind::Push:
            return "push(" + e->name + ", " + to_string(e->a) + ")";
        case ExprKind::RPush:
            return "rpush(" + std::to_string(e->index) + ", " + e->name + ", " +
                   to_string(e->a) + ")";
        case ExprKind::Tensor: {
            auto wrap = [](const ExprPtr& c) {
                std::string s = to_string(c);
                if (c->kind == ExprKind::Tensor) return "(" + s + ")";
                return s;
            };
            return wrap(e->a) + " * " + wrap(e->b);
        }
        case ExprKind::Schur:
            return "schur([" + e->lambda.to_string() + "], " + to_string(e->a) + ")";
        case ExprKind::SchurPlus:
            return "schur_plus([" + e->lambda.to_string() + "], " + to_string(e->a) + ")";
        case ExprKind::Det:
            return "det(" + to_string(e->a) + ")";
        case ExprKind::Dual:
            return "dual(" + to_string(e->a) + ")";
        case ExprKind::TwistCeil:
            return "twist_ceil(" + to_string(e->a) + ", " + e->name + ")";
    }
    return "<bad>";
}

const SheafDef* Context::find_sheaf(const std::string& name) const {
    for (const auto& s : sheaves)
        if (s.name == name) return &s;
    return nullptr;
}

std::string ambient_variety(const Context& ctx, const ExprPtr& e) {
    if (!e) throw std::invalid_argument("ambient_variety: null expression");
    switch (e->kind) {
        case ExprKind::Omega:
        case ExprKind::Structure:
            return e->name;
        case ExprKind::Line:
            return ctx.line_bundles.at(e->name).variety;
        case ExprKind::Bundle:
            return ctx.bundles.at(e->name).variety;
        case ExprKind::Push:
        case ExprKind::RPush: {
            const Morphism& f = ctx.morphisms.at(e->name);
            std::string inner = ambient_variety(ctx, e->a);
            if (inner != f.source)
                throw std::invalid_argument("push along " + f.name + ": argument lives on " +
                                            inner + ", not on the source " + f.source);
            return f.target;
        }
        case ExprKind::Tensor: {
            std::string va = ambient_variety(ctx, e->a);
            std::string vb = ambient_variety(ctx, e->b);
            if (va != vb)
                throw std::invalid_argument("tensor of sheaves on different varieties: " +
                                            va + " vs " + vb);
            return va;
        }
        case ExprKind::Schur:
        case ExprKind::SchurPlus:
        case ExprKind::Det:
        case ExprKind::Dual:
            return ambient_variety(ctx, e->a);
        case ExprKind::TwistCeil: {
            std::string va = ambient_variety(ctx, e->a);
            const Divisor& d = ctx.divisors.at(e->name);
            if (d.variety != va)
                throw std::invalid_argument("twist_ceil: divisor " + d.name + " lives on " +
                                            d.variety + ", not on " + va);
            return va;
        }
    }
    throw std::invalid_argument("ambient_variety: bad node");
}

// Rank bookkeeping for locally free expressions. Pushforwards and
// structure/omega factors are treated as rank 1 markers; the interesting
// cases are bundle atoms and the functor constructors.
unsigned long long expr_rank(const Context& ctx, const ExprPtr& e) {
    if (!e) throw std::invalid_argument("expr_rank: null expression");
    switch (e->kind) {
        case ExprKind::Omega:
        case ExprKind::Structure:
        case ExprKind::Line:
        case ExprKind::Det:
        case ExprKind::TwistCeil:
            return 1;
        case ExprKind::Bundle:
            return ctx.bundles.at(e->name).rank;
        case ExprKind::Push:
        case ExprKind::RPush:
            return 1;  // not locally free in general; rank is not meaningful
        case ExprKind::Tensor:
            return expr_rank(ctx, e->a) * expr_rank(ctx, e->b);
        case ExprKind::Dual:
            return expr_rank(ctx, e->a);
        case ExprKind::Schur:
        case ExprKind::SchurPlus: {
            unsigned long long r = expr_rank(ctx, e->a);
            if (e->lambda.length() > r) return 0;
            return 1;  // nonzero marker; exact Schur dims live in the math layer
        }
    }
    throw std::invalid_argument("expr_rank: bad node");
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

ParseError::ParseError(int line, int col, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + message),
      line_(line),
      col_(col),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
    Ident,
    Int,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    Star,
    Colon,
    Slash,
    Plus,
    Minus,
    Arrow,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Int: return "integer";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::Equals: return "'='";
        case Tok::Star: return "'*'";
        case Tok::Colon: return "':'";
        case Tok::Slash: return "'/'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Arrow: return "'->'";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += k;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {  // comment to end of line
            std::size_t j = i;
            while (j < text.size() && text[j] != '\n') ++j;
            advance(j - i);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int tl = line, tc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, text.substr(i, j - i), tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            std::string num = text.substr(i, j - i);
            if (num.size() > 1 && num[0] == '0')
                throw ParseError(tl, tc, "integer literal with a leading zero: '" + num + "'");
            out.push_back({Tok::Int, num, tl, tc});
            advance(j - i);
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", tl, tc});
            advance(2);
            continue;
        }
        Tok k;
        switch (c) {
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Equals; break;
            case '*': k = Tok::Star; break;
            case ':': k = Tok::Colon; break;
            case '/': k = Tok::Slash; break;
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            default:
                throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), tl, tc});
        advance(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

const std::vector<std::string> kVarietyFlags = {"smooth", "projective",
                                                "rational_singularities", "irreducible"};
const std::vector<std::string> kMorphismFlags = {"surjective", "generically_finite",
                                                 "birational", "finite", "etale",
                                                 "smooth_morphism"};
const std::vector<std::string> kDivisorFlags = {"normal_crossing", "reduced", "effective"};
const std::vector<std::string> kLineFlags = {"ample", "nef", "big", "very_ample",
                                             "canonical"};
const std::vector<std::string> kBundleFlags = {"nef",
                                               "big",
                                               "ample",
                                               "globally_generated",
                                               "strongly_semistable",
                                               "unitary_flat",
                                               "uniformly_nef",
                                               "c1_zero"};

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    Document run() {
        Document doc;
        while (peek().kind != Tok::End) statement(doc);
        return doc;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg,
                           std::vector<std::string> expected = {}) {
        throw ParseError(t.line, t.col, msg, std::move(expected));
    }

    Token expect(Tok k) {
        if (peek().kind != k)
            fail(peek(), std::string("expected ") + tok_name(k) + ", found '" + peek().text +
                             "'",
                 {tok_name(k)});
        return next();
    }

    Token expect_ident() { return expect(Tok::Ident); }

    Token expect_keyword(const std::string& kw) {
        if (peek().kind != Tok::Ident || peek().text != kw)
            fail(peek(), "expected '" + kw + "', found '" + peek().text + "'", {kw});
        return next();
    }

    bool accept_keyword(const std::string& kw) {
        if (peek().kind == Tok::Ident && peek().text == kw) {
            next();
            return true;
        }
        return false;
    }

    long integer() {
        bool neg = false;
        if (peek().kind == Tok::Minus) {
            next();
            neg = true;
        }
        Token t = expect(Tok::Int);
        long v = std::stol(t.text);
        return neg ? -v : v;
    }

    Rational rational() {
        long num = integer();
        if (peek().kind == Tok::Slash) {
            next();
            long den = integer();
            if (den == 0) fail(peek(), "zero denominator in rational coefficient");
            return Rational(num, den);
        }
        return Rational(num);
    }

    Partition partition_literal() {
        expect(Tok::LBracket);
        std::vector<unsigned long> parts;
        if (peek().kind != Tok::RBracket) {
            for (;;) {
                Token t = expect(Tok::Int);
                parts.push_back(std::stoul(t.text));
                if (peek().kind != Tok::Comma) break;
                next();
            }
        }
        Token close = expect(Tok::RBracket);
        try {
            return Partition(parts);
        } catch (const std::exception& ex) {
            fail(close, std::string("bad partition: ") + ex.what());
        }
    }

    // -------- declarations --------

    void statement(Document& doc) {
        Token t = peek();
        if (t.kind != Tok::Ident)
            fail(t, "expected a declaration keyword, found '" + t.text + "'",
                 {"variety", "morphism", "divisor", "linebundle", "bundle", "sheaf", "fact",
                  "query"});
        if (t.text == "variety") return variety_decl(doc);
        if (t.text == "morphism") return morphism_decl(doc);
        if (t.text == "divisor") return divisor_decl(doc);
        if (t.text == "linebundle") return linebundle_decl(doc);
        if (t.text == "bundle") return bundle_decl(doc);
        if (t.text == "sheaf") return sheaf_decl(doc);
        if (t.text == "fact") return fact_decl(doc);
        if (t.text == "query") return query_decl(doc);
        fail(t, "unknown declaration '" + t.text + "'",
             {"variety", "morphism", "divisor", "linebundle", "bundle", "sheaf", "fact",
              "query"});
    }

    void check_fresh(const Document& doc, const Token& name) {
        const std::string& n = name.text;
        if (doc.ctx.varieties.count(n) || doc.ctx.morphisms.count(n) ||
            doc.ctx.divisors.count(n) || doc.ctx.line_bundles.count(n) ||
            doc.ctx.bundles.count(n) || doc.ctx.find_sheaf(n))
            fail(name, "name '" + n + "' is already declared");
    }

    // body = '{' item (',' item)* '}' where item is flag or key=value.
    void body(const std::vector<std::string>& allowed_flags, std::set<std::string>& flags,
              const std::function<bool(const std::string&, const Token&)>& keyval) {
        expect(Tok::LBrace);
        if (peek().kind != Tok::RBrace) {
            for (;;) {
                Token item = expect_ident();
                if (peek().kind == Tok::Equals) {
                    next();
                    if (!keyval(item.text, item))
                        fail(item, "unknown attribute '" + item.text + "'");
                } else {
                    if (std::find(allowed_flags.begin(), allowed_flags.end(), item.text) ==
                        allowed_flags.end())
                        fail(item, "unknown flag '" + item.text + "'", allowed_flags);
                    flags.insert(item.text);
                }
                if (peek().kind != Tok::Comma) break;
                next();
            }
        }
        expect(Tok::RBrace);
    }

    void variety_decl(Document& doc) {
        next();  // 'variety'
        Token name = expect_ident();
        check_fresh(doc, name);
        Variety v;
        v.name = name.text;
        bool has_dim = false;
        body(kVarietyFlags, v.flags, [&](const std::string& key, const Token& at) {
            if (key != "dim") return false;
            long d = integer();
            if (d < 0) fail(at, "dim must be nonnegative");
            v.dim = static_cast<unsigned>(d);
            has_dim = true;
            return true;
        });
        if (!has_dim) fail(name, "variety '" + name.text + "' needs a dim attribute");
        doc.ctx.varieties[v.name] = v;
        doc.ctx.variety_order.push_back(v.name);
    }

    void morphism_decl(Document& doc) {
        next();
        Token name = expect_ident();
        check_fresh(doc, name);
        Morphism m;
        m.name = name.text;
        expect(Tok::Colon);
        Token src = expect_ident();
        expect(Tok::Arrow);
        Token dst = expect_ident();
        if (!doc.ctx.varieties.count(src.text))
            fail(src, "unresolved variety '" + src.text + "'");
        if (!doc.ctx.varieties.count(dst.text))
            fail(dst, "unresolved variety '" + dst.text + "'");
        m.source = src.text;
        m.target = dst.text;
        if (peek().kind == Tok::LBrace)
            body(kMorphismFlags, m.flags,
                 [&](const std::string&, const Token&) { return false; });
        doc.ctx.morphisms[m.name] = m;
        doc.ctx.morphism_order.push_back(m.name);
    }

    void divisor_decl(Document& doc) {
        next();
        Token name = expect_ident();
        check_fresh(doc, name);
        Divisor d;
        d.name = name.text;
        expect_keyword("on");
        Token var = expect_ident();
        if (!doc.ctx.varieties.count(var.text))
            fail(var, "unresolved variety '" + var.text + "'");
        d.variety = var.text;
        body(kDivisorFlags, d.flags, [&](const std::string& key, const Token& at) {
            if (key != "components") return false;
            expect(Tok::LBracket);
            if (peek().kind != Tok::RBracket) {
                for (;;) {
                    Token comp = expect_ident();
                    expect(Tok::Colon);
                    DivisorComponent dc;
                    dc.name = comp.text;
                    dc.coeff = rational();
                    for (const auto& prev : d.components)
                        if (prev.name == dc.name)
                            fail(comp, "duplicate component '" + dc.name + "'");
                    d.components.push_back(dc);
                    if (peek().kind != Tok::Comma) break;
                    next();
                }
            }
            expect(Tok::RBracket);
            (void)at;
            return true;
        });
        doc.ctx.divisors[d.name] = d;
        doc.ctx.divisor_order.push_back(d.name);
    }

    void linebundle_decl(Document& doc) {
        next();
        Token name = expect_ident();
        check_fresh(doc, name);
        LineBundle l;
        l.name = name.text;
        expect_keyword("on");
        Token var = expect_ident();
        if (!doc.ctx.varieties.count(var.text))
            fail(var, "unresolved variety '" + var.text + "'");
        l.variety = var.text;
        if (peek().kind == Tok::LBrace)
            body(kLineFlags, l.flags, [&](const std::string&, const Token&) { return false; });
        doc.ctx.line_bundles[l.name] = l;
        doc.ctx.line_bundle_order.push_back(l.name);
    }

    void bundle_decl(Document& doc) {
        next();
        Token name = expect_ident();
        check_fresh(doc, name);
        Bundle b;
        b.name = name.text;
        expect_keyword("on");
        Token var = expect_ident();
        if (!doc.ctx.varieties.count(var.text))
            fail(var, "unresolved variety '" + var.text + "'");
        b.variety = var.text;
        bool has_rank = false;
        body(kBundleFlags, b.flags, [&](const std::string& key, const Token& at) {
            if (key != "rank") return false;
            long r = integer();
            if (r < 1) fail(at, "rank must be at least 1");
            b.rank = static_cast<unsigned>(r);
            has_rank = true;
            return true;
        });
        if (!has_rank) fail(name, "bundle '" + name.text + "' needs a rank attribute");
        doc.ctx.bundles[b.name] = b;
        doc.ctx.bundle_order.push_back(b.name);
    }

    void sheaf_decl(Document& doc) {
        next();
        Token name = expect_ident();
        check_fresh(doc, name);
        expect(Tok::Equals);
        SheafDef def;
        def.name = name.text;
        def.expr = expression(doc);
        doc.ctx.sheaves.push_back(def);
    }

    void fact_decl(Document& doc) {
        next();
        Token kind = expect_ident();
        Fact f;
        f.kind = kind.text;
        f.span = {kind.line, kind.col};
        if (f.kind == "extension") {  // fact extension F2 of F3 by F1
            f.e1 = expression(doc);
            expect_keyword("of");
            f.e2 = expression(doc);
            expect_keyword("by");
            f.e3 = expression(doc);
        } else if (f.kind == "summand") {  // fact summand S of F
            f.e1 = expression(doc);
            expect_keyword("of");
            f.e2 = expression(doc);
        } else if (f.kind == "quotient") {  // fact quotient F of E
            f.names.push_back(bundle_ref(doc).text);
            expect_keyword("of");
            f.names.push_back(bundle_ref(doc).text);
        } else if (f.kind == "sum") {  // fact sum E = E1 + E2
            f.names.push_back(bundle_ref(doc).text);
            expect(Tok::Equals);
            f.names.push_back(bundle_ref(doc).text);
            expect(Tok::Plus);
            f.names.push_back(bundle_ref(doc).text);
        } else if (f.kind == "det") {  // fact det E = L
            f.names.push_back(bundle_ref(doc).text);
            expect(Tok::Equals);
            Token l = expect_ident();
            if (!doc.ctx.line_bundles.count(l.text))
                fail(l, "unresolved line bundle '" + l.text + "'");
            f.names.push_back(l.text);
        } else if (f.kind == "reldual") {  // fact reldual E via f
            f.names.push_back(bundle_ref(doc).text);
            expect_keyword("via");
            Token m = expect_ident();
            if (!doc.ctx.morphisms.count(m.text))
                fail(m, "unresolved morphism '" + m.text + "'");
            f.names.push_back(m.text);
        } else if (f.kind == "cotangent") {  // fact cotangent E of X
            f.names.push_back(bundle_ref(doc).text);
            expect_keyword("of");
            Token x = expect_ident();
            if (!doc.ctx.varieties.count(x.text))
                fail(x, "unresolved variety '" + x.text + "'");
            f.names.push_back(x.text);
        } else if (f.kind == "zero_scheme") {  // fact zero_scheme Z of E
            Token z = expect_ident();
            f.names.push_back(z.text);
            expect_keyword("of");
            f.names.push_back(bundle_ref(doc).text);
        } else if (f.kind == "base_locus") {  // fact base_locus E = 1
            f.names.push_back(bundle_ref(doc).text);
            expect(Tok::Equals);
            f.value = integer();
            if (f.value < 0) fail(kind, "base locus dimension must be nonnegative");
        } else if (f.kind == "nefbig_pair") {  // fact nefbig_pair L D
            Token l = expect_ident();
            if (!doc.ctx.line_bundles.count(l.text))
                fail(l, "unresolved line bundle '" + l.text + "'");
            f.names.push_back(l.text);
            Token d = expect_ident();
            if (!doc.ctx.divisors.count(d.text))
                fail(d, "unresolved divisor '" + d.text + "'");
            f.names.push_back(d.text);
        } else {
            fail(kind, "unknown fact kind '" + kind.text + "'",
                 {"extension", "summand", "quotient", "sum", "det", "reldual", "cotangent",
                  "zero_scheme", "base_locus", "nefbig_pair"});
        }
        doc.ctx.facts.push_back(f);
    }

    Token bundle_ref(Document& doc) {
        Token t = expect_ident();
        if (!doc.ctx.bundles.count(t.text)) fail(t, "unresolved bundle '" + t.text + "'");
        return t;
    }

    void query_decl(Document& doc) {
        next();
        Token kind = expect_ident();
        Query q;
        q.kind = kind.text;
        q.span = {kind.line, kind.col};
        static const std::vector<std::string> kinds = {
            "acyclic",         "semipositive",       "positive",
            "nef",             "big",                "vanishing_range",
            "koszul_restriction", "connectedness",   "qlambda"};
        if (std::find(kinds.begin(), kinds.end(), q.kind) == kinds.end())
            fail(kind, "unknown query kind '" + kind.text + "'", kinds);
        expect(Tok::LParen);
        if (q.kind == "connectedness") {
            q.name2 = expect_ident().text;
        } else if (q.kind == "qlambda") {
            q.lambda = partition_literal();
            expect(Tok::Comma);
            Token x = expect_ident();
            if (!doc.ctx.varieties.count(x.text))
                fail(x, "unresolved variety '" + x.text + "'");
            q.name2 = x.text;
        } else if (q.kind == "koszul_restriction") {
            q.subject = expression(doc);
            expect(Tok::Comma);
            q.name2 = expect_ident().text;
        } else {
            q.subject = expression(doc);
        }
        expect(Tok::RParen);
        doc.queries.push_back(q);
    }

    // -------- expressions --------

    ExprPtr expression(Document& doc) {
        ExprPtr left = primary(doc);
        while (peek().kind == Tok::Star) {
            Token star = next();
            ExprPtr right = primary(doc);
            auto node = std::make_shared<SheafExpr>();
            node->kind = ExprKind::Tensor;
            node->a = left;
            node->b = right;
            node->span = {star.line, star.col};
            left = node;
        }
        return left;
    }

    ExprPtr primary(Document& doc) {
        if (peek().kind == Tok::LParen) {
            next();
            ExprPtr e = expression(doc);
            expect(Tok::RParen);
            return e;
        }
        Token t = expect_ident();
        auto node = std::make_shared<SheafExpr>();
        node->span = {t.line, t.col};
        auto variety_arg = [&]() {
            expect(Tok::LParen);
            Token x = expect_ident();
            if (!doc.ctx.varieties.count(x.text))
                fail(x, "unresolved variety '" + x.text + "'");
            expect(Tok::RParen);
            return x.text;
        };
        if (t.text == "omega") {
            node->kind = ExprKind::Omega;
            node->name = variety_arg();
            return node;
        }
        if (t.text == "structure") {
            node->kind = ExprKind::Structure;
            node->name = variety_arg();
            return node;
        }
        if (t.text == "push") {
            node->kind = ExprKind::Push;
            expect(Tok::LParen);
            Token f = expect_ident();
            if (!doc.ctx.morphisms.count(f.text))
                fail(f, "unresolved morphism '" + f.text + "'");
            node->name = f.text;
            expect(Tok::Comma);
            node->a = expression(doc);
            expect(Tok::RParen);
            return node;
        }
        if (t.text == "rpush") {
            node->kind = ExprKind::RPush;
            expect(Tok::LParen);
            Token idx = expect(Tok::Int);
            node->index = static_cast<int>(std::stol(idx.text));
            expect(Tok::Comma);
            Token f = expect_ident();
            if (!doc.ctx.morphisms.count(f.text))
                fail(f, "unresolved morphism '" + f.text + "'");
            node->name = f.text;
            expect(Tok::Comma);
            node->a = expression(doc);
            expect(Tok::RParen);
            return node;
        }
        if (t.text == "schur" || t.text == "schur_plus") {
            node->kind = t.text == "schur" ? ExprKind::Schur : ExprKind::SchurPlus;
            expect(Tok::LParen);
            node->lambda = partition_literal();
            expect(Tok::Comma);
            node->a = expression(doc);
            expect(Tok::RParen);
            return node;
        }
        if (t.text == "det" || t.text == "dual") {
            node->kind = t.text == "det" ? ExprKind::Det : ExprKind::Dual;
            expect(Tok::LParen);
            node->a = expression(doc);
            expect(Tok::RParen);
            return node;
        }
        if (t.text == "twist_ceil") {
            node->kind = ExprKind::TwistCeil;
            expect(Tok::LParen);
            node->a = expression(doc);
            expect(Tok::Comma);
            Token d = expect_ident();
            if (!doc.ctx.divisors.count(d.text))
                fail(d, "unresolved divisor '" + d.text + "'");
            node->name = d.text;
            expect(Tok::RParen);
            return node;
        }
        // Plain identifier: a declared line bundle, bundle, or sheaf macro.
        if (doc.ctx.line_bundles.count(t.text)) {
            node->kind = ExprKind::Line;
            node->name = t.text;
            return node;
        }
        if (doc.ctx.bundles.count(t.text)) {
            node->kind = ExprKind::Bundle;
            node->name = t.text;
            return node;
        }
        if (const SheafDef* def = doc.ctx.find_sheaf(t.text)) return def->expr;
        fail(t, "unresolved name '" + t.text + "'");
    }
};

}  // namespace

Document parse(const std::string& text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Pretty printer
// ---------------------------------------------------------------------------

namespace {

std::string flag_suffix(const std::set<std::string>& flags, bool leading_comma) {
    std::string out;
    for (const auto& f : flags) {
        if (!out.empty() || leading_comma) out += ", ";
        out += f;
    }
    return out;
}

}  // namespace

std::string pretty_print(const Document& doc) {
    std::ostringstream out;
    const Context& c = doc.ctx;
    for (const auto& n : c.variety_order) {
        const Variety& v = c.varieties.at(n);
        out << "variety " << v.name << " { dim=" << v.dim << flag_suffix(v.flags, true)
            << " }\n";
    }
    for (const auto& n : c.morphism_order) {
        const Morphism& m = c.morphisms.at(n);
        out << "morphism " << m.name << " : " << m.source << " -> " << m.target;
        if (!m.flags.empty()) out << " { " << flag_suffix(m.flags, false) << " }";
        out << "\n";
    }
    for (const auto& n : c.divisor_order) {
        const Divisor& d = c.divisors.at(n);
        out << "divisor " << d.name << " on " << d.variety << " { components = [";
        for (std::size_t i = 0; i < d.components.size(); ++i) {
            if (i) out << ", ";
            out << d.components[i].name << ":" << rational_to_string(d.components[i].coeff);
        }
        out << "]" << flag_suffix(d.flags, true) << " }\n";
    }
    for (const auto& n : c.line_bundle_order) {
        const LineBundle& l = c.line_bundles.at(n);
        out << "linebundle " << l.name << " on " << l.variety;
        if (!l.flags.empty()) out << " { " << flag_suffix(l.flags, false) << " }";
        out << "\n";
    }
    for (const auto& n : c.bundle_order) {
        const Bundle& b = c.bundles.at(n);
        out << "bundle " << b.name << " on " << b.variety << " { rank=" << b.rank
            << flag_suffix(b.flags, true) << " }\n";
    }
    for (const auto& s : c.sheaves) out << "sheaf " << s.name << " = " << to_string(s.expr)
                                        << "\n";
    for (const auto& f : c.facts) {
        out << "fact " << f.kind << " ";
        if (f.kind == "extension")
            out << to_string(f.e1) << " of " << to_string(f.e2) << " by " << to_string(f.e3);
        else if (f.kind == "summand")
            out << to_string(f.e1) << " of " << to_string(f.e2);
        else if (f.kind == "quotient")
            out << f.names[0] << " of " << f.names[1];
        else if (f.kind == "sum")
            out << f.names[0] << " = " << f.names[1] << " + " << f.names[2];
        else if (f.kind == "det")
            out << f.names[0] << " = " << f.names[1];
        else if (f.kind == "reldual")
            out << f.names[0] << " via " << f.names[1];
        else if (f.kind == "cotangent")
            out << f.names[0] << " of " << f.names[1];
        else if (f.kind == "zero_scheme")
            out << f.names[0] << " of " << f.names[1];
        else if (f.kind == "base_locus")
            out << f.names[0] << " = " << f.value;
        else if (f.kind == "nefbig_pair")
            out << f.names[0] << " " << f.names[1];
        out << "\n";
    }
    for (const auto& q : doc.queries) {
        out << "query " << q.kind << "(";
        if (q.kind == "connectedness")
            out << q.name2;
        else if (q.kind == "qlambda")
            out << "[" << q.lambda.to_string() << "], " << q.name2;
        else if (q.kind == "koszul_restriction")
            out << to_string(q.subject) << ", " << q.name2;
        else
            out << to_string(q.subject);
        out << ")\n";
    }
    return out.str();
}

bool structurally_equal(const Document& a, const Document& b) {
    const Context &x = a.ctx, &y = b.ctx;
    auto flags_eq = [](const std::set<std::string>& p, const std::set<std::string>& q) {
        return p == q;
    };
    if (x.variety_order != y.variety_order || x.morphism_order != y.morphism_order ||
        x.divisor_order != y.divisor_order || x.line_bundle_order != y.line_bundle_order ||
        x.bundle_order != y.bundle_order)
        return false;
    for (const auto& [n, v] : x.varieties) {
        auto it = y.varieties.find(n);
        if (it == y.varieties.end() || it->second.dim != v.dim ||
            !flags_eq(it->second.flags, v.flags))
            return false;
    }
    for (const auto& [n, m] : x.morphisms) {
        auto it = y.morphisms.find(n);
        if (it == y.morphisms.end() || it->second.source != m.source ||
            it->second.target != m.target || !flags_eq(it->second.flags, m.flags))
            return false;
    }
    for (const auto& [n, d] : x.divisors) {
        auto it = y.divisors.find(n);
        if (it == y.divisors.end() || it->second.variety != d.variety ||
            !(it->second.components == d.components) ||
            !flags_eq(it->second.flags, d.flags))
            return false;
    }
    for (const auto& [n, l] : x.line_bundles) {
        auto it = y.line_bundles.find(n);
        if (it == y.line_bundles.end() || it->second.variety != l.variety ||
            !flags_eq(it->second.flags, l.flags))
            return false;
    }
    for (const auto& [n, e] : x.bundles) {
        auto it = y.bundles.find(n);
        if (it == y.bundles.end() || it->second.variety != e.variety ||
            it->second.rank != e.rank || !flags_eq(it->second.flags, e.flags))
            return false;
    }
    if (x.sheaves.size() != y.sheaves.size()) return false;
    for (std::size_t i = 0; i < x.sheaves.size(); ++i)
        if (x.sheaves[i].name != y.sheaves[i].name ||
            !(*x.sheaves[i].expr == *y.sheaves[i].expr))
            return false;
    if (x.facts.size() != y.facts.size()) return false;
    auto expr_eq = [](const ExprPtr& p, const ExprPtr& q) {
        if (!p || !q) return !p && !q;
        return *p == *q;
    };
    for (std::size_t i = 0; i < x.facts.size(); ++i) {
        const Fact &p = x.facts[i], &q = y.facts[i];
        if (p.kind != q.kind || p.names != q.names || p.value != q.value ||
            !expr_eq(p.e1, q.e1) || !expr_eq(p.e2, q.e2) || !expr_eq(p.e3, q.e3))
            return false;
    }
    if (a.queries.size() != b.queries.size()) return false;
    for (std::size_t i = 0; i < a.queries.size(); ++i) {
        const Query &p = a.queries[i], &q = b.queries[i];
        if (p.kind != q.kind || p.name2 != q.name2 || !(p.lambda == q.lambda) ||
            !expr_eq(p.subject, q.subject))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// JSON AST export
// ---------------------------------------------------------------------------

namespace {

ordered_json expr_json(const ExprPtr& e) {
    ordered_json j;
    switch (e->kind) {
        case ExprKind::Omega: j["kind"] = "omega"; break;
        case ExprKind::Structure: j["kind"] = "structure"; break;
        case ExprKind::Line: j["kind"] = "line"; break;
        case ExprKind::Bundle: j["kind"] = "bundle"; break;
        case ExprKind::Push: j["kind"] = "push"; break;
        case ExprKind::RPush: j["kind"] = "rpush"; break;
        case ExprKind::Tensor: j["kind"] = "tensor"; break;
        case ExprKind::Schur: j["kind"] = "schur"; break;
        case ExprKind::SchurPlus: j["kind"] = "schur_plus"; break;
        case ExprKind::Det: j["kind"] = "det"; break;
        case ExprKind::Dual: j["kind"] = "dual"; break;
        case ExprKind::TwistCeil: j["kind"] = "twist_ceil"; break;
    }
    if (!e->name.empty()) j["name"] = e->name;
    if (e->kind == ExprKind::RPush) j["index"] = e->index;
    if (e->kind == ExprKind::Schur || e->kind == ExprKind::SchurPlus)
        j["lambda"] = e->lambda.to_string();
    ordered_json children = ordered_json::array();
    if (e->a) children.push_back(expr_json(e->a));
    if (e->b) children.push_back(expr_json(e->b));
    if (!children.empty()) j["children"] = children;
    j["span"] = {{"line", e->span.line}, {"col", e->span.col}};
    return j;
}

ordered_json flags_json(const std::set<std::string>& flags) {
    ordered_json a = ordered_json::array();
    for (const auto& f : flags) a.push_back(f);
    return a;
}

}  // namespace

std::string ast_to_json(const Document& doc) {
    const Context& c = doc.ctx;
    ordered_json j;
    j["varieties"] = ordered_json::array();
    for (const auto& n : c.variety_order) {
        const Variety& v = c.varieties.at(n);
        j["varieties"].push_back(
            {{"name", v.name}, {"dim", v.dim}, {"flags", flags_json(v.flags)}});
    }
    j["morphisms"] = ordered_json::array();
    for (const auto& n : c.morphism_order) {
        const Morphism& m = c.morphisms.at(n);
        j["morphisms"].push_back({{"name", m.name},
                                  {"source", m.source},
                                  {"target", m.target},
                                  {"flags", flags_json(m.flags)}});
    }
    j["divisors"] = ordered_json::array();
    for (const auto& n : c.divisor_order) {
        const Divisor& d = c.divisors.at(n);
        ordered_json comps = ordered_json::array();
        for (const auto& dc : d.components)
            comps.push_back({{"name", dc.name}, {"coeff", rational_to_string(dc.coeff)}});
        j["divisors"].push_back({{"name", d.name},
                                 {"variety", d.variety},
                                 {"components", comps},
                                 {"flags", flags_json(d.flags)}});
    }
    j["line_bundles"] = ordered_json::array();
    for (const auto& n : c.line_bundle_order) {
        const LineBundle& l = c.line_bundles.at(n);
        j["line_bundles"].push_back(
            {{"name", l.name}, {"variety", l.variety}, {"flags", flags_json(l.flags)}});
    }
    j["bundles"] = ordered_json::array();
    for (const auto& n : c.bundle_order) {
        const Bundle& b = c.bundles.at(n);
        j["bundles"].push_back({{"name", b.name},
                                {"variety", b.variety},
                                {"rank", b.rank},
                                {"flags", flags_json(b.flags)}});
    }
    j["sheaves"] = ordered_json::array();
    for (const auto& s : c.sheaves)
        j["sheaves"].push_back({{"name", s.name}, {"expr", expr_json(s.expr)}});
    j["facts"] = ordered_json::array();
    for (const auto& f : c.facts) {
        ordered_json fj;
        fj["kind"] = f.kind;
        fj["names"] = f.names;
        if (f.e1) fj["e1"] = expr_json(f.e1);
        if (f.e2) fj["e2"] = expr_json(f.e2);
        if (f.e3) fj["e3"] = expr_json(f.e3);
        if (f.kind == "base_locus") fj["value"] = f.value;
        j["facts"].push_back(fj);
    }
    j["queries"] = ordered_json::array();
    for (const auto& q : doc.queries) {
        ordered_json qj;
        qj["kind"] = q.kind;
        if (q.subject) qj["subject"] = expr_json(q.subject);
        if (!q.name2.empty()) qj["name"] = q.name2;
        if (q.kind == "qlambda") qj["lambda"] = q.lambda.to_string();
        qj["span"] = {{"line", q.span.line}, {"col", q.span.col}};
        j["queries"].push_back(qj);
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Validator
// ---------------------------------------------------------------------------

namespace {

void walk(const ExprPtr& e, const std::function<void(const ExprPtr&)>& fn) {
    if (!e) return;
    fn(e);
    walk(e->a, fn);
    walk(e->b, fn);
}

}  // namespace

ValidationResult validate(Document& doc) {
    ValidationResult res;
    Context& c = doc.ctx;

    auto add_flag = [&](std::set<std::string>& flags, const std::string& flag,
                        const std::string& what) {
        if (flags.insert(flag).second)
            res.derived_flags.push_back(what + ": +" + flag);
    };

    // Flag closure on line bundles: very_ample => ample => nef and big.
    for (const auto& n : c.line_bundle_order) {
        LineBundle& l = c.line_bundles.at(n);
        std::string what = "linebundle " + l.name;
        if (l.flags.count("very_ample")) add_flag(l.flags, "ample", what);
        if (l.flags.count("ample")) {
            add_flag(l.flags, "nef", what);
            add_flag(l.flags, "big", what);
        }
    }
    // Flag closure on bundles.
    for (const auto& n : c.bundle_order) {
        Bundle& b = c.bundles.at(n);
        std::string what = "bundle " + b.name;
        if (b.flags.count("ample")) {
            add_flag(b.flags, "nef", what);
            add_flag(b.flags, "big", what);
        }
        if (b.flags.count("globally_generated")) add_flag(b.flags, "nef", what);
        if (b.flags.count("unitary_flat")) {
            add_flag(b.flags, "strongly_semistable", what);
            add_flag(b.flags, "c1_zero", what);
        }
    }

    // Expression bookkeeping: every expression has a single ambient variety
    // and rpush/schur arguments are sensible.
    auto check_expr = [&](const ExprPtr& e, const std::string& where) {
        if (!e) return;
        try {
            ambient_variety(c, e);
        } catch (const std::exception& ex) {
            res.errors.push_back(where + ": " + ex.what());
            return;
        }
        walk(e, [&](const ExprPtr& node) {
            if (node->kind == ExprKind::RPush) {
                const Morphism& f = c.morphisms.at(node->name);
                unsigned dim_src = c.varieties.at(f.source).dim;
                if (node->index < 0)
                    res.errors.push_back(where + ": rpush degree must be nonnegative");
                else if (static_cast<unsigned>(node->index) > dim_src)
                    res.warnings.push_back(where + ": rpush(" + std::to_string(node->index) +
                                           ", " + f.name +
                                           ", ...) exceeds the source dimension; the "
                                           "expression is the zero sheaf");
            }
            if (node->kind == ExprKind::Schur || node->kind == ExprKind::SchurPlus) {
                unsigned long long r = expr_rank(c, node->a);
                if (node->lambda.length() > r)
                    res.warnings.push_back(
                        where + ": schur shape [" + node->lambda.to_string() +
                        "] is longer than the rank " + std::to_string(r) +
                        " of its argument; the expression is the zero sheaf");
            }
        });
    };

    for (const auto& s : c.sheaves) check_expr(s.expr, "sheaf " + s.name);
    for (const auto& f : c.facts) {
        std::string where = "fact " + f.kind;
        check_expr(f.e1, where);
        check_expr(f.e2, where);
        check_expr(f.e3, where);
        if (f.kind == "sum") {
            const Bundle &e = c.bundles.at(f.names[0]), &e1 = c.bundles.at(f.names[1]),
                         &e2 = c.bundles.at(f.names[2]);
            if (e.rank != e1.rank + e2.rank)
                res.errors.push_back(where + ": rank(" + e.name + ") = " +
                                     std::to_string(e.rank) + " but the summands have ranks " +
                                     std::to_string(e1.rank) + " and " +
                                     std::to_string(e2.rank));
        }
        if (f.kind == "quotient") {
            const Bundle &q = c.bundles.at(f.names[0]), &e = c.bundles.at(f.names[1]);
            if (q.rank > e.rank)
                res.errors.push_back(where + ": quotient rank exceeds the source rank");
            if (q.variety != e.variety)
                res.errors.push_back(where + ": quotient and source live on different varieties");
        }
    }
    for (const auto& q : doc.queries) check_expr(q.subject, "query " + q.kind);

    // Divisor components must not be empty for twist_ceil to mean anything;
    // empty divisors are legal but worth a note when used with twist_ceil.
    auto note_empty_twist = [&](const ExprPtr& e, const std::string& where) {
        walk(e, [&](const ExprPtr& node) {
            if (node->kind == ExprKind::TwistCeil &&
                c.divisors.at(node->name).components.empty())
                res.warnings.push_back(where + ": twist_ceil over the empty divisor " +
                                       node->name + " is the identity twist");
        });
    };
    for (const auto& s : c.sheaves) note_empty_twist(s.expr, "sheaf " + s.name);
    for (const auto& q : doc.queries)
        if (q.subject) note_empty_twist(q.subject, "query " + q.kind);

    return res;
}

}  // namespace gad::dsl
