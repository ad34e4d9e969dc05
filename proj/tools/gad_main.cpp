#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gad/bwb.hpp"
#include "gad/dsl/parse.hpp"
#include "gad/engine/engine.hpp"
#include "gad/schur.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace gad;

namespace {

constexpr const char* kVersion = "0.1.0";

ordered_json envelope(const std::string& command, ordered_json inputs, ordered_json results) {
    ordered_json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["rule_catalog_hash"] = engine::rule_catalog_hash();
    j["inputs"] = std::move(inputs);
    j["results"] = std::move(results);
    return j;
}

std::string partition_display(const Partition& p) { return "(" + p.to_string() + ")"; }

std::vector<long> parse_int_list(const std::string& text) {
    std::vector<long> out;
    std::istringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) out.push_back(std::stol(piece));
    return out;
}

std::string table_text(const CohomologyTable& t) {
    if (t.all_zero()) return "all zero\n";
    std::ostringstream out;
    for (const auto& [q, d] : t.dims) out << "H^" << q << " = " << d << "\n";
    if (!t.label.empty()) out << "label: " << t.label << "\n";
    return out.str();
}

ordered_json table_json(const CohomologyTable& t) {
    return ordered_json::parse(t.to_json_string());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_schur(const std::string& mode, const std::string& lambda_s, const std::string& mu_s,
              std::size_t rank, bool json) {
    Partition lam = Partition::parse(lambda_s);
    ordered_json results;
    std::string text;
    if (mode == "dim") {
        auto d = schur_dim(lam, rank);
        results = d;
        text = std::to_string(d) + "\n";
    } else if (mode == "construct") {
        auto mod = schur_apply(lam, rank);
        results = {{"dim", mod.dim}, {"ambient_dim", mod.ambient_dim}};
        text = std::to_string(mod.dim) + "\n";
    } else if (mode == "quotient") {
        auto d = schur_quotient(lam, rank);
        results = d;
        text = std::to_string(d) + "\n";
    } else if (mode == "lr") {
        Partition mu = Partition::parse(mu_s);
        auto lr = littlewood_richardson(lam, mu);
        std::ostringstream out;
        ordered_json map = ordered_json::object();
        bool first = true;
        for (auto it = lr.rbegin(); it != lr.rend(); ++it) {
            if (!first) out << " ";
            first = false;
            out << partition_display(it->first) << ":" << it->second;
            map[it->first.to_string()] = it->second;
        }
        results = map;
        text = out.str() + "\n";
    } else if (mode == "monomial") {
        auto exp = monomial_expansion(lam, rank);
        std::ostringstream out;
        ordered_json map = ordered_json::object();
        bool first = true;
        for (const auto& [alpha, m] : exp) {
            std::ostringstream key;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                if (i) key << ",";
                key << alpha[i];
            }
            if (!first) out << " ";
            first = false;
            out << "[" << key.str() << "]:" << m;
            map[key.str()] = m;
        }
        results = map;
        text = out.str() + "\n";
    } else {
        std::cerr << "unknown schur mode '" << mode << "'\n";
        return 2;
    }
    if (json) {
        ordered_json inputs = {{"mode", mode}, {"lambda", lam.to_string()}, {"rank", rank}};
        if (mode == "lr") inputs["mu"] = mu_s;
        std::cout << envelope("schur", inputs, results).dump(2) << "\n";
    } else {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schur-Weyl functors, homogeneous cohomology tables, and a rule-based "
                 "positivity/vanishing derivation engine"};
    app.require_subcommand(1);
    unsigned long seed = 0;
    app.add_option("--seed", seed, "seed for any sampled computation (fixed default)");

    // ---- schur ----
    auto* schur = app.add_subcommand("schur", "Schur-Weyl power computations");
    std::string schur_mode, lambda_s, mu_s;
    std::size_t rank = 1;
    bool schur_json = false;
    schur->add_option("mode", schur_mode, "dim | construct | quotient | lr | monomial")
        ->required();
    schur->add_option("--lambda", lambda_s, "partition, e.g. 2,1")->required();
    schur->add_option("--mu", mu_s, "second partition (lr mode)");
    schur->add_option("--rank", rank, "rank of the underlying space");
    schur->add_flag("--json", schur_json, "emit a JSON envelope");

    // ---- bwb ----
    auto* bwb = app.add_subcommand("bwb", "cohomology tables on flag varieties and P^n");
    std::string weight_s, twists_s;
    std::size_t bwb_rank = 0;
    bool bwb_json = false;
    bwb->add_option("--rank", bwb_rank, "rank e of the flag variety");
    bwb->add_option("--weight", weight_s, "weight entries, e.g. -1,1");
    bwb->add_option("--twists", twists_s, "jump twists k:a;... with det exponent at k=e");
    bwb->add_flag("--json", bwb_json, "emit a JSON envelope");
    auto* bott = bwb->add_subcommand("bott", "H^q(P^n, Omega^p(k))");
    unsigned bott_n = 1, bott_p = 0;
    long bott_k = 0;
    bott->add_option("--n", bott_n, "dimension of projective space")->required();
    bott->add_option("--p", bott_p, "exterior power of the cotangent sheaf")->required();
    bott->add_option("--k", bott_k, "twist degree")->required();

    // ---- parse ----
    auto* parse_cmd = app.add_subcommand("parse", "parse and validate a .gad file");
    std::string parse_file;
    bool parse_json = false, parse_pretty = false;
    parse_cmd->add_option("file", parse_file, "input .gad file")->required();
    parse_cmd->add_flag("--json", parse_json, "emit the JSON AST");
    parse_cmd->add_flag("--pretty", parse_pretty, "emit the canonical formatting");

    // ---- derive ----
    auto* derive_cmd = app.add_subcommand("derive", "run the queries of a .gad file");
    std::string derive_file, verify_spec;
    bool derive_json = false, derive_explain = false, pos_strict = false,
         derive_golden = false;
    int max_depth = 12;
    derive_cmd->add_option("file", derive_file, "input .gad file")->required();
    derive_cmd->add_flag("--json", derive_json, "emit a JSON envelope");
    derive_cmd->add_flag("--explain", derive_explain, "print indented derivations");
    derive_cmd->add_flag("--golden", derive_golden,
                         "print bare per-query result JSON (for golden files)");
    derive_cmd->add_flag("--pos-strict", pos_strict,
                         "strict reading of the positivity cone");
    derive_cmd->add_option("--max-depth", max_depth, "expression depth bound");
    derive_cmd->add_option("--verify-split", verify_spec,
                           "split instantiation, e.g. n=1;E=1,1");

    // ---- verify ----
    auto* verify_cmd =
        app.add_subcommand("verify", "derive, then check claims on a split instantiation");
    std::string verify_file, verify_inst;
    bool verify_json = false, verify_strict = false;
    verify_cmd->add_option("file", verify_file, "input .gad file")->required();
    verify_cmd->add_option("--inst", verify_inst, "split instantiation, e.g. n=1;E=1,1")
        ->required();
    verify_cmd->add_flag("--json", verify_json, "emit a JSON envelope");
    verify_cmd->add_flag("--pos-strict", verify_strict,
                         "strict reading of the positivity cone");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*schur) return run_schur(schur_mode, lambda_s, mu_s, rank, schur_json);

        if (*bwb) {
            CohomologyTable table;
            ordered_json inputs;
            if (*bott) {
                table = bott_formula(bott_n, bott_p, bott_k);
                inputs = {{"n", bott_n}, {"p", bott_p}, {"k", bott_k}};
            } else if (!weight_s.empty()) {
                if (bwb_rank == 0) {
                    std::cerr << "--rank is required with --weight\n";
                    return 2;
                }
                WeightVector w = parse_int_list(weight_s);
                if (w.size() != bwb_rank) {
                    std::cerr << "weight has " << w.size() << " entries, rank is "
                              << bwb_rank << "\n";
                    return 2;
                }
                table = bwb_cohomology(w);
                inputs = {{"rank", bwb_rank}, {"weight", weight_s}};
            } else if (!twists_s.empty()) {
                std::vector<std::pair<std::size_t, long>> tw;
                std::istringstream ss(twists_s);
                std::string piece;
                while (std::getline(ss, piece, ';')) {
                    std::size_t colon = piece.find(':');
                    if (colon == std::string::npos) {
                        std::cerr << "bad twist piece '" << piece << "'\n";
                        return 2;
                    }
                    tw.emplace_back(std::stoul(piece.substr(0, colon)),
                                    std::stol(piece.substr(colon + 1)));
                }
                table = bwb_cohomology(twists_to_weight(tw, bwb_rank));
                inputs = {{"rank", bwb_rank}, {"twists", twists_s}};
            } else {
                std::cerr << "bwb needs --weight, --twists, or the bott subcommand\n";
                return 2;
            }
            if (bwb_json)
                std::cout << envelope("bwb", inputs, table_json(table)).dump(2) << "\n";
            else
                std::cout << table_text(table);
            return 0;
        }

        if (*parse_cmd) {
            dsl::Document doc;
            try {
                doc = dsl::parse(read_file(parse_file));
            } catch (const dsl::ParseError& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            auto val = dsl::validate(doc);
            for (const auto& w : val.warnings) std::cerr << "warning: " << w << "\n";
            if (!val.ok()) {
                for (const auto& e : val.errors) std::cerr << "error: " << e << "\n";
                return 2;
            }
            if (parse_json)
                std::cout << dsl::ast_to_json(doc) << "\n";
            else if (parse_pretty)
                std::cout << dsl::pretty_print(doc);
            else
                std::cout << "ok: " << doc.ctx.varieties.size() << " varieties, "
                          << doc.queries.size() << " queries\n";
            return 0;
        }

        auto run_engine = [&](const std::string& file, bool strict, int depth,
                              dsl::Document& doc_out,
                              std::vector<engine::QueryResult>& results) -> int {
            try {
                doc_out = dsl::parse(read_file(file));
            } catch (const dsl::ParseError& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            auto val = dsl::validate(doc_out);
            for (const auto& w : val.warnings) std::cerr << "warning: " << w << "\n";
            if (!val.ok()) {
                for (const auto& e : val.errors) std::cerr << "error: " << e << "\n";
                return 2;
            }
            engine::Options opt;
            opt.pos_strict = strict;
            opt.max_depth = depth;
            engine::Session session(doc_out, opt);
            results = session.run_all();
            return -1;  // keep going
        };

        if (*derive_cmd) {
            dsl::Document doc;
            std::vector<engine::QueryResult> results;
            int early = run_engine(derive_file, pos_strict, max_depth, doc, results);
            if (early >= 0) return early;

            std::vector<std::vector<std::string>> verify_lines(results.size());
            if (!verify_spec.empty()) {
                auto inst = engine::parse_instantiation(verify_spec);
                for (std::size_t i = 0; i < results.size(); ++i)
                    for (const auto& cl : results[i].claims)
                        verify_lines[i].push_back(
                            std::string(engine::to_string(
                                engine::verify_split(cl, doc.ctx, inst))) +
                            " " + cl.kind + " " + cl.subject + " " + cl.range);
            }

            if (derive_golden) {
                for (const auto& r : results)
                    std::cout << engine::query_result_to_json(r) << "\n";
                return engine::exit_code(results);
            }
            if (derive_json) {
                ordered_json arr = ordered_json::array();
                for (std::size_t i = 0; i < results.size(); ++i) {
                    ordered_json r =
                        ordered_json::parse(engine::query_result_to_json(results[i]));
                    if (!verify_spec.empty()) r["verify"] = verify_lines[i];
                    arr.push_back(r);
                }
                ordered_json inputs = {{"file", derive_file},
                                       {"pos_strict", pos_strict},
                                       {"max_depth", max_depth},
                                       {"seed", seed}};
                if (!verify_spec.empty()) inputs["verify_split"] = verify_spec;
                std::cout << envelope("derive", inputs, arr).dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < results.size(); ++i) {
                    const auto& r = results[i];
                    std::cout << ordered_json::parse(engine::query_result_to_json(r))["query"]
                                     .get<std::string>()
                              << ": ";
                    switch (r.status) {
                        case engine::Status::Derived: std::cout << "derived\n"; break;
                        case engine::Status::Unknown: std::cout << "unknown\n"; break;
                        case engine::Status::DepthExceeded:
                            std::cout << "depth bound exceeded\n";
                            break;
                    }
                    if (!r.detail.empty()) std::cout << "  " << r.detail << "\n";
                    if (derive_explain && r.certificate) {
                        std::istringstream exp(engine::explain(r.certificate));
                        std::string line;
                        while (std::getline(exp, line)) std::cout << "  " << line << "\n";
                    }
                    for (const auto& cl : r.claims)
                        std::cout << "  claim " << cl.kind << " " << cl.subject
                                  << (cl.range.empty() ? "" : " for " + cl.range) << "  ["
                                  << cl.rule << "]\n";
                    for (const auto& v : verify_lines[i]) std::cout << "  " << v << "\n";
                }
            }
            return engine::exit_code(results);
        }

        if (*verify_cmd) {
            dsl::Document doc;
            std::vector<engine::QueryResult> results;
            int early = run_engine(verify_file, verify_strict, 12, doc, results);
            if (early >= 0) return early;
            auto inst = engine::parse_instantiation(verify_inst);
            bool any_fail = false;
            ordered_json arr = ordered_json::array();
            for (const auto& r : results)
                for (const auto& cl : r.claims) {
                    auto outcome = engine::verify_split(cl, doc.ctx, inst);
                    if (outcome == engine::VerifyOutcome::Fail) any_fail = true;
                    if (verify_json)
                        arr.push_back({{"kind", cl.kind},
                                       {"subject", cl.subject},
                                       {"range", cl.range},
                                       {"rule", cl.rule},
                                       {"outcome", engine::to_string(outcome)}});
                    else
                        std::cout << engine::to_string(outcome) << " " << cl.kind << " "
                                  << cl.subject
                                  << (cl.range.empty() ? "" : " for " + cl.range) << "\n";
                }
            if (verify_json)
                std::cout << envelope("verify",
                                      {{"file", verify_file}, {"inst", verify_inst}}, arr)
                                 .dump(2)
                          << "\n";
            return any_fail ? 1 : engine::exit_code(results);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
