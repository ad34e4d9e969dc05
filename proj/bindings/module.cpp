#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gad/bwb.hpp"
#include "gad/dsl/parse.hpp"
#include "gad/engine/engine.hpp"
#include "gad/partition.hpp"
#include "gad/schur.hpp"

namespace py = pybind11;
using namespace gad;

namespace {

Partition to_partition(const std::vector<unsigned long>& parts) {
    return Partition(parts);
}

py::dict table_to_dict(const CohomologyTable& t) {
    py::dict out;
    for (const auto& [q, d] : t.dims) out[py::int_(q)] = py::int_(d);
    return out;
}

py::dict multiset_to_dict(const DecompositionMultiset& m) {
    py::dict out;
    for (const auto& [p, c] : m) out[py::tuple(py::cast(p.parts()))] = py::int_(c);
    return out;
}

}  // namespace

PYBIND11_MODULE(_gad, m) {
    m.doc() = "Schur functor calculus, flag-variety cohomology, and the "
              "positivity derivation engine";

    // --- partitions and positivity shapes --------------------------------
    m.def("schur_dim",
          [](const std::vector<unsigned long>& lam, std::size_t e) {
              return schur_dim(to_partition(lam), e);
          },
          py::arg("shape"), py::arg("rank"),
          "Hook-content dimension of the Schur functor on a rank-`rank` space.");
    m.def("weyl_dim", &weyl_dim, py::arg("weight"),
          "Dimension of the irreducible with the given dominant integer weight.");
    m.def("schur_apply_dim",
          [](const std::vector<unsigned long>& lam, std::size_t e) {
              return schur_apply(to_partition(lam), e).dim;
          },
          py::arg("shape"), py::arg("rank"),
          "Rank of the Young idempotent acting on the tensor power.");
    m.def("schur_quotient",
          [](const std::vector<unsigned long>& lam, std::size_t e) {
              return schur_quotient(to_partition(lam), e);
          },
          py::arg("shape"), py::arg("rank"));
    m.def("num_standard_tableaux",
          [](const std::vector<unsigned long>& lam) {
              return to_partition(lam).num_standard_tableaux();
          },
          py::arg("shape"));
    m.def("littlewood_richardson",
          [](const std::vector<unsigned long>& lam, const std::vector<unsigned long>& mu) {
              return multiset_to_dict(
                  littlewood_richardson(to_partition(lam), to_partition(mu)));
          },
          py::arg("lam"), py::arg("mu"),
          "Map from shapes to Littlewood-Richardson coefficients.");
    m.def("pieri",
          [](const std::vector<unsigned long>& lam, unsigned long k) {
              return multiset_to_dict(pieri(to_partition(lam), k));
          },
          py::arg("lam"), py::arg("k"));
    m.def("in_pos",
          [](const std::vector<unsigned long>& lam, std::size_t e) {
              return in_pos(to_partition(lam), e);
          },
          py::arg("shape"), py::arg("rank"),
          "Membership of the shape in the rank-`rank` positivity cone.");
    m.def("plus_shift",
          [](const std::vector<unsigned long>& lam, std::size_t e) {
              return plus_shift(to_partition(lam), e).parts();
          },
          py::arg("shape"), py::arg("rank"),
          "Index shape of the det-shifted Schur power.");
    m.def("qlambda_condition",
          [](const std::vector<unsigned long>& lam, std::size_t d, unsigned slack) {
              return qlambda_condition(to_partition(lam), d, slack);
          },
          py::arg("shape"), py::arg("dim"), py::arg("slack"));

    // --- flag-variety and projective-space cohomology --------------------
    m.def("bwb_cohomology",
          [](const WeightVector& w) { return table_to_dict(bwb_cohomology(w)); },
          py::arg("weight"),
          "Degree -> dimension for the line bundle of the given weight on the "
          "full flag variety; empty dict for singular weights.");
    m.def("bott_formula",
          [](unsigned n, unsigned p, long k) {
              return table_to_dict(bott_formula(n, p, k));
          },
          py::arg("n"), py::arg("p"), py::arg("k"),
          "Cohomology of twisted differential forms on projective n-space.");
    m.def("verify_tangent_counterexample", &verify_tangent_counterexample,
          py::arg("n"), py::arg("i"));
    m.def("line_bundle_cohomology",
          [](unsigned n, long d) {
              return table_to_dict(line_bundle_cohomology_pn(n, d));
          },
          py::arg("n"), py::arg("degree"));
    m.def("split_bundle_cohomology",
          [](unsigned n, const std::vector<long>& degrees,
             const std::vector<unsigned long>& lam, long twist, bool with_canonical) {
              return table_to_dict(split_bundle_cohomology(
                  n, degrees, to_partition(lam), twist, with_canonical));
          },
          py::arg("n"), py::arg("degrees"), py::arg("shape"), py::arg("twist") = 0,
          py::arg("with_canonical") = true);

    // --- declarative language and derivation engine ----------------------
    m.def("parse_pretty",
          [](const std::string& text) { return dsl::pretty_print(dsl::parse(text)); },
          py::arg("text"), "Parse and pretty-print a document (round-trip form).");
    m.def("parse_json",
          [](const std::string& text) { return dsl::ast_to_json(dsl::parse(text)); },
          py::arg("text"), "Parse a document and export the AST as JSON text.");
    m.def("derive",
          [](const std::string& text, bool pos_strict, int max_depth) {
              dsl::Document doc = dsl::parse(text);
              auto res = dsl::validate(doc);
              if (!res.ok()) throw std::invalid_argument(res.errors.front());
              engine::Session s(doc, engine::Options{pos_strict, max_depth});
              std::vector<std::string> out;
              for (const auto& r : s.run_all())
                  out.push_back(engine::query_result_to_json(r));
              return out;
          },
          py::arg("text"), py::arg("pos_strict") = false, py::arg("max_depth") = 12,
          "Run every query in the document; one JSON result string per query.");
    m.def("rule_catalog_hash", &engine::rule_catalog_hash);

    py::register_exception<dsl::ParseError>(m, "ParseError");
}
