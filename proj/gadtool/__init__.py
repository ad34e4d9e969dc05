"""Schur functor calculus, flag-variety cohomology, and the positivity
derivation engine, backed by the C++ core."""

from ._gad import (  # noqa: F401
    ParseError,
    bott_formula,
    bwb_cohomology,
    derive,
    in_pos,
    line_bundle_cohomology,
    littlewood_richardson,
    num_standard_tableaux,
    parse_json,
    parse_pretty,
    pieri,
    plus_shift,
    qlambda_condition,
    rule_catalog_hash,
    schur_apply_dim,
    schur_dim,
    schur_quotient,
    split_bundle_cohomology,
    verify_tangent_counterexample,
    weyl_dim,
)

__all__ = [
    "ParseError",
    "bott_formula",
    "bwb_cohomology",
    "derive",
    "in_pos",
    "line_bundle_cohomology",
    "littlewood_richardson",
    "num_standard_tableaux",
    "parse_json",
    "parse_pretty",
    "pieri",
    "plus_shift",
    "qlambda_condition",
    "rule_catalog_hash",
    "schur_apply_dim",
    "schur_dim",
    "schur_quotient",
    "split_bundle_cohomology",
    "verify_tangent_counterexample",
    "weyl_dim",
]

__version__ = "0.1.0"
