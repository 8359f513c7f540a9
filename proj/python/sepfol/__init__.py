"""Python access to the separated-fragment toolkit."""

import json

from ._core import (
    BudgetExceeded,
    Formula,
    NotSF,
    ParseError,
    SeparationError,
    SepfolError,
    bounds_json,
    classify,
    decide_json,
    eliminate_equality_bounded,
    eliminate_equality_monadic,
    eliminate_unary_functions,
    eval,
    gen_blowup,
    inner_skolemize,
    miniscope,
    oracle_equivalent,
    oracle_json,
    parse,
    parse_problem,
    range_restrict,
    skolemize_range_restricted,
    to_bsr_clauses,
    to_nnf,
    to_prenex,
    transpose_all,
    transpose_block,
)


def bounds(phi):
    """Small-model bound report as a dict."""
    return json.loads(bounds_json(phi))


def decide(phi, size_cap=10, structure_cap=10_000_000):
    """Verdict dict with a "verdict" key of Sat, Unsat or Unknown."""
    return json.loads(decide_json(phi, size_cap, structure_cap))


def oracle(phi, max_size):
    """Brute-force verdict over universes up to max_size."""
    return json.loads(oracle_json(phi, max_size))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
