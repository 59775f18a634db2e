"""First-order sentences about graphs: syntax, finite evaluation, truth in the
random graph, zero-one experiments and hypergraph translation."""
from .corpus import corpus
from .decide import decide_R, failure_bound, mc_zero_one, random_graph, sample_graph, sigma
from .evaluate import Program, compile_sentence, eval_finite, eval_naive, pack_rows
from .hyper import (
    Hypergraph, canonical_form, derived_hypergraph, edge_formula, eval_hyper, translate,
)
from .syntax import (
    Adj, And, ArityError, Edge, Eq, Exists, Forall, Formula, Implies, Not, Or, ParseError,
    UnboundVariableError, conj, disj, free_vars, is_sentence, parse, parse_sentence,
    quantifier_depth, to_text,
)

__all__ = [
    "Adj", "And", "ArityError", "Edge", "Eq", "Exists", "Forall", "Formula", "Hypergraph",
    "Implies", "Not", "Or", "ParseError", "Program", "UnboundVariableError",
    "canonical_form", "compile_sentence", "conj", "corpus", "decide_R", "derived_hypergraph",
    "disj", "edge_formula", "eval_finite", "eval_hyper", "eval_naive", "failure_bound",
    "free_vars", "is_sentence", "mc_zero_one", "pack_rows", "parse", "parse_sentence",
    "quantifier_depth", "random_graph", "sample_graph", "sigma", "to_text", "translate",
]
