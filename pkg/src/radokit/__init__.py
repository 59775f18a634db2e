"""radokit: lazy oracles for the countable random graph and its relatives.

Graphs on the natural numbers are :class:`GraphOracle` objects that answer
adjacency on demand and produce witnesses for the extension property.  The
subpackages build explicit models, transform them, run back-and-forth
constructions, evaluate first-order sentences, build Fraisse limits and
study Cayley graphs and sum-free sets.
"""
from .kernels import BACKEND
from .core import (
    DEFAULT_SEARCH_BOUND,
    FiniteGraph,
    GraphOracle,
    PreconditionError,
    RadoError,
    Report,
    Unrepresentable,
    UnsatisfiableQuery,
    WitnessExhausted,
    WitnessQuery,
    int_bijection,
    int_bijection_inverse,
    truncate,
    verify_extension,
)
from .constructions import (
    UniversalSequence,
    make_bit,
    make_closure_chain,
    make_prime,
    make_seeded,
    make_shift,
    parse_selector,
)
from .transform import (
    EditSet,
    complement,
    edit,
    greedy_maximal_clique,
    pigeonhole_probe,
    switch,
)
from .isoengine import (
    CycleClosureFailure,
    PartialMap,
    back_and_forth,
    extend_one_point,
    forth_embed,
    generic_automorphism,
    spanning_embed,
    verify_map,
)
from .fraisse import ClassSpec, check_amalgamation, henson_witness, is_member, limit_oracle
from .groups import (
    GroupSpec,
    SumFreeSet,
    cayley_oracle,
    cyclic_conjugacy,
    cyclic_graph,
    sqrt_set,
    sum_free,
    triangle_report,
)
from . import logic

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ClassSpec",
    "CycleClosureFailure",
    "DEFAULT_SEARCH_BOUND",
    "EditSet",
    "FiniteGraph",
    "GraphOracle",
    "GroupSpec",
    "PartialMap",
    "PreconditionError",
    "RadoError",
    "Report",
    "SumFreeSet",
    "UniversalSequence",
    "Unrepresentable",
    "UnsatisfiableQuery",
    "WitnessExhausted",
    "WitnessQuery",
    "back_and_forth",
    "cayley_oracle",
    "check_amalgamation",
    "complement",
    "cyclic_conjugacy",
    "cyclic_graph",
    "edit",
    "extend_one_point",
    "forth_embed",
    "generic_automorphism",
    "greedy_maximal_clique",
    "henson_witness",
    "int_bijection",
    "int_bijection_inverse",
    "is_member",
    "limit_oracle",
    "logic",
    "make_bit",
    "make_closure_chain",
    "make_prime",
    "make_seeded",
    "make_shift",
    "parse_selector",
    "pigeonhole_probe",
    "spanning_embed",
    "sqrt_set",
    "sum_free",
    "switch",
    "triangle_report",
    "truncate",
    "verify_extension",
    "verify_map",
]
