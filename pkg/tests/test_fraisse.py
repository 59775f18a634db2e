import itertools
import json

import pytest

from radokit import (
    FiniteGraph,
    PreconditionError,
    back_and_forth,
    make_closure_chain,
    truncate,
    verify_extension,
)
from radokit.core import UnsatisfiableQuery, WitnessQuery, check_witness, extension_queries
from radokit.fraisse import ClassSpec, check_amalgamation, henson_witness, is_member, limit_oracle
from radokit.logic.evaluate import all_graphs

K3_FREE = ClassSpec.complete(3)


def _has_triangle(g):
    return any(g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
               for a, b, c in itertools.combinations(range(g.n), 3))


def _independent(o, U):
    return not any(o.adjacent(a, b) for a, b in itertools.combinations(U, 2))


# -- class specs ------------------------------------------------------------------


def test_membership_examples():
    assert not is_member(K3_FREE, FiniteGraph.complete(3))
    assert is_member(K3_FREE, FiniteGraph.cycle(5))
    assert is_member(ClassSpec(), FiniteGraph.complete(6))


def test_membership_matches_brute_force():
    p3 = ClassSpec((FiniteGraph.path(3),))
    for g in all_graphs(5):
        induced_p3 = any(len(g.induced(list(S)).edges()) == 2
                         for S in itertools.combinations(range(5), 3))
        assert is_member(p3, g) == (not induced_p3)
        assert is_member(K3_FREE, g) == (not _has_triangle(g))


def test_forbidden_graphs_need_two_vertices():
    with pytest.raises(PreconditionError):
        ClassSpec((FiniteGraph(1),))
    with pytest.raises(PreconditionError):
        ClassSpec.complete(1)


def test_spec_parsing():
    assert ClassSpec.parse("Kn:4").clique_size == 4
    assert ClassSpec.parse("all").forbidden == ()
    doc = json.dumps({"forbidden": [{"n": 3, "edges": [[0, 1], [1, 2]]}]})
    spec = ClassSpec.parse(doc)
    assert spec.forbidden[0] == FiniteGraph.path(3) and spec.clique_size is None
    assert ClassSpec.parse(json.dumps(spec.to_dict())).key() == spec.key()
    for bad in ("Kn:x", "{not json", '{"forbidden": 3}'):
        with pytest.raises(PreconditionError):
            ClassSpec.parse(bad)


# -- amalgamation -----------------------------------------------------------------


@pytest.mark.parametrize("spec", [ClassSpec(), K3_FREE, ClassSpec.complete(2)])
def test_fraisse_classes_amalgamate(spec):
    rep = check_amalgamation(spec, 4)
    assert rep.checked > 0 and rep.ok and rep.strong_ok


def test_p4_free_graphs_fail_amalgamation():
    # two cones over an independent triple force an induced P4 whichever way they meet
    rep = check_amalgamation(ClassSpec((FiniteGraph.path(4),)), 4)
    assert not rep.ok
    case = rep.failures[0]
    assert case["A"]["n"] >= 1
    json.dumps(rep.to_dict())


def test_amalgamation_precondition():
    with pytest.raises(PreconditionError):
        check_amalgamation(ClassSpec(), 1)


# -- limits -----------------------------------------------------------------------


def test_free_limit_passes_extension():
    rep = verify_extension(limit_oracle(ClassSpec()), range(10), 4)
    assert rep.ok and rep.passed == 4521


def test_free_limit_is_the_closure_chain():
    f = back_and_forth(limit_oracle(ClassSpec()), make_closure_chain(), 30)
    assert f.covers_prefix(15)
    assert truncate(limit_oracle(ClassSpec()), 64) == truncate(make_closure_chain(), 64)


def test_triangle_free_limit_truncation():
    g = truncate(limit_oracle(K3_FREE), 64)
    assert not _has_triangle(g)
    assert is_member(K3_FREE, g) and g.edges()


def test_edgeless_limit():
    assert truncate(limit_oracle(ClassSpec.complete(2)), 40).edges() == []


@pytest.mark.parametrize("n", [3, 4])
def test_limit_truncations_stay_in_class(n):
    spec = ClassSpec.complete(n)
    assert is_member(spec, truncate(limit_oracle(spec), 64))


def test_limit_stage_adjacency_is_deterministic():
    assert truncate(limit_oracle(K3_FREE), 48) == truncate(limit_oracle(K3_FREE), 48)


def test_unsatisfiable_witness():
    o = limit_oracle(K3_FREE)
    a, b = next((a, b) for a, b in itertools.combinations(range(20), 2) if o.adjacent(a, b))
    with pytest.raises(UnsatisfiableQuery):
        o.witness([a, b], [])


# -- Henson graphs ------------------------------------------------------------------


def test_henson_witness_example():
    o = limit_oracle(K3_FREE)
    assert not o.adjacent(0, 1) and o.adjacent(0, 2)
    z = henson_witness(o, WitnessQuery([0, 1], [2]))
    assert check_witness(o, [0, 1], [2], z) == ""
    assert not _has_triangle(truncate(o, z + 1).induced([0, 1, 2, z]))
    assert is_member(K3_FREE, truncate(o, z + 1))


def test_henson_rejects_an_edge():
    o = limit_oracle(K3_FREE)
    with pytest.raises(PreconditionError):
        henson_witness(o, ([0, 2], []))


def test_henson_rejects_a_triangle_for_k4():
    o = limit_oracle(ClassSpec.complete(4))
    tri = next(t for t in itertools.combinations(range(64), 3)
               if all(o.adjacent(a, b) for a, b in itertools.combinations(t, 2)))
    with pytest.raises(PreconditionError):
        henson_witness(o, (list(tri), []))


def test_henson_needs_a_clique_free_limit():
    with pytest.raises(PreconditionError):
        henson_witness(limit_oracle(ClassSpec()), ([0], [1]))


def test_henson_every_independent_query():
    o = limit_oracle(K3_FREE)
    passed = rejected = 0
    for U, V in extension_queries(range(10), 4):
        q = WitnessQuery(U, V)
        if _independent(o, U):
            z = henson_witness(o, q)
            assert check_witness(o, U, V, z) == ""
            passed += 1
        else:
            with pytest.raises(PreconditionError):
                henson_witness(o, q)
            rejected += 1
    assert passed + rejected == 4521 and passed > 0 and rejected > 0
