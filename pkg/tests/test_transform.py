import pytest
from hypothesis import assume, given, strategies as st

from radokit import (
    EditSet,
    PreconditionError,
    WitnessExhausted,
    complement,
    edit,
    greedy_maximal_clique,
    make_bit,
    make_closure_chain,
    make_prime,
    make_seeded,
    pigeonhole_probe,
    switch,
    truncate,
    verify_extension,
)
from radokit.core import check_witness
from radokit.transform import PartOracle

BASES = [make_bit, make_prime, lambda: make_seeded(11), make_closure_chain]


# -- complement ----------------------------------------------------------------


@pytest.mark.parametrize("make", BASES)
def test_complement_is_an_involution(make):
    o = make()
    assert truncate(complement(complement(o)), 64) == truncate(o, 64)


def test_complement_bit_three():
    assert truncate(complement(make_bit()), 3).edges() == [(0, 2)]


@given(st.sets(st.integers(0, 30), max_size=3), st.sets(st.integers(0, 30), max_size=3))
def test_complement_witness_swaps_roles(U, V):
    assume(not U & V)
    o = make_bit()
    c = complement(o)
    assert c.witness(U, V) == o.witness(V, U)
    assert check_witness(c, U, V, c.witness(U, V)) == ""


# -- switching -----------------------------------------------------------------


def test_switch_empty_set_is_identity():
    o = make_bit()
    assert truncate(switch(o, []), 32) == truncate(o, 32)


@pytest.mark.parametrize("make", BASES)
def test_switch_is_an_involution(make):
    o = make()
    assert truncate(switch(switch(o, {0, 1, 2}), {0, 1, 2}), 64) == truncate(o, 64)


def test_switch_bit_zero():
    assert truncate(switch(make_bit(), {0}), 3).edges() == [(0, 2), (1, 2)]


@given(st.sets(st.integers(0, 15), max_size=5))
def test_switch_flips_exactly_the_cut(X):
    o = make_bit()
    s = switch(o, X)
    for u in range(16):
        for v in range(u + 1, 16):
            assert s.adjacent(u, v) == (o.adjacent(u, v) != ((u in X) != (v in X)))


def test_switching_neighbours_isolates_vertex():
    o = make_bit()
    X = {v for v in range(1, 64) if o.adjacent(0, v)}
    g = truncate(switch(o, X), 64)
    assert g.neighbours(0) == []


@given(st.sets(st.integers(0, 9), max_size=3), st.sets(st.integers(0, 9), max_size=2),
       st.sets(st.integers(0, 9), max_size=2))
def test_switch_witnesses_valid(X, U, V):
    assume(not U & V)
    s = switch(make_seeded(4), X)
    assert check_witness(s, U, V, s.witness(U, V, 10**6)) == ""


# -- edits --------------------------------------------------------------------


def test_edit_set_invariants():
    with pytest.raises(PreconditionError):
        EditSet(flipped=[(1, 1)])
    with pytest.raises(PreconditionError):
        EditSet(deleted=[2], flipped=[(2, 3)])
    assert EditSet(flipped=[(3, 2)]).flipped == frozenset({(2, 3)})


def test_delete_reindexes_by_rank():
    o = make_bit()
    d = edit(o, EditSet(deleted=[0]))
    for i in range(20):
        for j in range(20):
            assert d.adjacent(i, j) == o.adjacent(i + 1, j + 1)


def test_flip_changes_one_pair():
    o = make_bit()
    f = edit(o, EditSet(flipped=[(0, 1)]))
    a, b = truncate(o, 16), truncate(f, 16)
    assert not f.adjacent(0, 1)
    diff = [(u, v) for u in range(16) for v in range(u + 1, 16) if a.has_edge(u, v) != b.has_edge(u, v)]
    assert diff == [(0, 1)]


def test_delete_and_flip_pass_extension():
    o = edit(make_bit(), EditSet(deleted=[5], flipped=[(0, 1)]))
    assert verify_extension(o, range(10), 3).ok


@pytest.mark.parametrize("make", BASES)
def test_transformed_oracles_pass_extension(make):
    o = make()
    for t in (complement(o), switch(o, {1, 4}), edit(o, EditSet([0, 1], [(2, 3)], [4, 5]))):
        rep = verify_extension(t, range(10), 3, 10**6)
        assert rep.ok, rep.summary()


def test_edit_least_joined_sees_flipped_endpoints():
    o = make_bit()
    e = edit(o, EditSet(flipped=[(0, 2)]))
    # 2 is now adjacent to 0 and to 1, and it is the least such vertex
    assert e.least_joined([0, 1], [], [0, 1]) == 2


# -- pigeonhole ----------------------------------------------------------------


def test_pigeonhole_single_part():
    part, reports = pigeonhole_probe(make_bit(), lambda v: 0, 1)
    assert part == 0 and reports[0].ok


def test_pigeonhole_parity_on_bit():
    part, reports = pigeonhole_probe(make_bit(), lambda v: v % 2, 2)
    assert part in (0, 1) and reports[-1].ok


def test_pigeonhole_singleton_part_fails():
    part, reports = pigeonhole_probe(make_seeded(2), lambda v: 1 if v == 0 else 0, 2)
    assert part == 0
    bad = PartOracle(make_seeded(2), lambda v: 1 if v == 0 else 0, 1, scan_bound=1000)
    with pytest.raises(WitnessExhausted):
        bad.member(1)


def test_pigeonhole_reports_when_nothing_passes():
    with pytest.raises(WitnessExhausted):
        pigeonhole_probe(make_bit(), lambda v: 0 if v < 3 else 1, 2, bound=4)


def test_part_oracle_reindexes_in_order():
    p = PartOracle(make_bit(), lambda v: v % 3, 1)
    assert [p.member(i) for i in range(4)] == [1, 4, 7, 10]
    assert p.rank(7) == 2
    assert p.adjacent(0, 1) == make_bit().adjacent(1, 4)


# -- greedy clique --------------------------------------------------------------


def _simulate_bit_clique(steps):
    """Least integer with every bit of the current clique set, repeated."""
    S = []
    for _ in range(steps):
        m = 0
        while m in S or not all((m >> s) & 1 if s < m else (s >> m) & 1 for s in S):
            m += 1
        S.append(m)
        if m > 3000:
            break
    return S


def test_greedy_clique_bit():
    assert greedy_maximal_clique(make_bit(), 0) == []
    assert greedy_maximal_clique(make_bit(), 4) == [0, 1, 3, 11] == _simulate_bit_clique(4)
    assert greedy_maximal_clique(make_bit(), 5) == [0, 1, 3, 11, 2059] == _simulate_bit_clique(5)
    assert 2059 == 2**0 + 2**1 + 2**3 + 2**11


@pytest.mark.parametrize("make", [make_prime, lambda: make_seeded(6), make_closure_chain])
def test_greedy_clique_is_clique_and_greedy(make):
    o = make()
    S = greedy_maximal_clique(o, 5)
    for i, a in enumerate(S):
        for b in S[:i]:
            assert o.adjacent(a, b)
        # nothing smaller than a, unused, extends S[:i] (closure ids get huge)
        for w in range(min(a, 5000)):
            if w not in S[:i]:
                assert not all(o.adjacent(w, b) for b in S[:i])


def test_greedy_clique_precondition():
    with pytest.raises(PreconditionError):
        greedy_maximal_clique(make_bit(), -1)
