import itertools

import pytest
from hypothesis import given, strategies as st

from radokit import PreconditionError, UniversalSequence, make_shift, truncate, verify_extension
from radokit.core import coin, int_bijection
from radokit.groups import (
    INTEGER_PAIRS,
    INTEGERS,
    all_odd_frequency,
    cantor_pair,
    cantor_unpair,
    cayley_oracle,
    cyclic_conjugacy,
    cyclic_graph,
    difference_graph_has_triangle,
    group,
    has_sum_triple,
    random_set,
    sqrt_set,
    sum_free,
    triangle_report,
)


def _sum_free_reference(seed, prefix):
    S = []
    for n in range(1, prefix + 1):
        if any(n - a in S for a in S):
            continue
        if coin(seed, n):
            S.append(n)
    return S


def _brute_triangle(S, prefix):
    S = set(S)
    return any(b - a in S and c - b in S and c - a in S
               for a, b, c in itertools.combinations(range(prefix + 1), 3))


# -- group specs ------------------------------------------------------------------


@pytest.mark.parametrize("g", [INTEGERS, INTEGER_PAIRS])
def test_enumeration_is_a_bijection(g):
    elems = [g.element(i) for i in range(2000)]
    assert len(set(elems)) == 2000
    assert all(g.index(x) == i for i, x in enumerate(elems))


@pytest.mark.parametrize("g", [INTEGERS, INTEGER_PAIRS])
def test_group_axioms_on_samples(g):
    xs = [g.element(i) for i in range(0, 300, 7)]
    for a, b, c in itertools.islice(itertools.product(xs, repeat=3), 2000):
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
        assert g.mul(a, g.identity) == a
        assert g.mul(a, g.inv(a)) == g.identity


def test_cantor_pairing_round_trip():
    for n in range(5000):
        assert cantor_pair(*cantor_unpair(n)) == n
    assert cantor_pair(0, 0) == 0 and cantor_pair(1, 0) < cantor_pair(1, 1)


def test_group_lookup():
    assert group("z") is INTEGERS and group("z2") is INTEGER_PAIRS
    with pytest.raises(PreconditionError):
        group("q")


# -- cyclic automorphisms ---------------------------------------------------------------


@pytest.mark.parametrize("seq", [UniversalSequence.concat(), UniversalSequence.random(4)])
def test_shift_is_an_automorphism(seq):
    c = cyclic_graph(seq)
    assert c.verify_shift(50)
    assert truncate(c.oracle, 40) == truncate(make_shift(seq), 40)
    assert c.shift(int_bijection(-3), 5) == int_bijection(2)


def test_recovered_set_is_the_generator():
    seq = UniversalSequence.concat()
    assert cyclic_graph(seq).recovered_set(500) == seq.members(500)


def test_cyclic_graph_passes_extension():
    rep = verify_extension(cyclic_graph(UniversalSequence.concat()).oracle, range(10), 3, 10**6)
    assert rep.ok


def test_conjugacy_examples():
    s = UniversalSequence.concat()
    assert cyclic_conjugacy(s, UniversalSequence.concat()).equal
    d = cyclic_conjugacy(s, UniversalSequence.random(7))
    assert not d.equal and d.index <= 64
    a, b = UniversalSequence.random(1), UniversalSequence.random(2)
    r = cyclic_conjugacy(a, b, 256)
    assert not r.equal
    assert a[r.index] != b[r.index]
    assert all(a[i] == b[i] for i in range(1, r.index))
    assert r.to_dict() == {"result": "differ", "index": r.index}


# -- Cayley graphs --------------------------------------------------------------------


@pytest.mark.parametrize("name", ["z", "z2"])
def test_cayley_symmetric_and_irreflexive(name):
    o = cayley_oracle(name, 5)
    for u in range(129):
        assert not o.adjacent(u, u)
        for v in range(u):
            assert o.adjacent(u, v) == o.adjacent(v, u)


@pytest.mark.parametrize("name", ["z", "z2"])
def test_cayley_connection_set_is_inverse_closed(name):
    o = cayley_oracle(name, 9)
    g = o.group
    for i in range(1, 500):
        a = g.element(i)
        assert o.in_S(a) == o.in_S(g.inv(a))
    assert not o.in_S(g.identity)


def test_cayley_adjacency_is_membership_of_the_quotient():
    o = cayley_oracle("z2", 2)
    g = INTEGER_PAIRS
    for u, v in itertools.product(range(40), repeat=2):
        if u != v:
            assert o.adjacent(u, v) == o.in_S(g.div(g.element(u), g.element(v)))


def test_integer_cayley_graph_is_a_shift_graph():
    for seed in range(5):
        o = cayley_oracle("z", seed)
        assert truncate(o, 64) == truncate(make_shift(UniversalSequence.random(seed)), 64)


@pytest.mark.parametrize("name,seed", [("z", 1), ("z2", 3)])
def test_cayley_passes_extension(name, seed):
    rep = verify_extension(cayley_oracle(name, seed), range(10), 3, 10**6)
    assert rep.ok, rep.summary()


# -- square roots --------------------------------------------------------------------


def test_sqrt_examples():
    assert sqrt_set("z", 4) == [2]
    assert sqrt_set("z", 3) == []
    assert sqrt_set("z2", (2, 2)) == [(1, 1)]
    assert sqrt_set("z2", (1, 2)) == []


def test_integer_square_roots_are_unique():
    for a in range(-10, 11):
        roots = sqrt_set(INTEGERS, a)
        assert len(roots) <= 1
        assert roots == ([a // 2] if a % 2 == 0 else [])


# -- sum-free sets -----------------------------------------------------------------------


def test_sum_free_small_examples():
    assert not has_sum_triple([1, 4], 10)
    assert has_sum_triple([1, 2], 10)
    assert difference_graph_has_triangle([1, 2], 2)
    assert not difference_graph_has_triangle([1, 4], 10)


@pytest.mark.parametrize("seed", [0, 1, 17, 2**63 + 5])
def test_generator_matches_reference(seed):
    assert sum_free(seed).members(400) == _sum_free_reference(seed, 400)


def test_generated_sets_are_sum_free():
    for seed in range(100):
        S = sum_free(seed)
        members = set(S.members(1000))
        assert not has_sum_triple(members, 1000)
        assert not any(a + b in members for a in members for b in members if a + b <= 1000)


def test_generated_sets_have_no_triangle():
    for seed in range(10):
        rep = triangle_report(sum_free(seed), 200)
        assert rep.triangle_free and rep.equivalent


def test_triangle_equivalence_on_arbitrary_sets():
    triangles = 0
    for seed in range(100):
        S = random_set(seed, 200, density=0.02)
        rep = triangle_report(S, 200)
        assert rep.equivalent
        triangles += rep.has_triangle
    assert 0 < triangles < 100


@given(st.sets(st.integers(1, 24), max_size=6))
def test_triangle_equivalence_brute_force(S):
    assert difference_graph_has_triangle(S, 24) == _brute_triangle(S, 24) == has_sum_triple(S, 24)


def test_triangle_report_fields():
    rep = triangle_report([1, 3, 5], 10)
    assert rep.all_odd and rep.triangle_free
    d = rep.to_dict()
    assert d["set_prefix"] == [1, 3, 5] and d["sum_free"]
    with pytest.raises(PreconditionError):
        triangle_report([1], 2)


def test_membership_and_cache_growth():
    S = sum_free(3)
    small = S.members(50)
    assert S.members(2000)[: len(small)] == small
    assert all(m in S for m in small)
    assert 0 not in S


def test_all_odd_frequency_is_moderate():
    # the all-odd event has a positive limiting probability; check it is neither rare nor typical
    f = all_odd_frequency(range(400), 200)
    assert 0.1 < f < 0.4
