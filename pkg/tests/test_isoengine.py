import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from radokit import (
    PartialMap,
    PreconditionError,
    Unrepresentable,
    back_and_forth,
    complement,
    extend_one_point,
    forth_embed,
    generic_automorphism,
    make_bit,
    make_closure_chain,
    make_prime,
    make_seeded,
    make_shift,
    spanning_embed,
    verify_map,
)
from radokit.core import complete_oracle, empty_oracle, path_oracle
from radokit.isoengine import cycle_histogram, map_to_json, violations


def brute_induced(f, src, tgt):
    """Independent check: every pair of pairs agrees on adjacency."""
    return all(
        src.adjacent(x, x2) == tgt.adjacent(y, y2)
        for (x, y), (x2, y2) in itertools.combinations(f.pairs, 2)
    )


# -- partial maps --------------------------------------------------------------


def test_partial_map_rejects_non_injective():
    f = PartialMap([(0, 1)])
    with pytest.raises(ValueError):
        f.add(0, 2)
    with pytest.raises(ValueError):
        f.add(3, 1)


def test_partial_map_json_round_trip():
    f = PartialMap([(0, 3), (2, 1)])
    data = json.loads(map_to_json(f, {"ok": True}))
    assert data["pairs"] == [[0, 3], [2, 1]] and data["verification"]["ok"]
    assert PartialMap.from_dict(data).pairs == f.pairs


def test_cycles_of_permutation():
    f = PartialMap([(0, 1), (1, 0), (2, 2), (3, 4), (4, 5), (5, 3)])
    assert f.cycles() == [[0, 1], [2], [3, 4, 5]]
    assert cycle_histogram(f) == {1: 1, 2: 1, 3: 1}
    with pytest.raises(ValueError):
        PartialMap([(0, 1)]).cycles()


# -- one-point extension ---------------------------------------------------------


def test_extend_from_empty_takes_least_vertex():
    f = extend_one_point(make_seeded(3), make_prime(), PartialMap(), 7)
    assert f.pairs == [(7, 0)]


def test_extend_bit_example():
    f = extend_one_point(make_bit(), make_bit(), PartialMap([(0, 0)]), 1)
    assert f.pairs == [(0, 0), (1, 1)]


def test_extend_rejects_mapped_vertex():
    with pytest.raises(PreconditionError):
        extend_one_point(make_bit(), make_bit(), PartialMap([(0, 0)]), 0)


@given(st.lists(st.integers(0, 40), min_size=1, max_size=8, unique=True))
def test_extension_keeps_induced_invariant(xs):
    src, tgt = make_seeded(1), make_shift()
    f = PartialMap()
    for x in xs:
        extend_one_point(src, tgt, f, x)
    assert brute_induced(f, src, tgt)
    # each image is the least fresh correctly joined vertex
    x, z = f.pairs[-1]
    prev = f.pairs[:-1]
    U = [y for d, y in prev if src.adjacent(x, d)]
    V = [y for d, y in prev if not src.adjacent(x, d)]
    used = {y for _, y in prev}
    assert all(not tgt.correctly_joined(w, U, V) for w in range(z) if w not in used)


# -- back and forth ----------------------------------------------------------------


def test_back_and_forth_zero_rounds():
    assert back_and_forth(make_bit(), make_prime(), 0).pairs == []


@pytest.mark.parametrize("a,b,rounds", [
    (make_prime, lambda: make_seeded(1), 30),
    (make_shift, make_prime, 20),
    (lambda: make_seeded(1), make_shift, 20),
    (lambda: complement(make_seeded(3)), lambda: make_seeded(2), 30),
])
def test_back_and_forth_covers_prefixes(a, b, rounds):
    o1, o2 = a(), b()
    f = back_and_forth(o1, o2, rounds)
    assert len(f) == rounds
    assert f.covers_prefix(rounds // 2)
    assert brute_induced(f, o1, o2)
    assert verify_map(f, o1, o2, prefix=rounds // 2)["ok"]


def test_closure_chain_outgrows_integers():
    with pytest.raises(Unrepresentable):
        back_and_forth(make_closure_chain(), make_seeded(2), 30)


def test_back_and_forth_alternates():
    f = back_and_forth(make_prime(), make_seeded(1), 6)
    # forward steps place the least unmapped source vertex
    assert [x for x, _ in f.pairs[0::2]] == sorted(x for x, _ in f.pairs[0::2])
    assert f.pairs[0][0] == 0 and f.pairs[1][1] == min(set(range(6)) - {f.pairs[0][1]})


def test_back_and_forth_small_bit_prefix():
    f = back_and_forth(make_bit(), make_seeded(1), 10)
    assert brute_induced(f, make_bit(), make_seeded(1))


def test_bit_back_and_forth_outgrows_integers():
    # backward steps into the bit graph need witnesses with billions of bits
    with pytest.raises(Unrepresentable):
        back_and_forth(make_bit(), make_seeded(1), 30)


def test_anti_automorphism_prefix():
    o = make_seeded(4)
    f = back_and_forth(o, complement(o), 20)
    assert all(o.adjacent(x, x2) != o.adjacent(y, y2)
               for (x, y), (x2, y2) in itertools.combinations(f.pairs, 2))


def test_violations_reports_bad_pairs():
    f = PartialMap([(0, 0), (1, 2)])  # bit: 0~1 but 0 !~ 2
    assert violations(f, make_bit(), make_bit())
    assert not verify_map(f, make_bit(), make_bit())["ok"]


# -- embeddings ---------------------------------------------------------------------


def test_forth_embed_path():
    f = forth_embed(path_oracle(), make_bit(), 5)
    assert f.pairs == [(0, 0), (1, 1), (2, 2), (3, 4), (4, 16)]
    ys = [y for _, y in f.pairs]
    for i in range(5):
        for j in range(i + 1, 5):
            assert make_bit().adjacent(ys[i], ys[j]) == (j == i + 1)


def test_forth_embed_clique():
    f = forth_embed(complete_oracle(), make_bit(), 4)
    ys = [y for _, y in f.pairs]
    assert ys == [0, 1, 3, 11]
    assert all(make_bit().adjacent(a, b) for a, b in itertools.combinations(ys, 2))


def test_forth_embed_empty():
    assert forth_embed(path_oracle(), make_prime(), 0).pairs == []


def test_spanning_embed_path():
    src, tgt = path_oracle(), make_bit()
    f = spanning_embed(src, tgt, 20)
    assert len(f) == 20
    assert verify_map(f, src, tgt, mode="spanning")["ok"]
    for (x, y), (x2, y2) in itertools.combinations(f.pairs, 2):
        if src.adjacent(x, x2):
            assert tgt.adjacent(y, y2)


def test_spanning_embed_edgeless_source():
    f = spanning_embed(empty_oracle(), empty_oracle(), 12)
    assert sorted(f.pairs) == [(i, i) for i in range(12)]
    g = spanning_embed(empty_oracle(), make_bit(), 12)
    assert verify_map(g, empty_oracle(), make_bit(), mode="spanning")["ok"]


def test_spanning_embed_complete_source_fails():
    with pytest.raises(PreconditionError):
        spanning_embed(complete_oracle(), make_bit(), 4, bound=1000)


# -- generic automorphisms -----------------------------------------------------------


def test_generic_zero_rounds():
    assert generic_automorphism(make_seeded(1), 0).pairs == []


def _check_automorphism(f, o, max_cycle):
    assert f.domain == f.range
    for c in f.cycles():
        assert 1 <= len(c) <= max_cycle
    assert brute_induced(f, o, o)


def test_generic_bit_small_support():
    o = make_bit()
    f = generic_automorphism(o, 6)
    _check_automorphism(f, o, 12)


@settings(max_examples=15)
@given(st.integers(0, 2**32), st.sampled_from(["seeded", "prime", "shift"]))
def test_generic_automorphism_property(seed, kind):
    o = {"seeded": lambda: make_seeded(seed % 97), "prime": make_prime, "shift": make_shift}[kind]()
    f = generic_automorphism(o, 20, seed=seed)
    assert 0 < len(f) <= 20
    _check_automorphism(f, o, 12)


def test_generic_respects_max_cycle():
    o = make_seeded(5)
    f = generic_automorphism(o, 24, max_cycle=4, seed=1)
    _check_automorphism(f, o, 4)


def test_generic_precondition():
    with pytest.raises(PreconditionError):
        generic_automorphism(make_bit(), -1)
