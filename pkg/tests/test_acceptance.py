"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (also collected in the
terminal summary) and then asserts.  Criteria that cannot be met with integer
vertex ids are marked ``xfail(strict=True)``: they run in full, print FAIL, and
would turn the suite red if they ever started passing unnoticed.
"""
import functools
import itertools
import math

import pytest

from radokit import (
    EditSet,
    PreconditionError,
    Unrepresentable,
    back_and_forth,
    complement,
    edit,
    generic_automorphism,
    greedy_maximal_clique,
    make_bit,
    make_closure_chain,
    make_prime,
    make_seeded,
    make_shift,
    switch,
    truncate,
    verify_extension,
)
from radokit.core import check_witness, extension_queries
from radokit.fraisse import ClassSpec, henson_witness, is_member, limit_oracle
from radokit.groups import (
    all_odd_frequency,
    cayley_oracle,
    random_set,
    sqrt_set,
    sum_free,
    triangle_report,
)
from radokit.logic import Not, corpus, decide_R, failure_bound, mc_zero_one, quantifier_depth, sigma

WIDE = 10**6
OUTGROWS = ("bit-graph witnesses for backward steps need billions of bits; "
            "see the decisions log")

ORACLES = {
    "bit": make_bit,
    "prime": make_prime,
    "shift:concat": make_shift,
    "seeded:1": lambda: make_seeded(1),
}


def induced_ok(f, src, tgt):
    """Brute force over all pairs of pairs."""
    return all(src.adjacent(x, x2) == tgt.adjacent(y, y2)
               for (x, y), (x2, y2) in itertools.combinations(f.pairs, 2))


def iso_checks(f, src, tgt, rounds=30, cover=15):
    return (len(f) == rounds and induced_ok(f, src, tgt)
            and set(range(cover)) <= f.domain and set(range(cover)) <= f.range)


@functools.lru_cache(maxsize=None)
def iso_pair(a, b):
    """(ok, note) for a 30-round back-and-forth between two named oracles."""
    src, tgt = ORACLES[a](), ORACLES[b]()
    try:
        f = back_and_forth(src, tgt, 30)
    except Unrepresentable as exc:
        return False, f"unrepresentable ({exc})"
    return iso_checks(f, src, tgt), "ok"


def simulate_bit_clique(steps):
    S = []
    for _ in range(steps):
        m = 0
        while m in S or not all((m >> s) & 1 if s < m else (s >> m) & 1 for s in S):
            m += 1
        S.append(m)
    return S


# -- 1 -----------------------------------------------------------------------------


def test_criterion_1_extension_property(record):
    cases = [("bit", make_bit(), None), ("closure", make_closure_chain(), None),
             ("prime", make_prime(), WIDE), ("shift:concat", make_shift(), WIDE),
             ("seeded:1", make_seeded(1), WIDE)]
    parts, ok = [], True
    for name, o, bound in cases:
        rep = verify_extension(o, range(10), 4, bound)
        ok &= rep.ok
        parts.append(f"{name} {rep.passed}/{len(rep.outcomes)}")
    assert record(1, ok, "; ".join(parts))


# -- 2 and 3 ------------------------------------------------------------------------


NON_BIT = [(a, b) for a, b in itertools.permutations(ORACLES, 2) if "bit" not in (a, b)]


def test_criterion_2_pairs_without_bit():
    for a, b in NON_BIT:
        ok, note = iso_pair(a, b)
        assert ok, (a, b, note)


@pytest.mark.xfail(strict=True, raises=AssertionError, reason=OUTGROWS)
def test_criterion_2_back_and_forth(record):
    results = {(a, b): iso_pair(a, b) for a, b in itertools.permutations(ORACLES, 2)}
    good = sum(ok for ok, _ in results.values())
    bad = [f"{a}->{b}" for (a, b), (ok, _) in results.items() if not ok]
    detail = f"{good}/{len(results)} ordered pairs"
    if bad:
        detail += "; unrepresentable: " + ", ".join(bad)
    assert record(2, not bad, detail)


@pytest.mark.xfail(strict=True, raises=AssertionError, reason=OUTGROWS)
def test_criterion_3_self_complementary(record):
    o = make_bit()
    try:
        f = back_and_forth(o, complement(o), 30)
        ok, detail = iso_checks(f, o, complement(o)), "30 rounds"
    except Unrepresentable as exc:
        ok, detail = False, f"unrepresentable ({exc})"
    assert record(3, ok, detail)


# -- 4 ------------------------------------------------------------------------------


def test_criterion_4_indestructibility(record):
    o = edit(make_bit(), EditSet(deleted=[0, 1], flipped=[(2, 3)], switched=[4, 5]))
    rep = verify_extension(o, range(10), 3)
    assert record(4, rep.ok, f"{rep.passed}/{len(rep.outcomes)} queries")


# -- 5 ------------------------------------------------------------------------------


def test_criterion_5_zero_one_law(record):
    sentences = corpus()
    names = {name for name, _ in sentences}
    assert {"sigma11", "sigma21", "sigma12", "dominating"} <= names
    assert all("not_" + n in names for n in ("sigma11", "sigma21", "sigma12", "dominating"))

    complete = all(decide_R(Not(f)) == (not decide_R(f)) for _, f in sentences)
    worst, worst_name = 0.0, ""
    for name, f in sentences:
        gap = abs(mc_zero_one(f, 300, 400, seed=7) - float(decide_R(f)))
        if gap >= worst:
            worst, worst_name = gap, name

    samples = 400
    bound = failure_bound(1, 1, 100)
    slack = 3 * math.sqrt(bound * (1 - bound) / samples)
    fail_rate = 1.0 - mc_zero_one(sigma(1, 1), 100, samples, seed=7)
    deep = sorted(n for n, f in sentences if quantifier_depth(f) > 3)

    ok = complete and worst <= 0.05 and fail_rate <= bound + slack
    detail = (f"{len(sentences)} sentences, negation-complete={complete}, "
              f"max |freq - truth| = {worst:.4f} ({worst_name}); "
              f"sigma11 N=100 failure rate {fail_rate:.4f} <= {bound + slack:.2e}; "
              f"depth 4: {', '.join(deep)}")
    assert record(5, ok, detail)


# -- 6 ------------------------------------------------------------------------------


def test_criterion_6_henson(record):
    spec = ClassSpec.complete(3)
    o = limit_oracle(spec)
    g = truncate(o, 64)
    triangles = sum(g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
                    for a, b, c in itertools.combinations(range(64), 3))
    passed = rejected = wrong = 0
    for U, V in extension_queries(range(10), 4):
        has_edge = any(o.adjacent(a, b) for a, b in itertools.combinations(U, 2))
        try:
            z = henson_witness(o, (U, V))
        except PreconditionError:
            rejected += 1
            wrong += not has_edge
            continue
        if has_edge or check_witness(o, U, V, z):
            wrong += 1
        else:
            passed += 1
    ok = triangles == 0 and is_member(spec, g) and wrong == 0
    assert record(6, ok, f"{triangles} triangles in 64 vertices; {passed} witnesses, "
                         f"{rejected} rejected, {wrong} wrong")


# -- 7 ------------------------------------------------------------------------------


def test_criterion_7_greedy_clique(record):
    S = greedy_maximal_clique(make_bit(), 5)
    ok = S == [0, 1, 3, 11, 2059] == simulate_bit_clique(5)
    assert record(7, ok, f"{S}")


# -- 8 ------------------------------------------------------------------------------


def test_criterion_8_cayley(record):
    passing = [seed for seed in range(5)
               if verify_extension(cayley_oracle("z", seed), range(10), 3, WIDE).ok]
    roots = max(len(sqrt_set("z", a)) for a in range(-10, 11))
    ok = len(passing) >= 4 and roots <= 1
    assert record(8, ok, f"seeds passing {passing}; max |sqrt| = {roots}")


# -- 9 ------------------------------------------------------------------------------


def test_criterion_9_sum_free_equivalence(record):
    agree = sum(triangle_report(random_set(seed, 200, density=0.02), 200).equivalent
                for seed in range(100))
    free = sum(triangle_report(sum_free(seed), 200).triangle_free for seed in range(100))
    assert record(9, agree == 100 and free == 100,
                  f"equivalence {agree}/100; generated sets triangle-free {free}/100")


# -- 10 -----------------------------------------------------------------------------


def test_criterion_10_all_odd(record):
    f = all_odd_frequency(range(2000), 500)
    assert record(10, 0.20 <= f <= 0.30, f"all-odd frequency {f:.4f} over 2000 sets at prefix 500")


# -- 11 -----------------------------------------------------------------------------


def test_criterion_11_generic_automorphisms(record):
    good, supports = 0, []
    for i in range(20):
        o = make_seeded(i)
        f = generic_automorphism(o, 30, seed=i)
        cycles = f.cycles()  # raises unless every cycle closes
        ok = f.domain == f.range and all(len(c) >= 1 for c in cycles) and induced_ok(f, o, o)
        good += ok
        supports.append(len(f))
    assert record(11, good == 20, f"{good}/20 runs; support sizes {min(supports)}..{max(supports)}")
