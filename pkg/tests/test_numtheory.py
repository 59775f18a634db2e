import math

import numpy as np
from hypothesis import given, strategies as st

from radokit import kernels
from radokit.numtheory import (
    PRIMES,
    PrimeIndex,
    count_primes_1mod4,
    crt,
    is_prime,
    is_qr,
    least_nonresidue,
    legendre,
    primes_1mod4_upto,
    squares_mod,
)


def _sieve(n):
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = [False] * len(flags[p * p :: p])
    return [i for i, f in enumerate(flags) if f]


SMALL_PRIMES = _sieve(3000)


def test_is_prime_against_sieve():
    ps = set(SMALL_PRIMES)
    assert [n for n in range(3001) if is_prime(n)] == sorted(ps)


def test_is_prime_large_values():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))
    assert is_prime(2**89 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_legendre_against_enumeration():
    for p in SMALL_PRIMES[1:60]:
        sq = squares_mod(p)
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in sq else -1)
            assert is_qr(a, p) == (a in sq)
        assert legendre(0, p) == 0


def test_least_nonresidue():
    for p in SMALL_PRIMES[1:80]:
        b = least_nonresidue(p)
        sq = squares_mod(p)
        assert b not in sq and all(a in sq for a in range(1, b))


@given(st.lists(st.sampled_from(SMALL_PRIMES[:30]), min_size=1, max_size=5, unique=True), st.data())
def test_crt_solves_the_system(moduli, data):
    residues = [data.draw(st.integers(0, m - 1)) for m in moduli]
    x, M = crt(residues, moduli)
    assert M == math.prod(moduli) and 0 <= x < M
    assert all(x % m == r for r, m in zip(residues, moduli))


def test_primes_1mod4_table():
    ref = [p for p in SMALL_PRIMES if p % 4 == 1]
    assert primes_1mod4_upto(3000).tolist() == ref
    for n in (0, 4, 5, 100, 2999):
        assert count_primes_1mod4(n) == sum(1 for p in ref if p <= n)


def test_count_primes_1mod4_large():
    # pi(10^6; 4, 1) = 39175
    assert count_primes_1mod4(10**6) == 39175
    assert count_primes_1mod4(10**6) == len(primes_1mod4_upto(10**6))


def test_prime_index_round_trip():
    idx = PrimeIndex(initial_limit=100)
    table = primes_1mod4_upto(200000).tolist()
    for i in (0, 1, 10, 500, len(table) - 1):
        assert idx.prime(i) == table[i]
        assert idx.index(table[i]) == i
    assert PRIMES.first(5) == [5, 13, 17, 29, 37]


def test_prime_index_independent_of_cache():
    a, b = PrimeIndex(initial_limit=64), PrimeIndex(initial_limit=1 << 18)
    for i in (3, 400, 9000):
        assert a.prime(i) == b.prime(i)


def test_kernel_prime_scan_finds_first_progression_prime():
    # first prime = 1 mod 4 that is a residue mod 5 and a non-residue mod 13
    z = kernels.prime_scan(0, 10**6, np.array([5, 13], dtype=np.uint64), np.array([1, 0], dtype=np.uint8))
    ref = next(p for p in SMALL_PRIMES if p % 4 == 1 and p % 5 in squares_mod(5) and p % 13 not in squares_mod(13))
    assert z == ref
