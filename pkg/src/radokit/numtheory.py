"""Number theory for the quadratic-residue graph: residues, CRT, and the
enumeration ``0 -> 5, 1 -> 13, 2 -> 17, ...`` of primes congruent to 1 mod 4."""
from __future__ import annotations

import bisect
import math
import threading
from functools import lru_cache

import numpy as np

from . import kernels
from ._fallback import is_prime as _is_prime_big


def is_prime(n: int) -> bool:
    if n < 0:
        return False
    if n < (1 << 64):
        return bool(kernels.is_prime(n))
    return _is_prime_big(n)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime ``p``, by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def is_qr(a: int, p: int) -> bool:
    """True when ``a`` is a non-zero square modulo ``p``."""
    return legendre(a, p) == 1


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    b = 2
    while legendre(b, p) != -1:
        b += 1
    return b


def crt(residues, moduli) -> tuple[int, int]:
    """Solve ``x = r_i (mod m_i)`` for pairwise coprime moduli; returns ``(x, M)``."""
    x, M = 0, 1
    for r, m in zip(residues, moduli):
        g = math.gcd(M, m)
        if g != 1:
            raise ValueError(f"moduli {M} and {m} are not coprime")
        # x + M*t = r (mod m)
        t = ((r - x) * pow(M, -1, m)) % m
        x += M * t
        M *= m
    return x % M, M


def squares_mod(p: int) -> set[int]:
    return {(x * x) % p for x in range(1, p)}


# ---------------------------------------------------------------------------
# primes congruent to 1 mod 4
# ---------------------------------------------------------------------------


def primes_1mod4_upto(limit: int) -> np.ndarray:
    """All primes ``p <= limit`` with ``p = 1 (mod 4)``, ascending."""
    if limit < 5:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    idx = np.nonzero(sieve)[0]
    return idx[idx % 4 == 1].astype(np.int64)


def count_primes_1mod4(n: int) -> int:
    if n < 5:
        return 0
    if n < (1 << 62):
        return int(kernels.count_primes_1mod4(n))
    raise OverflowError("prime counting is limited to 62-bit arguments")


class PrimeIndex:
    """Index <-> prime map for primes = 1 (mod 4).

    A sieve covers small indices; primes met during witness searches are
    remembered together with their exact index (computed by prime counting),
    and anything else is found by bisection on the counting function.
    Results never depend on what is cached.
    """

    def __init__(self, initial_limit: int = 1 << 16):
        self._lock = threading.Lock()
        self._limit = 0
        self._table = np.zeros(0, dtype=np.int64)
        self._extra_by_index: dict[int, int] = {}
        self._extra_by_prime: dict[int, int] = {}
        self._grow(initial_limit)

    def _grow(self, limit: int) -> None:
        with self._lock:
            if limit > self._limit:
                self._table = primes_1mod4_upto(limit)
                self._limit = limit

    def _remember(self, index: int, p: int) -> None:
        with self._lock:
            self._extra_by_index[index] = p
            self._extra_by_prime[p] = index

    def prime(self, index: int) -> int:
        if index < 0:
            raise ValueError("negative index")
        while index >= len(self._table) and self._limit < (1 << 26):
            self._grow(self._limit * 2)
        if index < len(self._table):
            return int(self._table[index])
        if index in self._extra_by_index:
            return self._extra_by_index[index]
        # bisection: least x with count(x) >= index + 1
        lo, hi = self._limit, max(self._limit * 2, 8 * (index + 1) * int(math.log(index + 2) + 1))
        while count_primes_1mod4(hi) < index + 1:
            lo, hi = hi, hi * 2
        while lo < hi:
            mid = (lo + hi) // 2
            if count_primes_1mod4(mid) >= index + 1:
                hi = mid
            else:
                lo = mid + 1
        self._remember(index, lo)
        return lo

    def index(self, p: int) -> int:
        """Index of the prime ``p`` (which must be = 1 mod 4)."""
        if p % 4 != 1 or not is_prime(p):
            raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
        if p <= self._limit:
            return bisect.bisect_left(self._table, p)
        if p in self._extra_by_prime:
            return self._extra_by_prime[p]
        i = count_primes_1mod4(p) - 1
        self._remember(i, p)
        return i

    def first(self, n: int) -> list[int]:
        return [self.prime(i) for i in range(n)]


PRIMES = PrimeIndex()
