"""Explicit countable models of the random graph.

Selectors accepted by :func:`parse_selector` (and the CLI):

``bit``             x < y adjacent iff bit x of y is 1
``shift:concat``    circulant graph on the integers from the concatenation sequence
``shift:rand:<s>``  circulant graph from a seeded random sequence
``prime``           primes = 1 (mod 4), adjacent iff quadratic residues of each other
``seeded:<s>``      seeded fair-coin graph
``closure``         the iterated "one vertex per subset" chain

Seeded adjacency is defined bit-for-bit by :func:`radokit.core.pair_hash`::

    base = mix64(seed + 0x9E3779B97F4A7C15)
    adjacent(u, v) = mix64(mix64(base ^ min(u, v)) + max(u, v)) >> 63
"""
from __future__ import annotations

import threading
from typing import Callable, Iterable

import numpy as np

from . import kernels
from ._bitsearch import least_bits
from .core import (
    DEFAULT_SEARCH_BOUND,
    GraphOracle,
    PreconditionError,
    Unrepresentable,
    WitnessExhausted,
    coin,
    fold64,
    int_to_vertex,
    pair_hash,
    seed_base,
    vertex_to_int,
)
from .numtheory import PRIMES, crt, is_prime, is_qr, least_nonresidue

MAX_TABLE_BITS = 1 << 31


def _bound(bound: int | None) -> int:
    return DEFAULT_SEARCH_BOUND if bound is None else bound


# ---------------------------------------------------------------------------
# universal sequences
# ---------------------------------------------------------------------------


def _concat_bit(i: int) -> int:
    """Position ``i >= 1`` of 0 1 00 01 10 11 000 ..."""
    L, start = 1, 1
    while i >= start + L * (1 << L):
        start += L * (1 << L)
        L += 1
    s, j = divmod(i - start, L)
    return (s >> (L - 1 - j)) & 1


class UniversalSequence:
    """Characteristic sequence ``sigma_1, sigma_2, ...`` of a set of positive integers.

    ``kind`` is ``"concat"`` (all binary strings by length then value),
    ``"random"`` (``sigma_i = coin(seed, i)``) or ``"custom"`` (any predicate).
    """

    def __init__(self, kind: str = "concat", seed: int = 0,
                 fn: Callable[[int], bool] | None = None, name: str | None = None):
        if kind not in ("concat", "random", "custom"):
            raise ValueError(f"unknown sequence kind {kind!r}")
        if kind == "custom" and fn is None:
            raise ValueError("custom sequences need a predicate")
        self.kind = kind
        self.seed = seed
        self._fn = fn
        self.name = name or {"concat": "concat", "random": f"rand:{seed}"}.get(kind, "custom")
        self._lock = threading.Lock()
        self._table = np.zeros(0, dtype=np.uint8)
        self._nbits = 0
        self._unpacked: np.ndarray | None = None

    @classmethod
    def concat(cls) -> "UniversalSequence":
        return cls("concat")

    @classmethod
    def random(cls, seed: int) -> "UniversalSequence":
        return cls("random", seed=seed)

    @classmethod
    def custom(cls, fn: Callable[[int], bool], name: str = "custom") -> "UniversalSequence":
        return cls("custom", fn=fn, name=name)

    def __getitem__(self, i: int) -> int:
        if i < 1:
            raise IndexError("sequence positions start at 1")
        if i < self._nbits:
            return int(self._table[i >> 3] >> (i & 7)) & 1
        if self.kind == "concat":
            return _concat_bit(i)
        if self.kind == "random":
            return coin(self.seed, i)
        return int(bool(self._fn(i)))

    def contains(self, n: int) -> bool:
        return self[n] == 1

    def prefix(self, n: int) -> list[int]:
        """``[sigma_1, ..., sigma_n]``."""
        return self.bits(n + 1)[1:].astype(int).tolist()

    def members(self, n: int) -> list[int]:
        """The set restricted to ``1..n``."""
        return [i + 1 for i, b in enumerate(self.prefix(n)) if b]

    def bits(self, n: int) -> np.ndarray:
        """Unpacked ``uint8`` view of positions ``0..n-1``."""
        t = self.table(n)
        if self._unpacked is None or self._unpacked.size < n:
            self._unpacked = np.unpackbits(t, bitorder="little")
        return self._unpacked[:n]

    def table(self, nbits: int) -> np.ndarray:
        """Packed little-endian bits covering positions ``0..nbits-1`` (bit 0 is zero)."""
        if nbits > self._nbits:
            with self._lock:
                if nbits > self._nbits:
                    size = max(nbits, 2 * self._nbits, 1 << 12)
                    if size > MAX_TABLE_BITS:
                        size = max(nbits, MAX_TABLE_BITS)
                    if size > MAX_TABLE_BITS:
                        raise Unrepresentable(f"sequence table of {nbits} bits is too large")
                    self._table = self._build(size)
                    self._nbits = size
                    self._unpacked = None
        return self._table

    def _build(self, nbits: int) -> np.ndarray:
        if self.kind == "concat":
            return kernels.concat_table(nbits)
        if self.kind == "random":
            return kernels.random_table(seed_base(self.seed), nbits)
        bits = np.zeros(nbits, dtype=np.uint8)
        for i in range(1, nbits):
            bits[i] = bool(self._fn(i))
        return np.packbits(bits, bitorder="little")

    def __repr__(self) -> str:
        return f"UniversalSequence({self.name})"


# ---------------------------------------------------------------------------
# binary encoding
# ---------------------------------------------------------------------------


def _bit_least(images: dict[int, bool], start: int, exclude: set[int]) -> int:
    """Least ``z >= start`` outside ``images``/``exclude`` with ``adj(z, w) == images[w]``."""
    ws = sorted(images)
    edges = [-1] + ws + [None]
    for j in range(len(ws) + 1):
        a, b = edges[j], edges[j + 1]
        lower = {w: images[w] for w in ws[:j]}
        upper = [(w, 0, images[w]) for w in ws[j:]]
        lo = max(a + 1, start)
        while True:
            z = least_bits(lo, b, lower, upper)
            if z is None:
                break
            if z not in exclude:
                return z
            lo = z + 1
    raise AssertionError("unbounded interval always has a solution")  # pragma: no cover


class BitOracle(GraphOracle):
    """``x < y`` adjacent iff the ``x``-th binary digit of ``y`` is 1."""

    fast_search = True

    name = "bit"

    def _adj(self, u: int, v: int) -> bool:
        return (v >> u) & 1 == 1

    def witness(self, U: Iterable[int], V: Iterable[int], bound: int | None = None) -> int:
        U, V = set(U), set(V)
        t = max(U | V, default=-1) + 1
        return (1 << t) + sum(1 << u for u in U)

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        images = {u: True for u in U}
        images.update({v: False for v in V})
        return _bit_least(images, 0, set(exclude))


def make_bit() -> BitOracle:
    return BitOracle()


# ---------------------------------------------------------------------------
# shift (circulant) graph
# ---------------------------------------------------------------------------


class ShiftOracle(GraphOracle):
    """Integers ``x, y`` adjacent iff ``|x - y|`` lies in the sequence's set.

    Vertex ``k`` is the integer ``vertex_to_int(k)``.
    """

    fast_search = True

    name = "shift"

    def __init__(self, seq: UniversalSequence, name: str | None = None):
        super().__init__(name or f"shift:{seq.name}", {})
        self.seq = seq

    def _adj(self, u: int, v: int) -> bool:
        return self.seq[abs(vertex_to_int(u) - vertex_to_int(v))] == 1

    def adjacent_int(self, x: int, y: int) -> bool:
        return x != y and self.seq[abs(x - y)] == 1

    def witness(self, U, V, bound=None) -> int:
        """Window scan: find ``N`` with ``sigma_{N+i} = [l - 1 + i in U]`` for
        ``i = 1..k``, where ``[l, L]`` spans ``U | V`` and ``k = L - l + 1``;
        the witness is the integer ``l - 1 - N``."""
        Ui = {vertex_to_int(u) for u in U}
        Vi = {vertex_to_int(v) for v in V}
        both = Ui | Vi
        if not both:
            return 0
        lo, hi = min(both), max(both)
        k = hi - lo + 1
        pattern = np.zeros(k, dtype=np.uint8)
        for x in Ui:
            pattern[x - lo] = 1
        limit = _bound(bound)
        step = 1 << 8
        N0 = 0
        while N0 < limit:
            N1 = min(limit, N0 + step)
            bits = self._bits(N1 + k + 1)
            win = np.lib.stride_tricks.sliding_window_view(bits[N0 + 1 : N1 + k], k)
            hits = np.nonzero((win == pattern).all(axis=1))[0]
            if hits.size:
                N = N0 + int(hits[0])
                return int_to_vertex(lo - 1 - N)
            N0 = N1
            step *= 2
        raise WitnessExhausted(f"{self.name}: no matching window below {limit}")

    def _bits(self, n: int) -> np.ndarray:
        return self.seq.bits(n)

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        xs = [vertex_to_int(u) for u in U] + [vertex_to_int(v) for v in V]
        flags = [1] * len(U) + [0] * len(V)
        skip = {vertex_to_int(e) for e in exclude}
        limit = _bound(bound)
        xs_a = np.asarray(xs, dtype=np.int64)
        fl_a = np.asarray(flags, dtype=np.uint8)
        ex_a = np.asarray(sorted(skip), dtype=np.int64)
        reach = max((abs(x) for x in xs), default=0)
        start, chunk = 0, 1 << 16
        while start < limit:
            stop = min(limit, start + chunk)
            nbits = stop // 2 + reach + 2
            table = self.seq.table(nbits)
            k = kernels.shift_scan(table, nbits, start, stop, xs_a, fl_a, ex_a)
            if k == -2:  # pragma: no cover - table sized for the whole chunk
                raise AssertionError("shift table too short")
            if k >= 0:
                return int(k)
            start = stop
            chunk = min(chunk * 2, 1 << 26)
        raise WitnessExhausted(f"{self.name}: no correctly joined vertex below {limit}")


def make_shift(seq: UniversalSequence | None = None) -> ShiftOracle:
    return ShiftOracle(seq or UniversalSequence.concat())


# ---------------------------------------------------------------------------
# quadratic-residue graph on primes = 1 (mod 4)
# ---------------------------------------------------------------------------


CRT_MODULUS_LIMIT = 1 << 32


class PrimeOracle(GraphOracle):
    """Vertex ``i`` is the ``i``-th prime = 1 (mod 4); ``p ~ q`` iff ``(p/q) = 1``."""

    fast_search = True

    name = "prime"

    def prime(self, i: int) -> int:
        return PRIMES.prime(i)

    def vertex(self, p: int) -> int:
        return PRIMES.index(p)

    def _adj(self, u: int, v: int) -> bool:
        return is_qr(self.prime(u), self.prime(v))

    def witness(self, U, V, bound=None) -> int:
        """CRT: ``x = 1 (mod 4)``, ``x = 1 (mod u)``, ``x = b_v (mod v)`` with ``b_v``
        the least non-residue; then the first prime of the progression.

        Turning a prime back into a vertex index means counting primes below
        it, so for moduli above ``CRT_MODULUS_LIMIT`` the least joined vertex
        is returned instead.
        """
        ps = [self.prime(u) for u in U]
        qs = [self.prime(v) for v in V]
        x0, M = crt([1] + [1] * len(ps) + [least_nonresidue(q) for q in qs], [4] + ps + qs)
        if M > CRT_MODULUS_LIMIT:
            return self.least_joined(U, V, set(U) | set(V), bound)
        limit = _bound(bound)
        for t in range(limit):
            x = x0 + t * M
            if is_prime(x):
                return self.vertex(x)
        raise WitnessExhausted(f"prime: no prime among {limit} progression terms")

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        imgs = [(self.prime(u), True) for u in U] + [(self.prime(v), False) for v in V]
        imgs.sort()
        qs = np.asarray([q for q, _ in imgs], dtype=np.uint64)
        fl = np.asarray([f for _, f in imgs], dtype=np.uint8)
        skip = {self.prime(e) for e in exclude}
        limit = _bound(bound)
        start = 5
        while True:
            p = int(kernels.prime_scan(start, 1 << 62, qs, fl))
            if p < 0:  # pragma: no cover - Dirichlet
                raise WitnessExhausted("prime: search range exhausted")
            if p not in skip:
                break
            start = p + 1
        idx = self.vertex(p)
        if idx >= limit:
            raise WitnessExhausted(f"prime: least joined vertex {idx} is beyond {limit}")
        return idx


def make_prime() -> PrimeOracle:
    return PrimeOracle()


# ---------------------------------------------------------------------------
# seeded random graph
# ---------------------------------------------------------------------------


class SeededOracle(GraphOracle):

    fast_search = True
    name = "seeded"

    def __init__(self, seed: int):
        if not 0 <= seed < (1 << 64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        super().__init__(f"seeded:{seed}", {})
        self.seed = seed
        self.base = seed_base(seed)

    def _adj(self, u: int, v: int) -> bool:
        return pair_hash(self.base, u, v) >> 63 == 1

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        ws = [fold64(u) for u in U] + [fold64(v) for v in V]
        limit = _bound(bound)
        if any(w != x for w, x in zip(ws, list(U) + list(V))):
            return super().least_joined(U, V, exclude, bound)
        fl = np.asarray([1] * len(U) + [0] * len(V), dtype=np.uint8)
        ws_a = np.asarray(ws, dtype=np.uint64)
        skip = sorted({e for e in exclude if e < (1 << 64)} | set(ws))
        ex_a = np.asarray(skip, dtype=np.uint64)
        start, chunk = 0, 1 << 16
        while start < limit:
            stop = min(limit, start + chunk)
            z = kernels.seeded_scan(self.base, start, stop, ws_a, fl, ex_a)
            if z >= 0:
                return int(z)
            start = stop
            chunk = min(chunk * 2, 1 << 26)
        raise WitnessExhausted(f"{self.name}: no correctly joined vertex below {limit}")


def make_seeded(seed: int) -> SeededOracle:
    return SeededOracle(seed)


# ---------------------------------------------------------------------------
# closure chain
# ---------------------------------------------------------------------------

# n_0 = 0, n_{k+1} = n_k + 2**n_k; vertices of stage k are [n_{k-1}, n_k).
STAGE_SIZES = [0, 1, 3, 11, 2059, 2059 + (1 << 2059)]


def stage_of(v: int) -> int:
    """Stage ``k >= 1`` containing vertex ``v``; everything past ``n_5`` is stage 6."""
    for k in range(1, len(STAGE_SIZES)):
        if v < STAGE_SIZES[k]:
            return k
    return len(STAGE_SIZES)


class ClosureChainOracle(GraphOracle):
    """Stage ``k+1`` adds ``z(U)`` for every subset ``U`` of the first ``n_k``
    vertices, in rank order ``sum(2**i for i in U)``; ``z(U)`` is joined to ``U``
    and to nothing else created before it."""

    fast_search = True

    name = "closure"

    @staticmethod
    def base(k: int) -> int:
        return STAGE_SIZES[k - 1]

    def subset(self, v: int) -> int:
        """Rank of the subset whose closing vertex is ``v``."""
        return v - self.base(stage_of(v))

    def _adj(self, u: int, v: int) -> bool:
        if stage_of(u) == stage_of(v):
            return False
        return (self.subset(v) >> u) & 1 == 1

    def witness(self, U, V, bound=None) -> int:
        U, V = set(U), set(V)
        top = max(U | V, default=-1)
        for k in range(1, len(STAGE_SIZES)):
            if top < self.base(k):
                return self.base(k) + sum(1 << u for u in U)
        raise Unrepresentable("closure: witness lies beyond stage 5")

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        images = {u: True for u in U}
        images.update({v: False for v in V})
        skip = set(exclude) | set(images)
        for k in range(1, len(STAGE_SIZES) + 1):
            base = self.base(k)
            hi = None if k == len(STAGE_SIZES) else STAGE_SIZES[k] - base
            same = [w for w in images if stage_of(w) == k]
            if any(images[w] for w in same):
                continue
            lower = {w: f for w, f in images.items() if w < base}
            upper = [(self.subset(w), base, f) for w, f in images.items() if stage_of(w) > k]
            lo = 0
            while True:
                r = least_bits(lo, hi, lower, upper)
                if r is None:
                    break
                if base + r not in skip:
                    return base + r
                lo = r + 1
        raise AssertionError("last stage is unbounded")  # pragma: no cover


def make_closure_chain() -> ClosureChainOracle:
    return ClosureChainOracle()


# ---------------------------------------------------------------------------
# selectors
# ---------------------------------------------------------------------------

SELECTORS = ("bit", "shift:concat", "shift:rand:<seed>", "prime", "seeded:<seed>", "closure")


def _parse_seed(text: str) -> int:
    seed = int(text)
    if not 0 <= seed < (1 << 64):
        raise ValueError("seeds are 64-bit unsigned integers")
    return seed


def parse_selector(sel: str) -> GraphOracle:
    """Build an oracle from a selector string such as ``"shift:rand:7"``."""
    parts = sel.strip().split(":")
    try:
        if parts == ["bit"]:
            return make_bit()
        if parts == ["prime"]:
            return make_prime()
        if parts == ["closure"]:
            return make_closure_chain()
        if parts[0] == "seeded" and len(parts) == 2:
            return make_seeded(_parse_seed(parts[1]))
        if parts[0] == "shift":
            if parts[1:] == ["concat"]:
                return make_shift(UniversalSequence.concat())
            if len(parts) == 3 and parts[1] == "rand":
                return make_shift(UniversalSequence.random(_parse_seed(parts[2])))
    except (ValueError, IndexError) as exc:
        raise PreconditionError(f"bad graph selector {sel!r}: {exc}") from None
    raise PreconditionError(
        f"unknown graph selector {sel!r}; expected one of {', '.join(SELECTORS)}"
    )
