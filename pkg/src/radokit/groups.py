"""Cyclic automorphisms, random Cayley graphs on Z and Z^2, square-root sets
and random sum-free sets."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

import numpy as np

from . import kernels
from .constructions import ShiftOracle, UniversalSequence
from .core import (
    GraphOracle,
    PreconditionError,
    coin,
    derive_seed,
    int_to_vertex,
    seed_base,
    vertex_to_int,
)

# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


def cantor_pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def cantor_unpair(n: int) -> tuple[int, int]:
    w = (math.isqrt(8 * n + 1) - 1) // 2
    j = n - w * (w + 1) // 2
    return w - j, j


@dataclass(frozen=True)
class GroupSpec:
    """A countable group with an enumeration of its elements by ``0, 1, 2, ...``."""

    name: str
    element: Callable[[int], Hashable]
    index: Callable[[Hashable], int]
    mul: Callable[[Hashable, Hashable], Hashable]
    inv: Callable[[Hashable], Hashable]
    identity: Hashable

    def div(self, x, y):
        """``x * y^-1``."""
        return self.mul(x, self.inv(y))


def _z2_element(n: int) -> tuple[int, int]:
    i, j = cantor_unpair(n)
    return vertex_to_int(i), vertex_to_int(j)


def _z2_index(x: tuple[int, int]) -> int:
    return cantor_pair(int_to_vertex(x[0]), int_to_vertex(x[1]))


INTEGERS = GroupSpec(
    "z", vertex_to_int, int_to_vertex, lambda x, y: x + y, lambda x: -x, 0,
)
INTEGER_PAIRS = GroupSpec(
    "z2", _z2_element, _z2_index,
    lambda x, y: (x[0] + y[0], x[1] + y[1]), lambda x: (-x[0], -x[1]), (0, 0),
)
GROUPS = {"z": INTEGERS, "z2": INTEGER_PAIRS}


def group(name: str) -> GroupSpec:
    try:
        return GROUPS[name]
    except KeyError:
        raise PreconditionError(f"unknown group {name!r}; choose from {sorted(GROUPS)}") from None


# ---------------------------------------------------------------------------
# cyclic automorphisms
# ---------------------------------------------------------------------------


@dataclass
class CyclicGraph:
    """The shift graph of a sequence together with its automorphism ``x -> x + 1``."""

    oracle: ShiftOracle

    @property
    def seq(self) -> UniversalSequence:
        return self.oracle.seq

    def shift(self, v: int, times: int = 1) -> int:
        return int_to_vertex(vertex_to_int(v) + times)

    def verify_shift(self, radius: int = 50) -> bool:
        """Adjacency of ``x, y`` equals that of ``x + 1, y + 1`` for ``|x|, |y| <= radius``."""
        rng = range(-radius, radius + 1)
        o = self.oracle
        return all(
            o.adjacent(int_to_vertex(x), int_to_vertex(y))
            == o.adjacent(int_to_vertex(x + 1), int_to_vertex(y + 1))
            for x in rng for y in rng
        )

    def recovered_set(self, n: int) -> list[int]:
        """``{m in 1..n : m ~ 0}``, which is the generating set."""
        zero = int_to_vertex(0)
        return [m for m in range(1, n + 1) if self.oracle.adjacent(int_to_vertex(m), zero)]


def cyclic_graph(s: UniversalSequence) -> CyclicGraph:
    return CyclicGraph(ShiftOracle(s))


@dataclass(frozen=True)
class Conjugacy:
    equal: bool
    index: int | None = None  # first position where the sets differ
    bound: int = 0

    def to_dict(self) -> dict:
        if self.equal:
            return {"result": "equal", "bound": self.bound}
        return {"result": "differ", "index": self.index}


def cyclic_conjugacy(s1: UniversalSequence, s2: UniversalSequence, bound: int = 1024) -> Conjugacy:
    """Shifts are conjugate exactly when the sets agree; compare ``1..bound``."""
    a = np.asarray(s1.prefix(bound))
    b = np.asarray(s2.prefix(bound))
    diff = np.flatnonzero(a != b)
    if diff.size:
        return Conjugacy(False, int(diff[0]) + 1, bound)
    return Conjugacy(True, None, bound)


# ---------------------------------------------------------------------------
# Cayley graphs
# ---------------------------------------------------------------------------


class CayleyOracle(GraphOracle):
    """``x ~ y`` iff ``x y^-1`` is in a random inverse-closed set ``S``.

    The pair ``{a, a^-1}`` is decided by one coin keyed to the smaller
    enumeration index of the two.
    """

    def __init__(self, g: GroupSpec, seed: int):
        super().__init__(f"cayley:{g.name}:{seed}", {})
        self.group = g
        self.seed = seed

    def in_S(self, a) -> bool:
        g = self.group
        if a == g.identity:
            return False
        key = min(g.index(a), g.index(g.inv(a)))
        return coin(self.seed, key) == 1

    def _adj(self, u: int, v: int) -> bool:
        g = self.group
        return self.in_S(g.div(g.element(u), g.element(v)))


class IntegerCayleyOracle(ShiftOracle):
    """On the integers the Cayley graph is the shift graph of the seeded sequence."""

    def __init__(self, seed: int):
        super().__init__(UniversalSequence.random(seed), name=f"cayley:z:{seed}")
        self.group = INTEGERS
        self.seed = seed

    def in_S(self, a: int) -> bool:
        return a != 0 and self.seq[abs(a)] == 1


def cayley_oracle(g: "GroupSpec | str", seed: int) -> GraphOracle:
    if isinstance(g, str):
        g = group(g)
    if g is INTEGERS:
        return IntegerCayleyOracle(seed)
    return CayleyOracle(g, seed)


def sqrt_set(g: "GroupSpec | str", a, enum_bound: int = 4096) -> list:
    """Every ``x`` among the first ``enum_bound`` elements with ``x * x == a``."""
    if isinstance(g, str):
        g = group(g)
    out = []
    for i in range(enum_bound):
        x = g.element(i)
        if g.mul(x, x) == a:
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# sum-free sets
# ---------------------------------------------------------------------------


class SumFreeSet:
    """Random sum-free set: scan ``n = 1, 2, ...``; ``n`` is skipped when it is a
    sum of two chosen elements, otherwise one seeded fair coin decides it."""

    def __init__(self, seed: int):
        self.seed = seed
        self._cache = np.zeros(1, dtype=np.uint8)

    def indicator(self, prefix: int) -> np.ndarray:
        """``uint8`` membership of ``0..prefix`` (entry 0 is always 0)."""
        if self._cache.size <= prefix:
            self._cache = kernels.sumfree_members(seed_base(self.seed), max(prefix, 2 * self._cache.size))
        return self._cache[: prefix + 1]

    def members(self, prefix: int) -> list[int]:
        return np.flatnonzero(self.indicator(prefix)).tolist()

    def __contains__(self, n: int) -> bool:
        return n >= 1 and bool(self.indicator(n)[n])


def sum_free(seed: int) -> SumFreeSet:
    return SumFreeSet(seed)


def random_set(seed: int, prefix: int, density: float = 0.5) -> list[int]:
    """A seeded subset of ``1..prefix`` with no structure imposed."""
    rng = np.random.default_rng(derive_seed(seed, 0))
    return (np.flatnonzero(rng.random(prefix) < density) + 1).tolist()


def has_sum_triple(S: Iterable[int], prefix: int) -> bool:
    """Are there ``a, b`` (possibly equal) with ``a, b, a + b`` in ``S`` and ``a + b <= prefix``?"""
    mem = np.zeros(prefix + 1, dtype=bool)
    for s in S:
        if 1 <= s <= prefix:
            mem[s] = True
    elems = np.flatnonzero(mem)
    for a in elems:
        rest = elems[elems <= prefix - a]
        if mem[rest + a].any():
            return True
    return False


def difference_graph_has_triangle(S: Iterable[int], prefix: int) -> bool:
    """Triangle in the graph on ``0..prefix`` with ``x ~ y`` iff ``|x - y|`` is in ``S``."""
    n = prefix + 1
    mem = np.zeros(n, dtype=bool)
    for s in S:
        if 1 <= s <= prefix:
            mem[s] = True
    idx = np.arange(n)
    A = mem[np.abs(idx[:, None] - idx[None, :])].astype(np.int64)
    return bool(((A @ A) * A).any())


@dataclass
class TriangleReport:
    prefix: int
    members: list[int]
    has_triangle: bool
    has_sum_triple: bool
    all_odd: bool

    @property
    def equivalent(self) -> bool:
        return self.has_triangle == self.has_sum_triple

    @property
    def triangle_free(self) -> bool:
        return not self.has_triangle

    def to_dict(self) -> dict:
        return {
            "prefix": self.prefix,
            "set_prefix": self.members,
            "all_odd": self.all_odd,
            "triangle_free": self.triangle_free,
            "sum_free": not self.has_sum_triple,
            "equivalent": self.equivalent,
        }


def triangle_report(S: "SumFreeSet | Iterable[int]", prefix: int) -> TriangleReport:
    """Check on ``0..prefix``: the difference graph has a triangle iff ``S`` has a sum triple."""
    if prefix < 3:
        raise PreconditionError("prefix must be at least 3")
    if isinstance(S, SumFreeSet):
        members = S.members(prefix)
    else:
        members = sorted({int(s) for s in S if 1 <= s <= prefix})
    return TriangleReport(
        prefix,
        members,
        difference_graph_has_triangle(members, prefix),
        has_sum_triple(members, prefix),
        all(m % 2 == 1 for m in members),
    )


def all_odd_frequency(seeds: Iterable[int], prefix: int) -> float:
    """Fraction of generated sum-free sets whose prefix holds only odd numbers."""
    seeds = list(seeds)
    hits = 0
    for s in seeds:
        ind = SumFreeSet(s).indicator(prefix)
        hits += not ind[0::2].any()
    return hits / len(seeds)


__all__ = [
    "CayleyOracle",
    "Conjugacy",
    "CyclicGraph",
    "GroupSpec",
    "INTEGERS",
    "INTEGER_PAIRS",
    "IntegerCayleyOracle",
    "SumFreeSet",
    "TriangleReport",
    "all_odd_frequency",
    "cantor_pair",
    "cantor_unpair",
    "cayley_oracle",
    "cyclic_conjugacy",
    "cyclic_graph",
    "difference_graph_has_triangle",
    "group",
    "has_sum_triple",
    "random_set",
    "sqrt_set",
    "sum_free",
    "triangle_report",
]
