"""Oracle wrappers: complement, switching, finite edits, part probing and the
greedy maximal clique."""
from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass
from typing import Callable, Iterable

from .core import (
    DEFAULT_SEARCH_BOUND,
    GraphOracle,
    PreconditionError,
    QueryOutcome,
    Report,
    WitnessExhausted,
    verify_extension,
)


class ComplementOracle(GraphOracle):
    def __init__(self, base: GraphOracle):
        super().__init__(f"complement({base.describe()})", {})
        self.base = base


    @property
    def fast_search(self) -> bool:
        return self.base.fast_search

    def _adj(self, u: int, v: int) -> bool:
        return not self.base.adjacent(u, v)

    def witness(self, U, V, bound=None) -> int:
        return self.base.witness(V, U, bound)

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        return self.base.least_joined(V, U, exclude, bound)


def complement(o: GraphOracle) -> GraphOracle:
    if isinstance(o, ComplementOracle):
        return o.base
    return ComplementOracle(o)


class SwitchOracle(GraphOracle):
    """Adjacency flipped on every pair with exactly one endpoint in ``X``."""

    def __init__(self, base: GraphOracle, X: Iterable[int]):
        self.X = frozenset(X)
        super().__init__(f"switch({base.describe()}, {sorted(self.X)})", {})
        self.base = base


    @property
    def fast_search(self) -> bool:
        return self.base.fast_search

    def _adj(self, u: int, v: int) -> bool:
        a = self.base.adjacent(u, v)
        return a != ((u in self.X) != (v in self.X))

    def _base_query(self, U, V) -> tuple[list[int], list[int]]:
        # a vertex outside X sees X through flipped edges
        U, V = set(U), set(V)
        X = self.X
        return sorted((U - X) | (V & X)), sorted((U & X) | (V - X))

    def witness(self, U, V, bound=None) -> int:
        U, V = list(U), list(V)
        bu, bv = self._base_query(U, V)
        z = self.base.witness(bu, bv, bound)
        if z in self.X:
            z = self.base.least_joined(bu, bv, self.X | set(U) | set(V), bound)
        return z

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        U, V = list(U), list(V)
        skip = set(exclude) | set(U) | set(V)
        best = None
        try:
            bu, bv = self._base_query(U, V)
            best = self.base.least_joined(bu, bv, skip | self.X, bound)
        except WitnessExhausted:
            if not self.X:
                raise
        for x in sorted(self.X):
            if best is not None and x >= best:
                break
            if x not in skip and self.correctly_joined(x, U, V):
                return x
        if best is None:
            raise WitnessExhausted(f"{self.name}: no correctly joined vertex found")
        return best


def switch(o: GraphOracle, X: Iterable[int]) -> GraphOracle:
    X = frozenset(X)
    if any(x < 0 for x in X):
        raise PreconditionError("vertex ids are non-negative")
    return SwitchOracle(o, X)


@dataclass(frozen=True)
class EditSet:
    """Finite modifications, all in the base oracle's vertex ids.

    Applied in the order: switch ``switched``, flip ``flipped`` pairs, delete
    ``deleted`` (survivors are re-indexed by rank).
    """

    deleted: frozenset = frozenset()
    flipped: frozenset = frozenset()
    switched: frozenset = frozenset()

    def __init__(self, deleted=(), flipped=(), switched=()):
        pairs = set()
        for a, b in flipped:
            if a == b:
                raise PreconditionError(f"flipped pair ({a}, {b}) is a loop")
            pairs.add((min(a, b), max(a, b)))
        object.__setattr__(self, "deleted", frozenset(deleted))
        object.__setattr__(self, "flipped", frozenset(pairs))
        object.__setattr__(self, "switched", frozenset(switched))
        for a, b in pairs:
            if a in self.deleted or b in self.deleted:
                raise PreconditionError(f"flipped pair ({a}, {b}) touches a deleted vertex")

    @property
    def tampered(self) -> frozenset:
        """Deleted vertices and flip endpoints."""
        return self.deleted | frozenset(x for p in self.flipped for x in p)


class EditOracle(GraphOracle):
    def __init__(self, base: GraphOracle, e: EditSet):
        inner = switch(base, e.switched) if e.switched else base
        super().__init__(
            f"edit({base.describe()}, delete={sorted(e.deleted)}, "
            f"flip={sorted(e.flipped)}, switch={sorted(e.switched)})",
            {},
        )
        self.base = base
        self.inner = inner
        self.edits = e
        self._gone = sorted(e.deleted)

    # new index <-> base index, rank based
    def to_base(self, i: int) -> int:
        b = i
        for d in self._gone:
            if d <= b:
                b += 1
            else:
                break
        return b

    def from_base(self, b: int) -> int:
        if b in self.edits.deleted:
            raise ValueError(f"base vertex {b} was deleted")
        return b - bisect.bisect_left(self._gone, b)

    def _base_adj(self, a: int, b: int) -> bool:
        flip = (min(a, b), max(a, b)) in self.edits.flipped
        return self.inner.adjacent(a, b) != flip


    @property
    def fast_search(self) -> bool:
        return self.base.fast_search

    def _adj(self, u: int, v: int) -> bool:
        return self._base_adj(self.to_base(u), self.to_base(v))

    def witness(self, U, V, bound=None) -> int:
        bu = {self.to_base(u) for u in U}
        bv = {self.to_base(v) for v in V}
        bv |= self.edits.tampered - bu
        z = self.inner.witness(bu, bv, bound)
        return self.from_base(z)

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        U, V = list(U), list(V)
        bu = [self.to_base(u) for u in U]
        bv = [self.to_base(v) for v in V]
        skip = {self.to_base(e) for e in exclude} | set(bu) | set(bv)
        endpoints = {x for p in self.edits.flipped for x in p}
        best = None
        try:
            # untouched vertices see the inner oracle's adjacency unchanged
            best = self.inner.least_joined(bu, bv, skip | self.edits.tampered, bound)
        except WitnessExhausted:
            if not endpoints:
                raise
        for x in sorted(endpoints):
            if best is not None and x >= best:
                break
            if x in skip:
                continue
            if all(self._base_adj(x, u) for u in bu) and not any(self._base_adj(x, v) for v in bv):
                best = x
                break
        if best is None:
            raise WitnessExhausted(f"{self.name}: no correctly joined vertex found")
        return self.from_base(best)


def edit(o: GraphOracle, e: EditSet) -> GraphOracle:
    return EditOracle(o, e)


# ---------------------------------------------------------------------------
# pigeonhole probe
# ---------------------------------------------------------------------------


class PartOracle(GraphOracle):
    """Induced subgraph on one colour class, re-indexed in enumeration order."""

    def __init__(self, base: GraphOracle, colouring: Callable[[int], int], part: int,
                 scan_bound: int = DEFAULT_SEARCH_BOUND, max_misses: int = 64):
        super().__init__(f"part({base.describe()}, {part})", {})
        self.max_misses = max_misses
        self.base = base
        self.colouring = colouring
        self.part = part
        self.scan_bound = scan_bound
        self._members: list[int] = []
        self._next = 0
        self._lock = threading.Lock()

    def member(self, i: int) -> int:
        """Base id of the ``i``-th vertex of the part."""
        with self._lock:
            while len(self._members) <= i:
                if self._next >= self.scan_bound:
                    raise WitnessExhausted(
                        f"{self.name}: fewer than {i + 1} vertices below {self.scan_bound}"
                    )
                if self.colouring(self._next) == self.part:
                    self._members.append(self._next)
                self._next += 1
            return self._members[i]

    def rank(self, b: int) -> int:
        """Part index of base vertex ``b`` (which must carry this part's colour)."""
        with self._lock:
            while self._next <= b:
                if self._next >= self.scan_bound:
                    raise WitnessExhausted(f"{self.name}: vertex {b} is beyond the scan bound")
                if self.colouring(self._next) == self.part:
                    self._members.append(self._next)
                self._next += 1
        i = bisect.bisect_left(self._members, b)
        if i == len(self._members) or self._members[i] != b:
            raise ValueError(f"base vertex {b} is not in part {self.part}")
        return i

    def _adj(self, u: int, v: int) -> bool:
        return self.base.adjacent(self.member(u), self.member(v))

    def least_joined(self, U, V, exclude=(), bound=None) -> int:
        # walk the base's correctly joined vertices in order, stepping over
        # other colours; give up after max_misses of them
        bu = [self.member(u) for u in U]
        bv = [self.member(v) for v in V]
        skip = {self.member(e) for e in exclude} | set(bu) | set(bv)
        for _ in range(self.max_misses):
            z = self.base.least_joined(bu, bv, skip, bound)
            if self.colouring(z) == self.part:
                return self.rank(z)
            skip.add(z)
        raise WitnessExhausted(
            f"{self.name}: the first {self.max_misses} joined base vertices lie in other parts"
        )


def pigeonhole_probe(
    o: GraphOracle,
    colouring: Callable[[int], int],
    k: int,
    pool: Iterable[int] = range(10),
    max_query_size: int = 3,
    bound: int = DEFAULT_SEARCH_BOUND,
) -> tuple[int, list[Report]]:
    """Least part whose induced subgraph passes :func:`verify_extension`.

    Returns the part index and the per-part reports.  Raises
    :class:`WitnessExhausted` when no part passes at this scale, which says
    nothing about the infinite graph.
    """
    if k < 1:
        raise PreconditionError("need at least one part")
    pool = list(pool)
    reports = []
    for j in range(k):
        part = PartOracle(o, colouring, j, scan_bound=bound)
        try:
            rep = verify_extension(part, pool, max_query_size, bound)
        except WitnessExhausted as exc:  # the part has fewer vertices than the pool
            rep = Report(part.describe(), [QueryOutcome((), (), "exhausted", None, str(exc))])
            reports.append(rep)
            continue
        reports.append(rep)
        if rep.ok:
            return j, reports
    raise WitnessExhausted("no part passed the extension test at this scale")


def greedy_maximal_clique(o: GraphOracle, steps: int, bound: int | None = None) -> list[int]:
    """``S_{n+1} = S_n + [m]`` with ``m`` the least vertex joined to all of ``S_n``."""
    if steps < 0:
        raise PreconditionError("steps must be non-negative")
    S: list[int] = []
    for _ in range(steps):
        S.append(o.least_joined(S, [], S, bound))
    return S
