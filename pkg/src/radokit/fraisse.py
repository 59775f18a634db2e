"""Hereditary graph classes given by forbidden induced subgraphs, bounded
amalgamation checks, and their limits built as saturated stage chains.

The limit of a class is grown exactly like the closure chain: stage ``k+1``
offers a new vertex ``z(U)`` for every subset ``U`` of the vertices built so
far, in rank order ``sum(2**u for u in U)``.  Here the offer is accepted only
when the graph stays in the class.  Stages are materialized lazily, so a
query touching only small vertices never forces the whole stage to exist.
"""
from __future__ import annotations

import itertools
import json
import logging
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constructions import ClosureChainOracle, STAGE_SIZES
from .core import (
    FiniteGraph,
    GraphOracle,
    PreconditionError,
    Unrepresentable,
    UnsatisfiableQuery,
    WitnessExhausted,
    WitnessQuery,
)

log = logging.getLogger(__name__)

# Largest number of candidate subsets examined in one stage.
MAX_STAGE_MASKS = 1 << 22


# ---------------------------------------------------------------------------
# class descriptions
# ---------------------------------------------------------------------------


def _rows(g: FiniteGraph) -> list[int]:
    return [sum(1 << j for j in range(g.n) if g.adjacency[i, j]) for i in range(g.n)]


def find_induced(h: FiniteGraph, rows: Sequence[int], anchor: int | None = None,
                 candidates: int | None = None) -> list[int] | None:
    """An induced copy of ``h`` in the graph with adjacency bitmasks ``rows``.

    With ``anchor`` set, some vertex of ``h`` must land on it.  Returns the
    images of ``h``'s vertices or ``None``.
    """
    k = h.n
    n = len(rows)
    hrows = _rows(h)
    everything = (1 << n) - 1 if candidates is None else candidates
    if k == 0:
        return []
    if k > n:
        return None

    def extend(order: list[int], images: list[int]) -> list[int] | None:
        if len(images) == k:
            out = [0] * k
            for a, c in zip(order, images):
                out[a] = c
            return out
        b = next(x for x in range(k) if x not in order)
        pool = everything
        used = 0
        for a, c in zip(order, images):
            used |= 1 << c
            pool &= rows[c] if hrows[b] >> a & 1 else ~rows[c]
        pool &= ~used
        while pool:
            low = pool & -pool
            pool ^= low
            got = extend(order + [b], images + [low.bit_length() - 1])
            if got is not None:
                return got
        return None

    if anchor is None:
        for c in _bits(everything):
            got = extend([0], [c])
            if got is not None:
                return got
        return None
    for a in range(k):
        got = extend([a], [anchor])
        if got is not None:
            return got
    return None


def canonical_key(g: FiniteGraph) -> tuple:
    n = g.n
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(bool(g.adjacency[perm[i], perm[j]]) for i in range(n) for j in range(i + 1, n))
        if best is None or key < best:
            best = key
    return (n, best or ())


@dataclass(frozen=True, eq=False)
class ClassSpec:
    """Finite graphs with no induced subgraph isomorphic to a forbidden one."""

    forbidden: tuple = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        for h in self.forbidden:
            if h.n < 2:
                raise PreconditionError("forbidden graphs need at least 2 vertices")

    @classmethod
    def complete(cls, n: int) -> "ClassSpec":
        """The ``K_n``-free graphs."""
        if n < 2:
            raise PreconditionError("K_n-free classes need n >= 2")
        return cls((FiniteGraph.complete(n),), f"Kn:{n}")

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        """``"Kn:<n>"``, ``"all"`` / ``""`` (no exclusions) or a JSON document."""
        t = text.strip()
        if t in ("", "all", "none", "empty"):
            return cls((), "all")
        if t.startswith("Kn:"):
            try:
                return cls.complete(int(t[3:]))
            except ValueError:
                raise PreconditionError(f"bad class name {text!r}") from None
        try:
            data = json.loads(t)
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"class spec is neither a name nor JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "ClassSpec":
        try:
            graphs = [FiniteGraph.from_dict(g) for g in data["forbidden"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed class spec: {exc}") from None
        return cls(tuple(graphs), data.get("label", ""))

    @classmethod
    def load(cls, path: str) -> "ClassSpec":
        with open(path) as fh:
            return cls.parse(fh.read())

    def to_dict(self) -> dict:
        out = {"forbidden": [g.to_dict() for g in self.forbidden]}
        if self.label:
            out["label"] = self.label
        return out

    def key(self) -> tuple:
        return tuple(sorted(canonical_key(g) for g in self.forbidden))

    def describe(self) -> str:
        if self.label:
            return self.label
        return "forbid" + json.dumps([g.to_dict() for g in self.forbidden])

    @property
    def clique_size(self) -> int | None:
        """``n`` when the class is exactly the ``K_n``-free graphs."""
        if len(self.forbidden) == 1:
            h = self.forbidden[0]
            if len(h.edges()) == h.n * (h.n - 1) // 2:
                return h.n
        return None


def is_member(spec: ClassSpec, g: FiniteGraph) -> bool:
    rows = _rows(g)
    return all(find_induced(h, rows) is None for h in spec.forbidden)


def _rows_member(spec: ClassSpec, rows: Sequence[int], anchor: int | None = None) -> bool:
    return all(find_induced(h, rows, anchor) is None for h in spec.forbidden)


# ---------------------------------------------------------------------------
# amalgamation
# ---------------------------------------------------------------------------


@dataclass
class AmalgamationReport:
    spec: str
    size_bound: int
    checked: int = 0
    failures: list[dict] = field(default_factory=list)         # no amalgam at all
    strong_failures: list[dict] = field(default_factory=list)  # none without identifications

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def strong_ok(self) -> bool:
        return not self.strong_failures

    def summary(self) -> str:
        return (f"{self.spec}: {self.checked} amalgamation problems up to size {self.size_bound}, "
                f"{len(self.failures)} failures, {len(self.strong_failures)} without a strong amalgam")

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "size_bound": self.size_bound,
            "checked": self.checked,
            "ok": self.ok,
            "strong_ok": self.strong_ok,
            "failures": self.failures,
            "strong_failures": self.strong_failures,
        }


def _extensions(a_rows: list[int], a: int, b: int) -> Iterable[list[int]]:
    """Graphs on ``0..b-1`` whose induced subgraph on ``0..a-1`` is ``a_rows``."""
    pairs = [(i, j) for j in range(a, b) for i in range(j)]
    for mask in range(1 << len(pairs)):
        rows = list(a_rows) + [0] * (b - a)
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield rows


def _amalgam(spec: ClassSpec, a: int, r1: list[int], b1: int, r2: list[int], b2: int,
             identify: bool) -> bool:
    """Is there a class member containing B1 and B2 glued along A?"""
    x1 = list(range(a, b1))
    x2 = list(range(a, b2))
    matchings: list[dict[int, int]] = [{}]
    if identify:
        matchings = []
        for k in range(0, min(len(x1), len(x2)) + 1):
            for dom in itertools.combinations(x2, k):
                for img in itertools.permutations(x1, k):
                    matchings.append(dict(zip(dom, img)))
    for match in matchings:
        # B2 vertex -> C vertex
        place = {i: i for i in range(a)}
        nxt = b1
        for y in x2:
            if y in match:
                place[y] = match[y]
            else:
                place[y] = nxt
                nxt += 1
        size = nxt
        rows = list(r1) + [0] * (size - b1)
        conflict = False
        for i in range(b2):
            for j in range(i + 1, b2):
                ci, cj = place[i], place[j]
                want = bool(r2[i] >> j & 1)
                if ci < b1 and cj < b1:
                    if bool(rows[ci] >> cj & 1) != want:
                        conflict = True
                        break
                elif want:
                    rows[ci] |= 1 << cj
                    rows[cj] |= 1 << ci
            if conflict:
                break
        if conflict:
            continue
        free = [(p, place[y]) for p in x1 if p not in match.values()
                for y in x2 if y not in match]
        for mask in range(1 << len(free)):
            trial = list(rows)
            for k, (p, q) in enumerate(free):
                if mask >> k & 1:
                    trial[p] |= 1 << q
                    trial[q] |= 1 << p
            if _rows_member(spec, trial):
                return True
    return False


def check_amalgamation(spec: ClassSpec, size_bound: int) -> AmalgamationReport:
    """Search every amalgamation problem ``B1 <- A -> B2`` with ``|B1|, |B2| <= size_bound``.

    ``A`` is taken as the first ``|A|`` vertices of both ``B1`` and ``B2``,
    which covers every pair of embeddings up to relabelling.  Amalgams may
    identify vertices of ``B1 - A`` with vertices of ``B2 - A``; problems
    needing such identifications are listed in ``strong_failures``.
    """
    if size_bound < 2:
        raise PreconditionError("size_bound must be at least 2")
    report = AmalgamationReport(spec.describe(), size_bound)
    for a in range(0, size_bound):
        for a_rows in _extensions([], 0, a):
            if not _rows_member(spec, a_rows):
                continue
            members = []
            seen = set()
            for b in range(a + 1, size_bound + 1):
                for rows in _extensions(a_rows, a, b):
                    if not _rows_member(spec, rows):
                        continue
                    key = _key_over(rows, a)
                    if key in seen:
                        continue
                    seen.add(key)
                    members.append((rows, b))
            for i, (r1, b1) in enumerate(members):
                for r2, b2 in members[i:]:
                    report.checked += 1
                    if _amalgam(spec, a, r1, b1, r2, b2, identify=False):
                        continue
                    case = {
                        "A": {"n": a, "edges": _edges(a_rows, a)},
                        "B1": {"n": b1, "edges": _edges(r1, b1)},
                        "B2": {"n": b2, "edges": _edges(r2, b2)},
                    }
                    report.strong_failures.append(case)
                    if not _amalgam(spec, a, r1, b1, r2, b2, identify=True):
                        report.failures.append(case)
    return report


def _edges(rows: list[int], n: int) -> list[list[int]]:
    return [[i, j] for i in range(n) for j in range(i + 1, n) if rows[i] >> j & 1]


def _key_over(rows: list[int], a: int) -> tuple:
    """Isomorphism type of a graph over its first ``a`` vertices (fixed pointwise)."""
    b = len(rows)
    best = None
    for perm in itertools.permutations(range(a, b)):
        p = list(range(a)) + list(perm)
        key = tuple(bool(rows[p[i]] >> p[j] & 1) for j in range(a, b) for i in range(j))
        if best is None or key < best:
            best = key
    return (b, best)


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------


class LimitOracle(GraphOracle):
    """Saturated stage chain of a hereditary class, materialized on demand."""

    def __init__(self, spec: ClassSpec, guard: AmalgamationReport | None = None):
        super().__init__(f"limit({spec.describe()})", {})
        self.spec = spec
        self.guard = guard
        self._rows: list[int] = []      # adjacency bitmasks of materialized vertices
        self._subset: list[int] = []    # neighbour mask within the vertex's base
        self._stage_start: list[int] = [0, 0]   # first vertex of stage k (k >= 1)
        self._stage_base: list[int] = [0, 0]    # size of the base of stage k
        self._cursor = 0                # next mask to offer in the open stage
        self._complete = False          # the open stage has been exhausted
        self._lock = threading.Lock()
        self._offers = 0
        self._clique = spec.clique_size
        self._kmin = FiniteGraph.complete(self._clique - 1) if self._clique else None

    # -- ledger ------------------------------------------------------------

    @property
    def open_stage(self) -> int:
        return len(self._stage_start) - 1

    def _blocking_copy(self, mask: int) -> list[int] | None:
        """Base vertices of a forbidden copy created by adding ``z(mask)``."""
        if self._clique is not None:
            return find_induced(self._kmin, self._rows, candidates=mask)
        z = len(self._rows)
        trial = list(self._rows)
        for u in _bits(mask):
            trial[u] |= 1 << z
        trial.append(mask)
        for h in self.spec.forbidden:
            copy = find_induced(h, trial, anchor=z)
            if copy is not None:
                return [c for c in copy if c != z]
        return None

    def _offer_next(self) -> None:
        """Offer the next subset of the open stage, or open a new stage."""
        k = self.open_stage
        base = self._stage_base[k]
        if self._cursor >= (1 << base):
            if len(self._rows) == self._stage_start[k] and k > 1:
                raise WitnessExhausted(f"{self.name}: stage {k} added no vertex")
            self._stage_start.append(len(self._rows))
            self._stage_base.append(len(self._rows))
            self._cursor = 0
            self._offers = 0
            return
        if self._offers >= MAX_STAGE_MASKS:
            raise Unrepresentable(
                f"{self.name}: stage {k} would need more than {MAX_STAGE_MASKS} subsets"
            )
        self._offers += 1
        mask = self._cursor
        copy = self._blocking_copy(mask)
        if copy is not None:
            # the copy survives in every mask that agrees with this one on it
            self._cursor = _next_differing(mask, copy)
            return
        self._cursor = mask + 1
        z = len(self._rows)
        for u in _bits(mask):
            self._rows[u] |= 1 << z
        self._rows.append(mask)
        self._subset.append(mask)

    def _ensure_vertex(self, v: int) -> None:
        with self._lock:
            while len(self._rows) <= v:
                self._offer_next()

    def _ensure_stage_closed(self, k: int) -> None:
        """Materialize every vertex of stage ``k``."""
        with self._lock:
            while self.open_stage <= k:
                self._offer_next()

    def _ensure_mask(self, k: int, mask: int) -> None:
        """Offer subsets of stage ``k`` up to and including ``mask``."""
        self._ensure_stage_closed(k - 1)
        with self._lock:
            while self.open_stage == k and self._cursor <= mask:
                self._offer_next()

    def stage_of(self, v: int) -> int:
        self._ensure_vertex(v)
        k = 1
        while k + 1 < len(self._stage_start) and self._stage_start[k + 1] <= v:
            k += 1
        return k

    def neighbourhood_mask(self, v: int) -> int:
        """Neighbours of ``v`` created before it."""
        self._ensure_vertex(v)
        return self._subset[v]

    # -- oracle interface --------------------------------------------------

    def _adj(self, u: int, v: int) -> bool:
        self._ensure_vertex(v)
        return (self._subset[v] >> u) & 1 == 1

    def satisfiable(self, U: Iterable[int]) -> bool:
        """Can any class member hold a vertex joined to all of ``U``?"""
        U = sorted(set(U))
        rows = [0] * (len(U) + 1)
        for i, u in enumerate(U):
            for j, w in enumerate(U[:i]):
                if self.adjacent(u, w):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            rows[i] |= 1 << len(U)
        rows[len(U)] = (1 << len(U)) - 1
        return _rows_member(self.spec, rows)

    def witness(self, U, V, bound=None) -> int:
        U, V = set(U), set(V)
        if U & V:
            raise PreconditionError("U and V must be disjoint")
        if not self.satisfiable(U):
            raise UnsatisfiableQuery(
                f"{self.name}: a vertex joined to all of {sorted(U)} leaves the class"
            )
        top = max(U | V, default=-1)
        mask = sum(1 << u for u in U)
        self._ensure_vertex(top)
        k = self.stage_of(top) + 1 if top >= 0 else 1
        while True:
            self._ensure_mask(k, mask)
            start = self._stage_start[k]
            stop = self._stage_start[k + 1] if k + 1 < len(self._stage_start) else len(self._rows)
            # the stage's masks ascend with the vertex ids, so bisect
            lo, hi = start, stop
            while lo < hi:
                mid = (lo + hi) // 2
                if self._subset[mid] < mask:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < stop and self._subset[lo] == mask:
                return lo
            k += 1  # refused at this stage; later stages see a larger graph

    def truncate_graph(self, n: int) -> FiniteGraph:
        self._ensure_vertex(n - 1)
        edges = [(u, v) for v in range(n) for u in _bits(self._subset[v])]
        return FiniteGraph.from_edges(n, edges)


class FreeLimitOracle(ClosureChainOracle):
    """Limit of the class of all finite graphs: the closure chain itself."""

    def __init__(self, spec: ClassSpec):
        super().__init__(f"limit({spec.describe()})")
        self.spec = spec
        self.guard = None


def _next_differing(mask: int, positions: Iterable[int]) -> int:
    """Least ``m > mask`` whose bit differs from ``mask`` at one of ``positions``."""
    best = None
    for p in positions:
        if not mask >> p & 1:
            r = p
        else:
            free = ~mask >> (p + 1)
            r = p + 1 + ((free & -free).bit_length() - 1)
        cand = ((mask >> r) | 1) << r
        if best is None or cand < best:
            best = cand
    if best is None:
        raise AssertionError("a forbidden copy needs a base vertex")  # pragma: no cover
    return best


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


_GUARDS: dict[tuple, AmalgamationReport] = {}


def limit_oracle(spec: ClassSpec, guard: bool = True) -> GraphOracle:
    """The limit of ``spec``'s class as a lazily built stage chain.

    With ``guard`` the class is first checked for amalgamation up to size 4;
    a failure is logged and kept on the oracle, but the chain is still built.
    """
    report = None
    if guard:
        key = spec.key()
        if key not in _GUARDS:
            _GUARDS[key] = check_amalgamation(spec, 4)
        report = _GUARDS[key]
        if not report.ok:
            log.warning("%s fails amalgamation at size 4; the limit may not be homogeneous",
                        spec.describe())
    if not spec.forbidden:
        return FreeLimitOracle(spec)
    return LimitOracle(spec, report)


def henson_witness(o: LimitOracle, q: "WitnessQuery | tuple") -> int:
    """Witness in the ``K_n``-free limit; ``U`` must not contain ``K_{n-1}``."""
    if not isinstance(o, LimitOracle) or o.spec.clique_size is None:
        raise PreconditionError("henson_witness needs the limit of a K_n-free class")
    U, V = (q.U, q.V) if isinstance(q, WitnessQuery) else q
    U, V = sorted(set(U)), sorted(set(V))
    n = o.spec.clique_size
    rows = [sum(1 << j for j, w in enumerate(U) if w != u and o.adjacent(u, w)) for u in U]
    copy = find_induced(FiniteGraph.complete(n - 1), rows) if n > 1 else None
    if copy is not None:
        raise PreconditionError(
            f"U contains K_{n - 1} on {[U[i] for i in copy]}; a witness would create K_{n}"
        )
    return o.witness(U, V)


__all__ = [
    "AmalgamationReport",
    "ClassSpec",
    "FreeLimitOracle",
    "LimitOracle",
    "MAX_STAGE_MASKS",
    "STAGE_SIZES",
    "check_amalgamation",
    "find_induced",
    "henson_witness",
    "is_member",
    "limit_oracle",
]
