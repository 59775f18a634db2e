"""Vertex model, finite graphs, the oracle abstraction and the extension verifier.

Every countable graph in this package lives on the natural numbers.  A
:class:`GraphOracle` answers adjacency queries and produces witnesses for
the extension property: given finite disjoint vertex sets ``U`` and ``V``,
a vertex adjacent to everything in ``U`` and to nothing in ``V``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

DEFAULT_SEARCH_BOUND = 10**6

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class RadoError(Exception):
    """Base class for errors raised by this package."""


class WitnessExhausted(RadoError):
    """A witness search ran past its bound without finding a vertex."""


class Unrepresentable(WitnessExhausted):
    """The least witness exists but its index is too large to materialize."""


class UnsatisfiableQuery(RadoError):
    """No vertex of the structure can satisfy the query (e.g. Henson graphs)."""


class PreconditionError(RadoError):
    """An operation was called outside its documented precondition."""


# ---------------------------------------------------------------------------
# 64-bit mixing.  These definitions are part of the public contract: seeded
# oracles, seeded sequences and Monte-Carlo sample seeds are all derived from
# them, so truncations are portable across implementations.
# ---------------------------------------------------------------------------


def mix64(x: int) -> int:
    """splitmix64 finalizer on the low 64 bits of ``x``."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def fold64(n: int) -> int:
    """Reduce a natural number to 64 bits; the identity below 2**64."""
    if n <= MASK64:
        return n
    return mix64(fold64(n >> 64) ^ GOLDEN) ^ (n & MASK64)


def seed_base(seed: int) -> int:
    return mix64((seed + GOLDEN) & MASK64)


def pair_hash(base: int, a: int, b: int) -> int:
    """``mix64(mix64(base ^ fold(a)) + fold(b))``; ``base`` from :func:`seed_base`."""
    return mix64((mix64(base ^ fold64(a)) + fold64(b)) & MASK64)


def coin(seed: int, key: int, salt: int = 0) -> int:
    """One fair bit keyed by ``(seed, salt, key)``: the top bit of a mixed word."""
    return mix64((seed_base(seed ^ salt) + fold64(key)) & MASK64) >> 63


def derive_seed(master: int, index: int) -> int:
    """Per-sample seed ``mix(master, index)`` used by samplers."""
    return mix64((seed_base(master) ^ fold64(index)) + GOLDEN)


def short_int(n: int) -> str:
    """Decimal for ordinary integers, a size description for huge ones."""
    if abs(n) < (1 << 128):
        return str(n)
    return f"<{n.bit_length()}-bit integer>"


# ---------------------------------------------------------------------------
# integers <-> naturals
# ---------------------------------------------------------------------------


def int_to_vertex(z: int) -> int:
    """0 -> 0, k -> 2k-1, -k -> 2k."""
    if z > 0:
        return 2 * z - 1
    return -2 * z


def vertex_to_int(n: int) -> int:
    if n < 0:
        raise ValueError("vertex ids are non-negative")
    if n & 1:
        return (n + 1) // 2
    return -(n // 2)


int_bijection = int_to_vertex
int_bijection_inverse = vertex_to_int


# ---------------------------------------------------------------------------
# finite graphs
# ---------------------------------------------------------------------------


class FiniteGraph:
    """Graph on ``0..n-1`` stored as a symmetric, irreflexive boolean matrix."""

    __slots__ = ("n", "adjacency")

    def __init__(self, n: int, adjacency=None):
        if n < 0:
            raise ValueError("negative vertex count")
        self.n = n
        if adjacency is None:
            adjacency = np.zeros((n, n), dtype=bool)
        adj = np.asarray(adjacency, dtype=bool)
        if adj.shape != (n, n):
            raise ValueError(f"adjacency shape {adj.shape} does not match n={n}")
        if n and (adj.diagonal().any() or not np.array_equal(adj, adj.T)):
            raise ValueError("adjacency must be symmetric and irreflexive")
        self.adjacency = adj

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "FiniteGraph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u, v] = adj[v, u] = True
        return cls(n, adj)

    @classmethod
    def complete(cls, n: int) -> "FiniteGraph":
        adj = np.ones((n, n), dtype=bool)
        np.fill_diagonal(adj, False)
        return cls(n, adj)

    @classmethod
    def path(cls, n: int) -> "FiniteGraph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "FiniteGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def neighbours(self, u: int) -> list[int]:
        return [int(v) for v in np.nonzero(self.adjacency[u])[0]]

    def induced(self, vertices: Sequence[int]) -> "FiniteGraph":
        idx = np.asarray(list(vertices), dtype=np.intp)
        return FiniteGraph(len(idx), self.adjacency[np.ix_(idx, idx)])

    def relabel(self, perm: Sequence[int]) -> "FiniteGraph":
        """Graph whose vertex ``perm[i]`` plays the role of old vertex ``i``."""
        p = np.asarray(perm, dtype=np.intp)
        adj = np.zeros_like(self.adjacency)
        adj[np.ix_(p, p)] = self.adjacency
        return FiniteGraph(self.n, adj)

    def complement(self) -> "FiniteGraph":
        adj = ~self.adjacency
        np.fill_diagonal(adj, False)
        return FiniteGraph(self.n, adj)

    def is_isomorphic(self, other: "FiniteGraph") -> bool:
        """Brute-force isomorphism test, for the small graphs used in class specs."""
        if self.n != other.n or len(self.edges()) != len(other.edges()):
            return False
        da = sorted(self.adjacency.sum(axis=0).tolist())
        db = sorted(other.adjacency.sum(axis=0).tolist())
        if da != db:
            return False
        for perm in itertools.permutations(range(self.n)):
            p = np.asarray(perm, dtype=np.intp)
            if np.array_equal(self.adjacency[np.ix_(p, p)], other.adjacency):
                return True
        return False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adjacency, other.adjacency)

    def __repr__(self) -> str:
        return f"FiniteGraph(n={self.n}, edges={self.edges()})"

    # -- serialization -----------------------------------------------------

    def to_edge_list(self) -> str:
        return "\n".join(f"{u} {v}" for u, v in self.edges())

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {i};" for i in range(self.n)]
        lines += [f"  {u} -- {v};" for u, v in self.edges()]
        lines.append("}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteGraph":
        return cls.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])

    @classmethod
    def from_json(cls, text: str) -> "FiniteGraph":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_edge_list(cls, text: str, n: int | None = None) -> "FiniteGraph":
        """Parse ``"u v"`` lines.  Without ``n`` the vertex count is max id + 1."""
        edges = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls.from_edges(n, edges)

    @classmethod
    def load(cls, path: str) -> "FiniteGraph":
        with open(path) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return cls.from_json(text)
        return cls.from_edge_list(text)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessQuery:
    """Required neighbours ``U`` and required non-neighbours ``V``."""

    U: frozenset
    V: frozenset

    def __init__(self, U: Iterable[int] = (), V: Iterable[int] = ()):
        object.__setattr__(self, "U", frozenset(U))
        object.__setattr__(self, "V", frozenset(V))
        if self.U & self.V:
            raise PreconditionError(f"U and V overlap: {sorted(self.U & self.V)}")
        if any(x < 0 for x in self.U | self.V):
            raise PreconditionError("vertex ids are non-negative")

    @property
    def size(self) -> int:
        return len(self.U) + len(self.V)


class GraphOracle:
    """A deterministic countable graph on the natural numbers.

    Subclasses implement :meth:`_adj` for ``u < v``.  The default witness
    strategy is a linear scan (:meth:`least_joined`); constructions with a
    closed-form witness override :meth:`witness`.
    """

    name = "oracle"
    # True when least_joined is exact or compiled, so huge bounds are cheap
    fast_search = False

    def __init__(self, name: str | None = None, params: dict | None = None):
        if name is not None:
            self.name = name
        self.params = dict(params or {})

    # -- adjacency ---------------------------------------------------------

    def _adj(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def adjacent(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if u > v:
            u, v = v, u
        return bool(self._adj(u, v))

    def correctly_joined(self, z: int, U: Iterable[int], V: Iterable[int]) -> bool:
        return all(self.adjacent(z, u) for u in U) and not any(
            self.adjacent(z, v) for v in V
        )

    # -- witnesses ---------------------------------------------------------

    def witness(self, U: Iterable[int], V: Iterable[int], bound: int | None = None) -> int:
        """A vertex outside ``U | V`` adjacent to all of ``U`` and none of ``V``."""
        U, V = frozenset(U), frozenset(V)
        return self.least_joined(U, V, U | V, bound)

    def least_joined(
        self,
        U: Iterable[int],
        V: Iterable[int],
        exclude: Iterable[int] = (),
        bound: int | None = None,
    ) -> int:
        """Least vertex not in ``exclude`` (nor ``U | V``) correctly joined to (U, V).

        Scans candidates ``0 .. bound-1``.
        """
        U, V = list(U), list(V)
        skip = set(exclude) | set(U) | set(V)
        limit = DEFAULT_SEARCH_BOUND if bound is None else bound
        for z in range(limit):
            if z in skip:
                continue
            if self.correctly_joined(z, U, V):
                return z
        raise WitnessExhausted(
            f"{self.name}: no correctly joined vertex below {limit}"
        )

    def describe(self) -> str:
        if not self.params:
            return self.name
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args})"

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.describe()}>"


class FunctionOracle(GraphOracle):
    """Oracle from a plain adjacency predicate (called with ``u < v``)."""

    def __init__(self, name: str, adj: Callable[[int, int], bool], params: dict | None = None):
        super().__init__(name, params)
        self._fn = adj

    def _adj(self, u: int, v: int) -> bool:
        return self._fn(u, v)


def path_oracle() -> GraphOracle:
    return FunctionOracle("path", lambda u, v: v == u + 1)


def complete_oracle() -> GraphOracle:
    return FunctionOracle("complete", lambda u, v: True)


def empty_oracle() -> GraphOracle:
    return FunctionOracle("empty", lambda u, v: False)


def truncate(o: GraphOracle, n: int) -> FiniteGraph:
    """Induced subgraph of ``o`` on ``0..n-1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    adj = np.zeros((n, n), dtype=bool)
    for v in range(n):
        for u in range(v):
            if o.adjacent(u, v):
                adj[u, v] = adj[v, u] = True
    return FiniteGraph(n, adj)


# ---------------------------------------------------------------------------
# extension verifier
# ---------------------------------------------------------------------------


@dataclass
class QueryOutcome:
    U: tuple
    V: tuple
    status: str  # "pass" | "fail" | "exhausted"
    witness: int | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "U": list(self.U),
            "V": list(self.V),
            "status": self.status,
            "witness": self.witness,
            "detail": self.detail,
        }


@dataclass
class Report:
    subject: str
    outcomes: list[QueryOutcome] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(1 for o in self.outcomes if o.status == status)

    @property
    def passed(self) -> int:
        return self.count("pass")

    @property
    def failed(self) -> int:
        return self.count("fail")

    @property
    def exhausted(self) -> int:
        return self.count("exhausted")

    @property
    def ok(self) -> bool:
        return all(o.status == "pass" for o in self.outcomes)

    def summary(self) -> str:
        return (
            f"{self.subject}: {len(self.outcomes)} queries, {self.passed} pass, "
            f"{self.failed} fail, {self.exhausted} exhausted"
        )

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "queries": len(self.outcomes),
            "pass": self.passed,
            "fail": self.failed,
            "exhausted": self.exhausted,
            "ok": self.ok,
            "outcomes": [o.to_dict() for o in self.outcomes],
        }


def extension_queries(pool: Iterable[int], max_query_size: int) -> Iterator[tuple[tuple, tuple]]:
    """All disjoint ``(U, V)`` drawn from ``pool`` with ``|U| + |V| <= max_query_size``."""
    items = sorted(set(pool))
    for size in range(max_query_size + 1):
        for chosen in itertools.combinations(items, size):
            for mask in range(1 << size):
                U = tuple(x for i, x in enumerate(chosen) if mask >> i & 1)
                V = tuple(x for i, x in enumerate(chosen) if not mask >> i & 1)
                yield U, V


def check_witness(o: GraphOracle, U: Iterable[int], V: Iterable[int], z: int) -> str:
    """Empty string when ``z`` is a valid witness, else the reason it is not."""
    U, V = list(U), list(V)
    if z in U or z in V:
        return f"witness {z} lies in U|V"
    for u in U:
        if not o.adjacent(z, u):
            return f"witness {z} not adjacent to {u}"
    for v in V:
        if o.adjacent(z, v):
            return f"witness {z} adjacent to {v}"
    return ""


def verify_extension(
    o: GraphOracle,
    pool: Iterable[int],
    max_query_size: int,
    search_bound: int | None = None,
) -> Report:
    """Query ``o.witness`` for every small disjoint ``(U, V)`` over ``pool`` and check it."""
    if max_query_size < 1:
        raise PreconditionError("max_query_size must be at least 1")
    report = Report(o.describe())
    for U, V in extension_queries(pool, max_query_size):
        try:
            z = o.witness(U, V, search_bound)
        except WitnessExhausted as exc:
            report.outcomes.append(QueryOutcome(U, V, "exhausted", None, str(exc)))
            continue
        except UnsatisfiableQuery as exc:
            report.outcomes.append(QueryOutcome(U, V, "fail", None, str(exc)))
            continue
        reason = check_witness(o, U, V, z)
        report.outcomes.append(QueryOutcome(U, V, "fail" if reason else "pass", z, reason))
    return report
