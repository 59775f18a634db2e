"""Partial isomorphisms between oracles: one-point extension, back-and-forth,
forth-only and spanning embeddings, and finite-cycle automorphisms.

Every choice is least-index: the image of a new point is the smallest
vertex outside the current range that is joined correctly to the images of
its neighbours and non-neighbours.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_SEARCH_BOUND, GraphOracle, PreconditionError, RadoError, WitnessExhausted


# Witnesses for a support of about 30 vertices in a random-looking graph sit
# near 2**30, far past the verifier's default bound.
ISO_SEARCH_BOUND = 1 << 40


def _iso_bound(bound: int | None, *oracles: GraphOracle) -> int:
    if bound is not None:
        return bound
    if all(o.fast_search for o in oracles):
        return ISO_SEARCH_BOUND
    return DEFAULT_SEARCH_BOUND


class CycleClosureFailure(WitnessExhausted):
    """An orbit could not be closed within the allowed cycle length."""


@dataclass
class PartialMap:
    """Finite injective map, kept as the ordered list of pairs it was built from."""

    pairs: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self._fwd: dict[int, int] = {}
        self._bwd: dict[int, int] = {}
        pairs, self.pairs = list(self.pairs), []
        for x, y in pairs:
            self.add(x, y)

    def add(self, x: int, y: int) -> None:
        if x in self._fwd:
            raise ValueError(f"{x} is already mapped")
        if y in self._bwd:
            raise ValueError(f"{y} is already an image")
        self._fwd[x] = y
        self._bwd[y] = x
        self.pairs.append((x, y))

    def __len__(self) -> int:
        return len(self.pairs)

    def __call__(self, x: int) -> int:
        return self._fwd[x]

    def inverse(self, y: int) -> int:
        return self._bwd[y]

    @property
    def domain(self) -> set[int]:
        return set(self._fwd)

    @property
    def range(self) -> set[int]:
        return set(self._bwd)

    def covers_prefix(self, n: int) -> bool:
        return set(range(n)) <= self.domain and set(range(n)) <= self.range

    def cycles(self) -> list[list[int]]:
        """Cycles of a permutation (requires domain == range)."""
        if self.domain != self.range:
            raise ValueError("not a permutation: domain and range differ")
        seen: set[int] = set()
        out = []
        for x, _ in self.pairs:
            if x in seen:
                continue
            cyc = [x]
            seen.add(x)
            y = self._fwd[x]
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = self._fwd[y]
            out.append(cyc)
        return out

    def to_dict(self) -> dict:
        return {"pairs": [[x, y] for x, y in self.pairs]}

    @classmethod
    def from_dict(cls, data: dict) -> "PartialMap":
        return cls([(int(x), int(y)) for x, y in data["pairs"]])


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def violations(f: PartialMap, src: GraphOracle, tgt: GraphOracle, mode: str = "induced",
               limit: int = 10) -> list[str]:
    """Pairs breaking the map's contract.

    ``induced``  adjacency and non-adjacency both preserved
    ``spanning`` source edges go to target edges
    """
    if mode not in ("induced", "spanning"):
        raise ValueError(f"unknown mode {mode!r}")
    bad = []
    pairs = f.pairs
    for i in range(len(pairs)):
        x, y = pairs[i]
        for j in range(i):
            x2, y2 = pairs[j]
            a = src.adjacent(x, x2)
            b = tgt.adjacent(y, y2)
            if a != b and (mode == "induced" or a):
                bad.append(f"({x},{x2}) -> ({y},{y2}): source {int(a)}, target {int(b)}")
                if len(bad) >= limit:
                    return bad
    return bad


def verify_map(f: PartialMap, src: GraphOracle, tgt: GraphOracle, mode: str = "induced",
               prefix: int | None = None) -> dict:
    """Summary block stored next to serialized maps."""
    injective = len(f.domain) == len(f) == len(f.range)
    bad = violations(f, src, tgt, mode)
    out = {
        "source": src.describe(),
        "target": tgt.describe(),
        "mode": mode,
        "size": len(f),
        "injective": injective,
        "violations": bad,
        "ok": injective and not bad,
    }
    if prefix is not None:
        out["covers_prefix"] = prefix
        out["prefix_ok"] = f.covers_prefix(prefix)
        out["ok"] = out["ok"] and out["prefix_ok"]
    return out


def map_to_json(f: PartialMap, summary: dict | None = None) -> str:
    data = f.to_dict()
    if summary is not None:
        data["verification"] = summary
    return json.dumps(data, default=str)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def extend_one_point(src: GraphOracle, tgt: GraphOracle, f: PartialMap, x: int,
                     bound: int | None = None) -> PartialMap:
    """Append ``(x, z)`` with ``z`` the least fresh target vertex joined like ``x``."""
    bound = _iso_bound(bound, tgt)
    if x in f.domain:
        raise PreconditionError(f"{x} is already in the domain")
    U, V = [], []
    for d, img in f.pairs:
        (U if src.adjacent(x, d) else V).append(img)
    z = tgt.least_joined(U, V, f.range, bound)
    f.add(x, z)
    return f


def _extend_back(src: GraphOracle, tgt: GraphOracle, f: PartialMap, y: int,
                 bound: int | None) -> None:
    bound = _iso_bound(bound, src)
    U, V = [], []
    for d, img in f.pairs:
        (U if tgt.adjacent(y, img) else V).append(d)
    z = src.least_joined(U, V, f.domain, bound)
    f.add(z, y)


def _least_missing(s: set[int]) -> int:
    i = 0
    while i in s:
        i += 1
    return i


def back_and_forth(o1: GraphOracle, o2: GraphOracle, rounds: int,
                   bound: int | None = None) -> PartialMap:
    """Even rounds map the least unmapped ``o1`` vertex, odd rounds cover the
    least uncovered ``o2`` vertex."""
    bound = _iso_bound(bound, o1, o2)
    f = PartialMap()
    for r in range(rounds):
        if r % 2 == 0:
            extend_one_point(o1, o2, f, _least_missing(f.domain), bound)
        else:
            _extend_back(o1, o2, f, _least_missing(f.range), bound)
    return f


def forth_embed(src: GraphOracle, tgt: GraphOracle, n: int,
                bound: int | None = None) -> PartialMap:
    """Embed ``src`` vertices ``0..n-1`` as an induced subgraph of ``tgt``."""
    bound = _iso_bound(bound, tgt)
    f = PartialMap()
    for x in range(n):
        extend_one_point(src, tgt, f, x, bound)
    return f


def spanning_embed(src: GraphOracle, tgt: GraphOracle, rounds: int,
                   bound: int | None = None) -> PartialMap:
    """Back-and-forth in which backward steps only keep source edges on target
    edges; the source becomes a spanning subgraph of the target prefix."""
    bound = _iso_bound(bound, src, tgt)
    f = PartialMap()
    for r in range(rounds):
        if r % 2 == 0:
            extend_one_point(src, tgt, f, _least_missing(f.domain), bound)
            continue
        y = _least_missing(f.range)
        # the new source vertex may only touch d when y touches f(d)
        V = [d for d, img in f.pairs if not tgt.adjacent(y, img)]
        try:
            z = src.least_joined([], V, f.domain, bound)
        except WitnessExhausted as exc:
            raise PreconditionError(
                f"{src.describe()} has no vertex joined to none of {sorted(V)}: {exc}"
            ) from None
        f.add(z, y)
    return f


# ---------------------------------------------------------------------------
# automorphisms with finite cycles
# ---------------------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _pattern_period(o: GraphOracle, a: int, f: PartialMap) -> int:
    """Least ``p`` with ``adj(a, s) == adj(a, f^p(s))`` on the support (lcm over cycles)."""
    period = 1
    for cyc in f.cycles():
        bits = [o.adjacent(a, s) for s in cyc]
        n = len(bits)
        for p in _divisors(n):
            if all(bits[i] == bits[(i + p) % n] for i in range(n)):
                break
        period = period * p // math.gcd(period, p)
    return period


def generic_automorphism(o: GraphOracle, rounds: int, max_cycle: int = 12,
                         bound: int | None = None, seed: int = 0) -> PartialMap:
    """A finite permutation of a finite support that is an automorphism of the
    induced subgraph, grown orbit by orbit.

    Each orbit starts at the least uncovered vertex ``a_0`` and is extended by
    least fresh witnesses ``a_0 -> a_1 -> ...``.  The orbit length ``n`` must
    be a multiple of the period of ``a_0``'s adjacency pattern along the
    cycles already built; a target length is drawn (using ``seed``) among the
    divisors of ``max_cycle`` that fit the remaining budget, and ``n`` is the
    least admissible length at or above it.  The adjacency of ``a_d`` to
    ``a_0`` is free for ``d <= n/2`` and mirrored above, which keeps the
    closing step ``a_{n-1} -> a_0`` consistent.  Closure is attempted after
    every extension once the orbit reaches its target length.

    ``rounds`` bounds the number of pairs (the support size); growth stops
    when the next orbit would not fit.
    """
    bound = _iso_bound(bound, o)
    if rounds < 0 or max_cycle < 1:
        raise PreconditionError("rounds must be >= 0 and max_cycle >= 1")
    rng = np.random.default_rng(seed)
    allowed = _divisors(max_cycle)
    f = PartialMap()
    while len(f) < rounds:
        remaining = rounds - len(f)
        a0 = _least_missing(f.domain)
        period = _pattern_period(o, a0, f)
        if max_cycle % period:
            raise CycleClosureFailure(
                f"vertex {a0} needs a cycle length divisible by {period}, above max_cycle"
            )
        fits = [d for d in allowed if d % period == 0 and d <= remaining]
        if not fits:
            if f.pairs:
                break  # budget spent
            raise CycleClosureFailure(f"no admissible cycle length for vertex {a0}")
        target = int(rng.choice([d for d in allowed if d <= remaining]))
        n = next((d for d in fits if d >= target), fits[-1])
        orbit = [a0]
        support_pairs = list(f.pairs)
        t: dict[int, bool] = {}
        while True:
            if len(orbit) >= min(target, n) and n % len(orbit) == 0 \
                    and len(orbit) % period == 0 and _closes(o, f, orbit):
                break
            if len(orbit) >= n:
                raise CycleClosureFailure(f"orbit of {a0} did not close at length {n}")
            i = len(orbit) - 1
            d = i + 1  # position of the new vertex in the orbit
            U, V = [], []
            for s, gs in support_pairs:
                (U if o.adjacent(orbit[i], s) else V).append(gs)
            for j in range(i):
                (U if o.adjacent(orbit[i], orbit[j]) else V).append(orbit[j + 1])
            if n - d < d:
                (U if t[n - d] else V).append(a0)
                z = o.least_joined(U, V, f.domain | set(orbit), bound)
            else:
                z = o.least_joined(U, V, f.domain | set(orbit) | {a0}, bound)
            t[d] = o.adjacent(z, a0)
            orbit.append(z)
        for k, x in enumerate(orbit):
            f.add(x, orbit[(k + 1) % len(orbit)])
    return f


def _closes(o: GraphOracle, f: PartialMap, orbit: list[int]) -> bool:
    """Would ``orbit[-1] -> orbit[0]`` keep the map a partial automorphism?"""
    a0, last = orbit[0], orbit[-1]
    for s, gs in f.pairs:
        if o.adjacent(last, s) != o.adjacent(a0, gs):
            return False
    for j in range(len(orbit) - 1):
        if o.adjacent(last, orbit[j]) != o.adjacent(a0, orbit[j + 1]):
            return False
    return True


def cycle_histogram(f: PartialMap) -> dict[int, int]:
    hist: dict[int, int] = {}
    for c in f.cycles():
        hist[len(c)] = hist.get(len(c), 0) + 1
    return dict(sorted(hist.items()))


__all__ = [
    "CycleClosureFailure",
    "ISO_SEARCH_BOUND",
    "PartialMap",
    "RadoError",
    "back_and_forth",
    "cycle_histogram",
    "extend_one_point",
    "forth_embed",
    "generic_automorphism",
    "map_to_json",
    "spanning_embed",
    "verify_map",
    "violations",
]
