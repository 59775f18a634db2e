"""Hypergraphs derived from a graph and a family of finite graphs, and the
translation of hypergraph sentences into graph sentences."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..core import FiniteGraph, PreconditionError
from .syntax import (
    Adj, And, ArityError, Edge, Eq, Exists, Forall, Formula, Implies, Not, Or,
    UnboundVariableError, as_formula, conj, disj, edge_arities, free_vars,
)


@dataclass
class Hypergraph:
    n: int
    edges: list[frozenset] = field(default_factory=list)

    def __post_init__(self):
        seen, out = set(), []
        for e in self.edges:
            e = frozenset(e)
            if not e:
                raise ValueError("hyperedges must be non-empty")
            if any(not 0 <= v < self.n for v in e):
                raise ValueError(f"hyperedge {sorted(e)} leaves 0..{self.n - 1}")
            if e not in seen:
                seen.add(e)
                out.append(e)
        self.edges = out
        self._set = seen

    def has_edge(self, vertices) -> bool:
        return frozenset(vertices) in self._set

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [sorted(e) for e in self.edges]}


def canonical_form(g: FiniteGraph) -> tuple:
    """Lexicographically least upper-triangle bit string over all relabelings."""
    n = g.n
    adj = g.adjacency
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(bool(adj[perm[i], perm[j]]) for i in range(n) for j in range(i + 1, n))
        if best is None or key < best:
            best = key
    return (n, best or ())


def derived_hypergraph(F: Sequence[FiniteGraph], g: FiniteGraph) -> Hypergraph:
    """Hyperedges are the vertex sets of ``g`` inducing a graph isomorphic to a member of ``F``."""
    if any(h.n < 1 for h in F):
        raise PreconditionError("members of the family must be non-empty")
    forms: dict[int, set] = {}
    for h in F:
        forms.setdefault(h.n, set()).add(canonical_form(h))
    edges = []
    for k in sorted(forms):
        for S in itertools.combinations(range(g.n), k):
            if canonical_form(g.induced(list(S))) in forms[k]:
                edges.append(frozenset(S))
    return Hypergraph(g.n, edges)


def eval_hyper(hs: "Formula | str", H: Hypergraph,
               assignment: Mapping[str, int] | None = None) -> bool:
    """Brute-force truth of a sentence built from ``E(...)`` and ``=`` atoms."""
    f = as_formula(hs) if isinstance(hs, str) else hs
    env = dict(assignment or {})
    missing = free_vars(f) - set(env)
    if missing:
        raise UnboundVariableError(missing)

    def ev(h: Formula) -> bool:
        if isinstance(h, Edge):
            vals = [env[a] for a in h.args]
            return len(set(vals)) == len(vals) and H.has_edge(vals)
        if isinstance(h, Eq):
            return env[h.x] == env[h.y]
        if isinstance(h, Adj):
            raise TypeError("adjacency atoms have no meaning in a hypergraph")
        if isinstance(h, Not):
            return not ev(h.body)
        if isinstance(h, And):
            return ev(h.left) and ev(h.right)
        if isinstance(h, Or):
            return ev(h.left) or ev(h.right)
        if isinstance(h, Implies):
            return (not ev(h.left)) or ev(h.right)
        saved = env.get(h.var)
        want_all = isinstance(h, Forall)
        result = want_all
        for a in range(H.n):
            env[h.var] = a
            if ev(h.body) != want_all:
                result = not want_all
                break
        if saved is None:
            env.pop(h.var, None)
        else:
            env[h.var] = saved
        return result

    return ev(f)


def _merge_terms(terms: set[frozenset]) -> set[frozenset]:
    """Merge terms (sets of (pair, value) literals) differing in one value until stable."""
    terms = set(terms)
    changed = True
    while changed:
        changed = False
        for a in list(terms):
            for lit in a:
                pair, val = lit
                b = (a - {lit}) | {(pair, not val)}
                if b in terms:
                    terms -= {a, b}
                    terms.add(a - {lit})
                    changed = True
                    break
            if changed:
                break
    # drop terms implied by (i.e. supersets of) other terms
    return {t for t in terms if not any(o < t for o in terms)}


def edge_formula(args: Sequence[str], F: Sequence[FiniteGraph]) -> Formula:
    """Graph formula equivalent to ``E(args)`` for the family ``F``."""
    k = len(args)
    members = [h for h in F if h.n == k]
    if not members:
        raise ArityError(f"no member of the family has {k} vertices")
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    terms = set()
    for h in members:
        for perm in itertools.permutations(range(k)):
            terms.add(frozenset(((i, j), bool(h.adjacency[perm[i], perm[j]])) for i, j in pairs))
    terms = _merge_terms(terms)
    # x ~ y already forces x != y
    distinct = [Not(Eq(args[i], args[j])) for i, j in pairs
                if not all(((i, j), True) in t for t in terms)]
    disjuncts = []
    for t in sorted(terms, key=lambda t: sorted(t)):
        lits = [Adj(args[i], args[j]) if v else Not(Adj(args[i], args[j]))
                for (i, j), v in sorted(t)]
        disjuncts.append(lits)
    if any(not d for d in disjuncts):
        body = None  # some disjunct is unconditional
    else:
        body = disj([conj(d) for d in disjuncts])
    parts = distinct + ([body] if body is not None else [])
    if not parts:
        return Eq(args[0], args[0])
    return conj(parts)


def translate(hs: "Formula | str", F: Sequence[FiniteGraph]) -> Formula:
    """Replace every ``E(x1..xk)`` atom by the induced-subgraph disjunction over ``F``."""
    f = as_formula(hs) if isinstance(hs, str) else hs
    for k in edge_arities(f):
        if not any(h.n == k for h in F):
            raise ArityError(f"edge atoms of arity {k} but no member of the family has {k} vertices")

    def tr(h: Formula) -> Formula:
        if isinstance(h, Edge):
            return edge_formula(h.args, F)
        if isinstance(h, Adj):
            raise TypeError("hypergraph sentences use E(...) atoms, not adjacency")
        if isinstance(h, Eq):
            return h
        if isinstance(h, Not):
            return Not(tr(h.body))
        if isinstance(h, (And, Or, Implies)):
            return type(h)(tr(h.left), tr(h.right))
        return type(h)(h.var, tr(h.body))

    return tr(f)


__all__ = [
    "Hypergraph",
    "canonical_form",
    "derived_hypergraph",
    "edge_formula",
    "eval_hyper",
    "translate",
]
