"""Evaluation of sentences on finite graphs.

Two evaluators share the same semantics:

* :func:`eval_naive` walks the AST and enumerates every quantifier over all
  vertices.  It is short and obviously correct, and it also accepts free
  variables through an assignment.
* :func:`eval_finite` compiles a sentence to a flat program and runs it in
  the bit-parallel kernel.  Innermost quantifiers are evaluated for all
  values of one variable at once, as a bitset, and existential bodies are
  split into the conjuncts that mention only the outer variable, only the
  bound variable, or both, so candidates are pruned before any loop.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..core import FiniteGraph
from .. import kernels
from .syntax import (
    Adj, And, Edge, Eq, Exists, Forall, Formula, Implies, Not, Or,
    UnboundVariableError, as_formula, conj, free_vars,
)

ADJ, EQ, NOT, AND, OR, IMP, SALL, SEX, VEX, LIT = range(10)
_LIT_CODES = {(Adj, True): 1, (Adj, False): 2, (Eq, False): 4, (Eq, True): 8}


def eval_naive(f: "Formula | str", g: FiniteGraph,
               assignment: Mapping[str, int] | None = None) -> bool:
    """Tarski semantics by direct enumeration."""
    f = as_formula(f) if isinstance(f, str) else f
    env = dict(assignment or {})
    missing = free_vars(f) - set(env)
    if missing:
        raise UnboundVariableError(missing)
    adj = g.adjacency
    n = g.n

    def ev(h: Formula) -> bool:
        if isinstance(h, Adj):
            u, v = env[h.x], env[h.y]
            return u != v and bool(adj[u, v])
        if isinstance(h, Eq):
            return env[h.x] == env[h.y]
        if isinstance(h, Edge):
            raise TypeError("hyperedge atoms need a hypergraph; see eval_hyper")
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
        for a in range(n):
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


# ---------------------------------------------------------------------------
# compiler
# ---------------------------------------------------------------------------


@dataclass
class Program:
    """Flat node arrays read by the kernel; ``root`` is a scalar node."""

    op: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    mode: np.ndarray
    nvars: int
    root: int

    def __len__(self) -> int:
        return len(self.op)


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _negated_conjuncts(f: Formula) -> list[Formula]:
    """Conjuncts whose conjunction is equivalent to ``!f``."""
    if isinstance(f, Implies):
        return _conjuncts(f.left) + _negated_conjuncts(f.right)
    if isinstance(f, Or):
        return _negated_conjuncts(f.left) + _negated_conjuncts(f.right)
    if isinstance(f, Not):
        return _conjuncts(f.body)
    return [Not(f)]


class _Compiler:
    def __init__(self) -> None:
        self.rows: list[tuple[int, int, int, int, int, int]] = []
        self.nvars = 0

    def emit(self, op: int, a: int = -1, b: int = -1, c: int = -1, d: int = -1,
             mode: int = 0) -> int:
        self.rows.append((op, a, b, c, d, mode))
        return len(self.rows) - 1

    def fresh(self) -> int:
        self.nvars += 1
        return self.nvars - 1

    @staticmethod
    def slots(f: Formula, scope: dict[str, int]) -> set[int]:
        return {scope[v] for v in free_vars(f)}

    def node(self, f: Formula, scope: dict[str, int], x: int | None) -> int:
        """Compile ``f``; when ``x`` is free in it the node is a bitset over ``x``."""
        vec = x is not None and x in self.slots(f, scope)
        mode = int(vec)
        if isinstance(f, Adj):
            return self.emit(ADJ, scope[f.x], scope[f.y], mode=mode)
        if isinstance(f, Eq):
            return self.emit(EQ, scope[f.x], scope[f.y], mode=mode)
        if isinstance(f, Edge):
            raise TypeError("hyperedge atoms cannot be compiled for graphs; translate first")
        if isinstance(f, Not):
            return self.emit(NOT, self.node(f.body, scope, x), mode=mode)
        if isinstance(f, (And, Or, Implies)):
            op = {And: AND, Or: OR, Implies: IMP}[type(f)]
            left = self.node(f.left, scope, x)
            right = self.node(f.right, scope, x)
            return self.emit(op, left, right, mode=mode)
        v = self.fresh()
        inner = {**scope, f.var: v}
        if not vec:
            body = self.node(f.body, inner, v)
            return self.emit(SALL if isinstance(f, Forall) else SEX, v, body)
        # quantifier under a vector variable: split the existential body
        if isinstance(f, Exists):
            return self.vex(_conjuncts(f.body), inner, x, v)
        return self.emit(NOT, self.vex(_negated_conjuncts(f.body), inner, x, v), mode=1)

    def vex(self, parts: list[Formula], scope: dict[str, int], x: int, v: int) -> int:
        H, G, R = [], [], []
        for p in parts:
            s = self.slots(p, scope)
            if v not in s:
                H.append(p)
            elif x not in s:
                G.append(p)
            else:
                R.append(p)
        h = self.node(conj(H), scope, x) if H else -1
        g = self.node(conj(G), scope, v) if G else -1
        code = self.literal_code(R, scope, x, v)
        if code is not None:
            r = self.emit(LIT, v, code, mode=1)
        else:
            r = self.node(conj(R), scope, x) if R else -1
        return self.emit(VEX, v, h, g, r, mode=1)

    @staticmethod
    def literal_code(parts: list[Formula], scope: dict[str, int], x: int, v: int) -> int | None:
        """Bit code when ``parts`` are atoms or negated atoms joining ``v`` and ``x``."""
        if not parts:
            return None
        code = 0
        for p in parts:
            positive = not isinstance(p, Not)
            atom = p if positive else p.body
            if not isinstance(atom, (Adj, Eq)):
                return None
            if {scope[atom.x], scope[atom.y]} != {x, v}:
                return None
            code |= _LIT_CODES[(type(atom), positive)]
        return code


def compile_sentence(s: "Formula | str") -> Program:
    f = as_formula(s)
    free = free_vars(f)
    if free:
        raise UnboundVariableError(free)
    comp = _Compiler()
    root = comp.node(f, {}, None)
    cols = list(zip(*comp.rows))
    arr = [np.ascontiguousarray(c, dtype=np.int32) for c in cols]
    return Program(*arr, nvars=comp.nvars, root=root)


def pack_rows(g: FiniteGraph) -> np.ndarray:
    """Adjacency rows as little-endian bitsets, ``uint64[n][ceil(n/64)]``."""
    n = g.n
    W = max(1, (n + 63) // 64)
    if n == 0:
        return np.zeros((1, 1), dtype=np.uint64)
    bits = np.zeros((n, W * 64), dtype=bool)
    bits[:, :n] = g.adjacency
    packed = np.packbits(bits, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(n, W)


def eval_program(prog: Program, g: FiniteGraph, rows: np.ndarray | None = None) -> bool:
    if rows is None:
        rows = pack_rows(g)
    return kernels.eval_program(prog, rows, g.n)


def eval_finite(s: "Formula | str", g: FiniteGraph) -> bool:
    """Truth of the sentence ``s`` in ``g`` (adjacency is irreflexive)."""
    return eval_program(compile_sentence(s), g)


def all_graphs(n: int):
    """Every labelled graph on ``n`` vertices (``2**(n choose 2)`` of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield FiniteGraph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])


__all__ = [
    "Program",
    "all_graphs",
    "compile_sentence",
    "eval_finite",
    "eval_naive",
    "eval_program",
    "pack_rows",
]
