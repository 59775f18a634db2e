"""Truth in the random graph, the extension sentences and the zero-one harness."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from ..core import FiniteGraph, PreconditionError, derive_seed
from .evaluate import compile_sentence, eval_program, pack_rows
from .syntax import (
    Adj, And, Edge, Eq, Exists, Forall, Formula, Implies, Not, Or,
    UnboundVariableError, as_formula, conj, forall, free_vars,
)


def decide_R(s: "Formula | str") -> bool:
    """Truth of a sentence in the countable random graph.

    The state is a configuration: the finite graph spanned by the values of
    the variables in scope.  A quantified variable either coincides with one
    of those vertices or is a new vertex with some adjacency pattern to
    them.  Every pattern occurs in the random graph, and by homogeneity the
    truth of the body depends only on the configuration, so the recursion
    below is exact.
    """
    f = as_formula(s)
    free = free_vars(f)
    if free:
        raise UnboundVariableError(free)
    return _decide(f, {}, [])


def _decide(f: Formula, env: dict[str, int], rows: list[int]) -> bool:
    if isinstance(f, Adj):
        u, v = env[f.x], env[f.y]
        return u != v and bool(rows[u] >> v & 1)
    if isinstance(f, Eq):
        return env[f.x] == env[f.y]
    if isinstance(f, Edge):
        raise TypeError("hyperedge atoms have no meaning in a graph; translate first")
    if isinstance(f, Not):
        return not _decide(f.body, env, rows)
    if isinstance(f, And):
        return _decide(f.left, env, rows) and _decide(f.right, env, rows)
    if isinstance(f, Or):
        return _decide(f.left, env, rows) or _decide(f.right, env, rows)
    if isinstance(f, Implies):
        return (not _decide(f.left, env, rows)) or _decide(f.right, env, rows)
    want = isinstance(f, Exists)  # the value that settles the quantifier
    k = len(rows)
    inner = dict(env)
    for i in range(k):
        inner[f.var] = i
        if _decide(f.body, inner, rows) == want:
            return want
    inner[f.var] = k
    for pattern in range(1 << k):
        grown = [r | ((pattern >> j & 1) << k) for j, r in enumerate(rows)]
        grown.append(pattern)
        if _decide(f.body, inner, grown) == want:
            return want
    return not want


def sigma(m: int, n: int, distinct_z: bool = True, bare_antecedent: bool = False) -> Formula:
    """The extension sentence for ``m`` neighbours and ``n`` non-neighbours.

    ``forall u1..um v1..vn (distinct -> exists z (z ~ ui & !(z ~ vj) & ...))``.
    By default the antecedent asks all ``m + n`` variables to be pairwise
    distinct and ``z`` must differ from each of them.  ``bare_antecedent`` keeps
    only the ``ui != vj`` antecedent; ``distinct_z=False`` drops the
    ``z != .`` conjuncts.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise PreconditionError("sigma needs m, n >= 0 and m + n >= 1")
    us = [f"u{i}" for i in range(1, m + 1)]
    vs = [f"v{j}" for j in range(1, n + 1)]
    names = us + vs
    if bare_antecedent:
        pairs = [(u, v) for u in us for v in vs]
    else:
        pairs = [(names[i], names[j]) for i in range(len(names)) for j in range(i + 1, len(names))]
    body: list[Formula] = [Adj("z", u) for u in us] + [Not(Adj("z", v)) for v in vs]
    if distinct_z:
        body += [Not(Eq("z", w)) for w in names]
    consequent = Exists("z", conj(body))
    if pairs:
        consequent = Implies(conj([Not(Eq(a, b)) for a, b in pairs]), consequent)
    return forall(names, consequent)


def random_graph(N: int, p: float, rng: np.random.Generator) -> FiniteGraph:
    upper = np.triu(rng.random((N, N)) < p, 1)
    return FiniteGraph(N, upper | upper.T)


def sample_graph(seed: int, i: int, N: int, p: float = 0.5) -> FiniteGraph:
    """The ``i``-th graph drawn by :func:`mc_zero_one` for ``seed``."""
    return random_graph(N, p, np.random.default_rng(derive_seed(seed, i)))


def mc_zero_one(s: "Formula | str", N: int, samples: int, seed: int = 0, p: float = 0.5,
                workers: int | None = None) -> float:
    """Fraction of ``samples`` independent G(N, p) graphs satisfying ``s``.

    Sample ``i`` draws from its own generator seeded by
    ``derive_seed(seed, i)``, so the result does not depend on ``workers``.
    """
    if N < 1 or samples < 1:
        raise PreconditionError("need N >= 1 and samples >= 1")
    if not 0.0 <= p <= 1.0:
        raise PreconditionError("edge probability must lie in [0, 1]")
    prog = compile_sentence(s)

    def one(i: int) -> bool:
        g = sample_graph(seed, i, N, p)
        return eval_program(prog, g, pack_rows(g))

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            hits = sum(pool.map(one, range(samples)))
    else:
        hits = sum(one(i) for i in range(samples))
    return hits / samples


def failure_bound(m: int, n: int, N: int) -> float:
    """Upper bound on the probability that G(N, 1/2) violates ``sigma(m, n)``."""
    k = m + n
    if N <= k:
        return 1.0
    return min(1.0, N ** k * (1.0 - 0.5 ** k) ** (N - k))


def decide_corpus(sentences: Sequence["Formula | str"]) -> list[bool]:
    return [decide_R(s) for s in sentences]


__all__ = [
    "decide_R",
    "decide_corpus",
    "failure_bound",
    "mc_zero_one",
    "random_graph",
    "sample_graph",
    "sigma",
]
