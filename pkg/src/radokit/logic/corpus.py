"""A fixed set of graph sentences used by the zero-one experiments and tests.

Each entry is ``(name, text)``.  Negations are listed explicitly so the
experiments run on both members of every pair.
"""
from __future__ import annotations

from .decide import sigma
from .syntax import Formula, Not, parse_sentence

_BASE = [
    ("sigma11", str(sigma(1, 1))),
    ("sigma21", str(sigma(2, 1))),
    ("sigma12", str(sigma(1, 2))),
    ("sigma10", str(sigma(1, 0))),
    ("dominating", "exists x (forall y (!(x = y) -> (x ~ y)))"),
    ("isolated", "exists x (forall y !(x ~ y))"),
    ("has_edge", "exists x (exists y (x ~ y))"),
    ("has_triangle", "exists x (exists y (exists z ((x ~ y) & (y ~ z) & (x ~ z))))"),
    ("edges_in_triangles", "forall x (forall y ((x ~ y) -> exists z ((z ~ x) & (z ~ y))))"),
    ("diameter2", "forall x (forall y ((!(x = y) & !(x ~ y)) -> exists z ((z ~ x) & (z ~ y))))"),
    ("complete", "forall x (forall y (!(x = y) -> (x ~ y)))"),
    ("no_induced_p3",
     "forall x (forall y (forall z (((x ~ y) & (y ~ z) & !(x = z)) -> (x ~ z))))"),
    ("twins", "exists x (exists y (!(x = y) & forall z ((!(z = x) & !(z = y))"
              " -> (((z ~ x) -> (z ~ y)) & ((z ~ y) -> (z ~ x))))))"),
    ("common_non_neighbour",
     "forall x (forall y exists z (!(z = x) & !(z = y) & !(z ~ x) & !(z ~ y)))"),
]


def corpus(include_negations: bool = True) -> list[tuple[str, Formula]]:
    out = []
    for name, text in _BASE:
        f = parse_sentence(text)
        out.append((name, f))
        if include_negations:
            out.append(("not_" + name, Not(f)))
    return out


__all__ = ["corpus"]
