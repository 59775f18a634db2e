"""Least integers with prescribed bits, for the bit-encoded constructions.

Both the binary encoding and the closure chain decide adjacency by reading
one bit of an integer.  For a candidate ``r`` the constraints come in two
flavours:

* fixed bits of ``r`` itself (``r`` is the larger endpoint), and
* bit ``r + offset`` of some other word (``r`` is the smaller endpoint).

The search below is exact: it returns the least ``r`` in a half-open
interval satisfying every constraint, without scanning candidates one by one.
"""
from __future__ import annotations

import numpy as np

from .core import Unrepresentable, short_int

# Largest bit position we are willing to materialize (256 MiB integers are
# not useful; 2**26 bits = 8 MiB).
BIT_LIMIT = 1 << 26


def next_match(x: int, mask: int, val: int) -> int:
    """Least ``y >= x`` with ``y & mask == val`` (``val`` must lie inside ``mask``)."""
    bad = (x ^ val) & mask
    if not bad:
        return x
    h = bad.bit_length() - 1
    if not (x >> h) & 1:
        # raise bit h from 0 to 1: keep the prefix above h, lowest completion below
        return (x >> (h + 1) << (h + 1)) | (val & ((1 << (h + 1)) - 1))
    # bit h must drop to 0: carry into the lowest free zero above h
    free = (~x & ~mask) >> (h + 1)
    p = (free & -free).bit_length() - 1 + h + 1
    return (x >> (p + 1) << (p + 1)) | (1 << p) | (val & ((1 << p) - 1))


def set_bits(word: int) -> np.ndarray:
    """Positions of the one bits of a non-negative integer, ascending."""
    if word == 0:
        return np.zeros(0, dtype=np.int64)
    raw = np.frombuffer(word.to_bytes((word.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.nonzero(np.unpackbits(raw, bitorder="little"))[0].astype(np.int64)


def least_bits(
    lo: int,
    hi: int | None,
    fixed: dict[int, bool],
    uppers: list[tuple[int, int, bool]],
) -> int | None:
    """Least ``r`` in ``[lo, hi)`` with ``bit_p(r) == fixed[p]`` and
    ``bit_{r+off}(word) == flag`` for every ``(word, off, flag)`` in ``uppers``.

    ``hi=None`` means unbounded.  Returns ``None`` when the interval holds no
    solution and raises :class:`Unrepresentable` when the least solution has
    more than ``BIT_LIMIT`` bits.
    """
    if hi is not None and lo >= hi:
        return None
    cap = None if hi is None else (hi - 1).bit_length()
    mask = val = 0
    for p, flag in fixed.items():
        if cap is not None and p >= cap:
            if flag:
                return None  # r < hi cannot reach bit p
            continue
        if p >= BIT_LIMIT:
            if flag:
                raise Unrepresentable(f"least solution needs bit {short_int(p)}")
            continue
        mask |= 1 << p
        if flag:
            val |= 1 << p

    def uppers_ok(r: int) -> bool:
        return all(((word >> (r + off)) & 1) == flag for word, off, flag in uppers)

    ones = [(word, off) for word, off, flag in uppers if flag]
    if ones:
        # r + off must be a one bit of every such word: walk the sparsest
        word, off = min(ones, key=lambda t: t[0].bit_count())
        for p in set_bits(word).tolist():
            r = p - off
            if r < lo:
                continue
            if hi is not None and r >= hi:
                break
            if (r & mask) == val and uppers_ok(r):
                return r
        return None
    r = next_match(lo, mask, val)
    while hi is None or r < hi:
        if uppers_ok(r):
            return r
        r = next_match(r + 1, mask, val)
    return None
