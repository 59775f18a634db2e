"""Compiled kernels against the numpy/pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Each workload is run on both backends; results are checked for equality
before timing is reported.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from radokit import FiniteGraph, _fallback
from radokit.core import seed_base
from radokit.logic import compile_sentence, pack_rows, sigma

try:
    from radokit import _kernels
except ImportError:
    sys.exit("compiled kernels not built; run: python3 setup.py build_ext --inplace")


def workloads():
    base = seed_base(17)
    # enough constraints that the scan usually runs to the end of its range
    ws = np.arange(24, dtype=np.uint64)
    wflags = np.asarray([1, 0] * 12, dtype=np.uint8)
    nbits = 1 << 20
    table = _fallback.concat_table(nbits)
    xs = np.arange(-12, 12, dtype=np.int64)
    xflags = np.asarray([1, 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1] * 2, dtype=np.uint8)
    qs = np.asarray([5, 13, 17, 29, 37, 41, 53, 61, 73], dtype=np.uint64)
    qflags = np.asarray([1, 0, 1, 1, 0, 0, 1, 0, 1], dtype=np.uint8)
    rng = np.random.default_rng(0)
    upper = np.triu(rng.random((200, 200)) < 0.5, 1)
    g = FiniteGraph(200, upper | upper.T)
    rows = pack_rows(g)
    prog = compile_sentence(sigma(2, 1))
    return [
        ("seeded_scan (24 constraints, 2^22)",
         lambda m: m.seeded_scan(base, 0, 1 << 22, ws, wflags, ws)),
        ("concat_table (2^22 bits)", lambda m: m.concat_table(1 << 22)),
        ("random_table (2^22 bits)", lambda m: m.random_table(base, 1 << 22)),
        ("shift_scan (24 constraints, 2^21)",
         lambda m: m.shift_scan(table, nbits, 0, 2 * (nbits - 32), xs, xflags, xs)),
        ("prime_scan (9 residues)", lambda m: m.prime_scan(5, 1 << 62, qs, qflags)),
        ("count_primes_1mod4 (10^7)", lambda m: m.count_primes_1mod4(10**7)),
        ("sumfree_members (20000)", lambda m: m.sumfree_members(base, 20000)),
        ("eval_program (sigma21, G(200))", lambda m: m.eval_program(prog, rows, 200)),
    ]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def same(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for name, work in workloads():
        tc, rc = best_of(lambda: work(_kernels), args.repeat)
        tf, rf = best_of(lambda: work(_fallback), max(1, args.repeat // 3))
        if not same(rc, rf):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        rows.append({"kernel": name, "compiled_s": tc, "fallback_s": tf, "speedup": tf / tc})

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"| kernel | {_kernels.BACKEND} (ms) | {_fallback.BACKEND} (ms) | speedup |")
    print("|---|---:|---:|---:|")
    for r in rows:
        print(f"| {r['kernel']} | {1e3 * r['compiled_s']:.2f} | {1e3 * r['fallback_s']:.1f} | {r['speedup']:.1f}x |")
    return 0


if __name__ == "__main__":
    sys.exit(main())
