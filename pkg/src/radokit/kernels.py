"""Hot-loop backend, chosen once at import.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded.  Set ``RADOKIT_BACKEND=python`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _fallback

if os.environ.get("RADOKIT_BACKEND", "").lower() == "python":
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND: str = _impl.BACKEND

seeded_scan = _impl.seeded_scan
concat_table = _impl.concat_table
random_table = _impl.random_table
shift_scan = _impl.shift_scan
is_prime = _impl.is_prime
prime_scan = _impl.prime_scan
count_primes_1mod4 = _impl.count_primes_1mod4
sumfree_members = _impl.sumfree_members
eval_program = _impl.eval_program

__all__ = [
    "BACKEND",
    "seeded_scan",
    "concat_table",
    "random_table",
    "shift_scan",
    "is_prime",
    "prime_scan",
    "count_primes_1mod4",
    "sumfree_members",
    "eval_program",
]
