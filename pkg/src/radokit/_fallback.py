"""Pure-Python/numpy versions of the compiled kernels (same API and results)."""
from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

_M = (1 << 64) - 1
_U = np.uint64


def _mix64(x: int) -> int:
    x &= _M
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M
    return x ^ (x >> 31)


def _mix64v(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = (x ^ (x >> _U(30))) * _U(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> _U(27))) * _U(0x94D049BB133111EB)
        return x ^ (x >> _U(31))


_CHUNK = 1 << 20


def seeded_scan(base, start, stop, ws, flags, excl):
    ws = [int(w) for w in ws]
    flags = [bool(f) for f in flags]
    excl = {int(e) for e in excl} | set(ws)
    b = _U(base)
    lo_ = start
    while lo_ < stop:
        hi_ = min(stop, lo_ + _CHUNK)
        z = np.arange(lo_, hi_, dtype=np.uint64)
        for w, f in zip(ws, flags):
            if z.size == 0:
                break
            wv = _U(w)
            lo = np.minimum(z, wv)
            hi = np.maximum(z, wv)
            with np.errstate(over="ignore"):
                h = _mix64v(_mix64v(b ^ lo) + hi)
            z = z[((h >> _U(63)) == _U(f)) & (z != wv)]
        for cand in z.tolist():
            if cand not in excl:
                return int(cand)
        lo_ = hi_
    return -1


def concat_table(nbits):
    bits = np.zeros(max(nbits, 1), dtype=np.uint8)
    pos = 1
    L = 1
    while pos < nbits:
        count = 1 << L
        need = nbits - pos
        take = min(count, -(-need // L))
        s = np.arange(take, dtype=np.uint64)
        shifts = np.arange(L - 1, -1, -1, dtype=np.uint64)
        block = ((s[:, None] >> shifts[None, :]) & _U(1)).astype(np.uint8).ravel()
        block = block[: nbits - pos]
        bits[pos : pos + block.size] = block
        pos += block.size
        L += 1
    return np.packbits(bits[:nbits], bitorder="little") if nbits else np.zeros(0, np.uint8)


def random_table(base, nbits):
    bits = np.zeros(max(nbits, 1), dtype=np.uint8)
    for lo in range(1, nbits, _CHUNK):
        i = np.arange(lo, min(nbits, lo + _CHUNK), dtype=np.uint64)
        with np.errstate(over="ignore"):
            bits[lo : lo + i.size] = (_mix64v(_U(base) + i) >> _U(63)).astype(np.uint8)
    return np.packbits(bits[:nbits], bitorder="little") if nbits else np.zeros(0, np.uint8)


def shift_scan(table, nbits, start, stop, xs, flags, excl):
    xs = np.asarray(xs, dtype=np.int64)
    flags = [int(f) for f in flags]
    excl = {int(e) for e in excl}
    for lo in range(start, stop, _CHUNK):
        k = np.arange(lo, min(stop, lo + _CHUNK), dtype=np.int64)
        z = np.where(k & 1, (k + 1) >> 1, -(k >> 1))
        if xs.size and int(np.abs(z[:, None] - xs[None, :]).max()) >= nbits:
            # replay this chunk one vertex at a time so the -2 point matches
            return _shift_scalar(table, nbits, k.tolist(), xs.tolist(), flags, excl)
        alive = np.ones(k.size, dtype=bool)
        for x, f in zip(xs.tolist(), flags):
            p = np.abs(z - x)
            bit = (table[p >> 3] >> (p & 7)) & 1
            alive &= (bit == f) & (p != 0)
        for i in np.nonzero(alive)[0].tolist():
            if int(z[i]) not in excl:
                return int(k[i])
    return -1


def _shift_scalar(table, nbits, ks, xs, flags, excl):
    for k in ks:
        z = (k + 1) >> 1 if k & 1 else -(k >> 1)
        ok = True
        for x, f in zip(xs, flags):
            p = abs(z - x)
            if p == 0:
                ok = False
                break
            if p >= nbits:
                return -2
            if ((int(table[p >> 3]) >> (p & 7)) & 1) != f:
                ok = False
                break
        if ok and z not in excl:
            return k
    return -1


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_scan(start, stop, qs, flags):
    qs = [int(q) for q in qs]
    flags = [bool(f) for f in flags]
    wheel, M = [], 4
    for q, f in zip(qs, flags):
        if q < 65536 and M * q <= (1 << 22):
            wheel.append((q, f))
            M *= q
        else:
            break
    rest = list(zip(qs, flags))[len(wheel):]
    r = np.arange(1, M, 4, dtype=np.int64)
    for q, f in wheel:
        t = r % q
        table = _qr_table(q)
        r = r[(t != 0) & (table[t] == f)]
    if r.size == 0:
        return -1
    blk = (start // M) * M
    tables = {q: _qr_table(q) for q, _ in rest if q < (1 << 20)}
    while blk < stop:
        z = blk + r
        z = z[(z >= start) & (z < stop)]
        for q, f in rest:
            if z.size == 0:
                break
            if q in tables:
                t = z % q
                z = z[(t != 0) & (tables[q][t] == f)]
            else:
                z = np.array(
                    [v for v in z.tolist() if v % q and (pow(v, (q - 1) // 2, q) == 1) == f],
                    dtype=np.int64,
                )
        for v in z.tolist():
            if is_prime(v):
                return int(v)
        blk += M
    return -1


def _qr_table(q: int) -> np.ndarray:
    t = np.zeros(q, dtype=bool)
    x = np.arange(1, q, dtype=np.int64)
    t[(x * x) % q] = True
    return t


def count_primes_1mod4(n):
    if n < 5:
        return 0
    r = math.isqrt(n)
    small = np.arange(r + 1, dtype=np.int64)
    large_v = n // np.arange(1, r + 1, dtype=np.int64)
    s1 = small - 1
    s1[0] = 0
    sx = (np.isin(small % 4, (1, 2))).astype(np.int64) - 1
    sx[0] = 0
    l1 = np.concatenate(([0], large_v - 1))
    lx = np.concatenate(([0], np.isin(large_v % 4, (1, 2)).astype(np.int64) - 1))
    for p in range(2, r + 1):
        if s1[p] == s1[p - 1]:
            continue
        sp1, spx = s1[p - 1], sx[p - 1]
        cp = 0 if p == 2 else (1 if p % 4 == 1 else -1)
        p2 = p * p
        lim = min(r, n // p2)
        i = np.arange(1, lim + 1, dtype=np.int64)
        d = i * p
        inner = d <= r
        src1 = np.where(inner, l1[np.minimum(d, r)], s1[np.minimum(n // d, r)])
        srcx = np.where(inner, lx[np.minimum(d, r)], sx[np.minimum(n // d, r)])
        l1[1 : lim + 1] -= src1 - sp1
        lx[1 : lim + 1] -= cp * (srcx - spx)
        if r >= p2:
            v = np.arange(p2, r + 1, dtype=np.int64)
            s1[p2:] -= s1[v // p] - sp1
            sx[p2:] -= cp * (sx[v // p] - spx)
    return int((l1[1] - 1 + lx[1]) // 2)


def sumfree_members(base, prefix):
    out = np.zeros(prefix + 1, dtype=np.uint8)
    sums = bytearray(2 * prefix + 2)
    elems: list[int] = []
    for n in range(1, prefix + 1):
        if sums[n]:
            continue
        if _mix64(base + n) >> 63:
            out[n] = 1
            elems.append(n)
            for e in elems:
                sums[n + e] = 1
    return out


# ---------------------------------------------------------------------------
# bit-parallel sentence evaluation, Python ints as bitsets
# ---------------------------------------------------------------------------

ADJ, EQ, NOT, AND, OR, IMP, SALL, SEX, VEX, LIT = range(10)


class _Eval:
    def __init__(self, prog, rows, n):
        self.op = prog.op.tolist()
        self.a = prog.a.tolist()
        self.b = prog.b.tolist()
        self.c = prog.c.tolist()
        self.d = prog.d.tolist()
        self.mode = prog.mode.tolist()
        self.n = n
        self.valid = (1 << n) - 1
        self.rows = rows
        self.env = [0] * (prog.nvars + 1)

    def scal(self, i):
        o = self.op[i]
        env = self.env
        if o == ADJ:
            u, v = env[self.a[i]], env[self.b[i]]
            return u != v and (self.rows[u] >> v) & 1 == 1
        if o == EQ:
            return env[self.a[i]] == env[self.b[i]]
        if o == NOT:
            return not self.scal(self.a[i])
        if o == AND:
            return self.scal(self.a[i]) and self.scal(self.b[i])
        if o == OR:
            return self.scal(self.a[i]) or self.scal(self.b[i])
        if o == IMP:
            return (not self.scal(self.a[i])) or self.scal(self.b[i])
        if o == SALL:
            return self.vec(self.b[i], self.a[i], self.valid) & self.valid == self.valid
        if o == SEX:
            return self.vec(self.b[i], self.a[i], self.valid) & self.valid != 0
        raise ValueError(f"node {i}: op {o} in scalar position")

    def literal(self, z, code):
        res = self.valid
        if code & 1:
            res &= self.rows[z]
        if code & 2:
            res &= ~self.rows[z]
        if code & 4:
            res &= ~(1 << z)
        if code & 8:
            res &= 1 << z
        return res

    def vec(self, i, x, need):
        if self.mode[i] == 0:
            return self.valid if self.scal(i) else 0
        o = self.op[i]
        env = self.env
        if o == ADJ:
            a, b = self.a[i], self.b[i]
            if a == x and b == x:
                return 0
            return self.rows[env[b] if a == x else env[a]]
        if o == EQ:
            a, b = self.a[i], self.b[i]
            if a == x and b == x:
                return self.valid
            return 1 << (env[b] if a == x else env[a])
        if o == LIT:
            return self.literal(env[self.a[i]], self.b[i])
        if o == NOT:
            return ~self.vec(self.a[i], x, need)
        if o in (AND, OR, IMP):
            ra = self.vec(self.a[i], x, need)
            tmp = need & ~ra if o == OR else need & ra
            if not tmp:
                return ~ra if o == IMP else ra
            rb = self.vec(self.b[i], x, tmp)
            if o == AND:
                return ra & rb
            if o == OR:
                return ra | rb
            return ~ra | rb
        if o == VEX:
            v, H, G, R = self.a[i], self.b[i], self.c[i], self.d[i]
            need1 = need & self.vec(H, x, need) if H >= 0 else need
            if not need1:
                return 0
            cand = self.vec(G, v, self.valid) & self.valid if G >= 0 else self.valid
            acc = 0
            save = env[v]
            while cand:
                low = cand & -cand
                env[v] = low.bit_length() - 1
                cand ^= low
                if R >= 0:
                    acc |= self.vec(R, x, need1 & ~acc)
                else:
                    acc = self.valid
                if not need1 & ~acc:
                    break
            env[v] = save
            return acc & need1
        raise ValueError(f"node {i}: unknown op {o}")


def eval_program(prog, rows, n):
    rows = np.asarray(rows, dtype=np.uint64)
    if n and rows.shape[0] < n:
        raise ValueError("adjacency rows too small")
    ints = []
    for r in range(n):
        ints.append(int.from_bytes(rows[r].tobytes(), "little") & ((1 << n) - 1))
    return bool(_Eval(prog, ints, n).scal(prog.root))
