# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops.  Same API as ``radokit._fallback``."""
import numpy as np

from libc.stdint cimport uint64_t, int64_t, uint8_t, int32_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset, memcpy
from libc.math cimport sqrt

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

BACKEND = "cython"

cdef uint64_t M1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t M2 = 0x94D049BB133111EBULL


cdef inline uint64_t mix64(uint64_t x) noexcept nogil:
    x = (x ^ (x >> 30)) * M1
    x = (x ^ (x >> 27)) * M2
    return x ^ (x >> 31)


# ---------------------------------------------------------------------------
# seeded oracle scan
# ---------------------------------------------------------------------------

def seeded_scan(uint64_t base, uint64_t start, uint64_t stop,
                const uint64_t[::1] ws, const uint8_t[::1] flags,
                const uint64_t[::1] excl):
    """Least ``z`` in ``[start, stop)`` with edge bit to ``ws[k]`` equal to ``flags[k]``."""
    cdef Py_ssize_t k, m = ws.shape[0], ne = excl.shape[0]
    cdef uint64_t z, w, lo, hi, c, top = 0
    cdef uint64_t buf[256]
    cdef int j, n, cnt, c2
    cdef int64_t found = -1
    cdef bint ok
    cdef uint64_t[::1] inner = np.empty(m, dtype=np.uint64)
    for k in range(m):
        inner[k] = mix64(base ^ ws[k])
        if ws[k] > top:
            top = ws[k]
    with nogil:
        z = start
        # candidates at or below some constraint vertex: general form
        while z < stop and z <= top:
            ok = True
            for k in range(m):
                w = ws[k]
                if w == z:
                    ok = False
                    break
                if w < z:
                    lo = w
                    hi = z
                else:
                    lo = z
                    hi = w
                if (mix64(mix64(base ^ lo) + hi) >> 63) != flags[k]:
                    ok = False
                    break
            if ok:
                for k in range(ne):
                    if excl[k] == z:
                        ok = False
                        break
            if ok:
                found = <int64_t>z
                break
            z += 1
        # above every constraint vertex the inner hash is fixed per constraint;
        # filter blocks of candidates one constraint at a time, branch free
        while found < 0 and z < stop:
            n = 256 if stop - z > 256 else <int>(stop - z)
            cnt = 0
            for j in range(n):
                c = z + <uint64_t>j
                buf[cnt] = c
                if m:
                    cnt += (mix64(inner[0] + c) >> 63) == flags[0]
                else:
                    cnt += 1
            for k in range(1, m):
                if cnt == 0:
                    break
                c2 = 0
                for j in range(cnt):
                    c = buf[j]
                    buf[c2] = c
                    c2 += (mix64(inner[k] + c) >> 63) == flags[k]
                cnt = c2
            for j in range(cnt):
                ok = True
                for k in range(ne):
                    if excl[k] == buf[j]:
                        ok = False
                        break
                if ok:
                    found = <int64_t>buf[j]
                    break
            z += <uint64_t>n
    return found


# ---------------------------------------------------------------------------
# universal sequences and the shift oracle scan
# ---------------------------------------------------------------------------

def concat_table(int64_t nbits):
    """Packed little-endian bits: bit i is position i of the concatenation
    of all binary strings (lengths 1, 2, ...; ascending value; MSB first).
    Bit 0 is unused and zero."""
    out = np.zeros((nbits + 7) // 8, dtype=np.uint8)
    cdef uint8_t[::1] t = out
    cdef int64_t pos = 1
    cdef int L = 1
    cdef uint64_t s, count
    cdef int j
    with nogil:
        while pos < nbits:
            count = (<uint64_t>1) << L
            s = 0
            while s < count and pos < nbits:
                j = L - 1
                while j >= 0 and pos < nbits:
                    if (s >> j) & 1:
                        t[pos >> 3] |= <uint8_t>(1 << (pos & 7))
                    pos += 1
                    j -= 1
                s += 1
            L += 1
    return out


def random_table(uint64_t base, int64_t nbits):
    """Packed bits ``mix64(base + i) >> 63`` for ``1 <= i < nbits``."""
    out = np.zeros((nbits + 7) // 8, dtype=np.uint8)
    cdef uint8_t[::1] t = out
    cdef int64_t i
    with nogil:
        for i in range(1, nbits):
            if mix64(base + <uint64_t>i) >> 63:
                t[i >> 3] |= <uint8_t>(1 << (i & 7))
    return out


def shift_scan(const uint8_t[::1] table, int64_t nbits, int64_t start, int64_t stop,
               const int64_t[::1] xs, const uint8_t[::1] flags,
               const int64_t[::1] excl):
    """Least vertex index ``k`` in ``[start, stop)`` whose integer ``z`` has
    ``sigma(|z - xs[i]|) == flags[i]``.  Returns -1 if none, -2 if the
    table is too short."""
    cdef Py_ssize_t i, m = xs.shape[0], ne = excl.shape[0]
    cdef int64_t k, z, p, found = -1
    cdef bint ok
    with nogil:
        for k in range(start, stop):
            if k & 1:
                z = (k + 1) >> 1
            else:
                z = -(k >> 1)
            ok = True
            for i in range(m):
                p = z - xs[i]
                if p < 0:
                    p = -p
                if p == 0:
                    ok = False
                    break
                if p >= nbits:
                    found = -2
                    break
                if ((table[p >> 3] >> (p & 7)) & 1) != flags[i]:
                    ok = False
                    break
            if found == -2:
                break
            if ok:
                for i in range(ne):
                    if excl[i] == z:
                        ok = False
                        break
            if ok:
                found = k
                break
    return found


# ---------------------------------------------------------------------------
# number theory
# ---------------------------------------------------------------------------

cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) noexcept nogil:
    return <uint64_t>((<u128>a * <u128>b) % <u128>m)


cdef inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) noexcept nogil:
    cdef uint64_t r = 1
    a %= m
    while e:
        if e & 1:
            r = mulmod(r, a, m)
        a = mulmod(a, a, m)
        e >>= 1
    return r


cdef uint64_t[12] SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
cdef uint64_t[7] MR_BASES = [2, 325, 9375, 28178, 450775, 9780504, 1795265022]


cdef bint is_prime64(uint64_t n) noexcept nogil:
    cdef int i, r, s
    cdef uint64_t d, a, x
    cdef bint composite
    if n < 2:
        return False
    for i in range(12):
        if n == SMALL_PRIMES[i]:
            return True
        if n % SMALL_PRIMES[i] == 0:
            return False
    d = n - 1
    s = 0
    while (d & 1) == 0:
        d >>= 1
        s += 1
    for i in range(7):
        a = MR_BASES[i] % n
        if a == 0:
            continue
        x = powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        composite = True
        for r in range(1, s):
            x = mulmod(x, x, n)
            if x == n - 1:
                composite = False
                break
        if composite:
            return False
    return True


def is_prime(uint64_t n):
    return is_prime64(n)


cdef int jacobi(uint64_t a, uint64_t n) noexcept nogil:
    """Jacobi symbol (a/n) for odd n."""
    cdef int result = 1
    cdef uint64_t t, r
    a %= n
    while a != 0:
        while (a & 1) == 0:
            a >>= 1
            r = n & 7
            if r == 3 or r == 5:
                result = -result
        t = a
        a = n
        n = t
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a %= n
    if n == 1:
        return result
    return 0


def prime_scan(uint64_t start, uint64_t stop, const uint64_t[::1] qs, const uint8_t[::1] flags):
    """Least prime ``p = 1 (mod 4)`` in ``[start, stop)`` with ``p`` a quadratic
    residue mod ``qs[k]`` exactly when ``flags[k]``; ``qs`` ascending odd primes.
    Returns -1 if none."""
    cdef Py_ssize_t m = qs.shape[0], k, nw = 0, nres = 0, idx
    cdef uint64_t M = 4, q, r, blk, z, t
    cdef int64_t found = -1
    cdef uint8_t** tables = <uint8_t**>calloc(m if m > 0 else 1, sizeof(uint8_t*))
    cdef uint64_t* residues = NULL
    cdef bint ok
    try:
        # quadratic-residue tables for small moduli
        for k in range(m):
            q = qs[k]
            if q < 65536:
                tables[k] = <uint8_t*>calloc(q, 1)
                for t in range(1, q):
                    tables[k][(t * t) % q] = 1
        # wheel over the smallest moduli
        while nw < m and qs[nw] < 65536 and M * qs[nw] <= (1 << 22):
            M *= qs[nw]
            nw += 1
        residues = <uint64_t*>malloc(((M // 4) + 1) * sizeof(uint64_t))
        with nogil:
            r = 1
            while r < M:
                ok = True
                for k in range(nw):
                    t = r % qs[k]
                    if t == 0 or tables[k][t] != flags[k]:
                        ok = False
                        break
                if ok:
                    residues[nres] = r
                    nres += 1
                r += 4
            if nres > 0:
                blk = (start // M) * M
                while blk < stop and found == -1:
                    for idx in range(nres):
                        z = blk + residues[idx]
                        if z < start:
                            continue
                        if z >= stop:
                            blk = stop
                            break
                        ok = True
                        for k in range(nw, m):
                            q = qs[k]
                            t = z % q
                            if t == 0:
                                ok = False
                                break
                            if tables[k] != NULL:
                                if tables[k][t] != flags[k]:
                                    ok = False
                                    break
                            elif (jacobi(t, q) == 1) != flags[k]:
                                ok = False
                                break
                        if ok and is_prime64(z):
                            found = <int64_t>z
                            break
                    if blk < stop:
                        blk += M
    finally:
        for k in range(m):
            if tables[k] != NULL:
                free(tables[k])
        free(tables)
        if residues != NULL:
            free(residues)
    return found


def count_primes_1mod4(int64_t n):
    """Number of primes p <= n with p = 1 (mod 4), by Lucy's sieve on the
    prime-counting and chi_4-weighted prime sums."""
    if n < 5:
        return 0
    cdef int64_t r = <int64_t>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    cdef int64_t* s1 = <int64_t*>malloc((r + 2) * sizeof(int64_t))   # small: S(v), v <= r
    cdef int64_t* l1 = <int64_t*>malloc((r + 2) * sizeof(int64_t))   # large: S(n // i)
    cdef int64_t* sx = <int64_t*>malloc((r + 2) * sizeof(int64_t))
    cdef int64_t* lx = <int64_t*>malloc((r + 2) * sizeof(int64_t))
    cdef int64_t i, p, v, lim, sp1, spx, cp, d, vd, p2, res
    try:
        with nogil:
            for v in range(1, r + 1):
                s1[v] = v - 1
                sx[v] = (1 if (v % 4 == 1 or v % 4 == 2) else 0) - 1
                vd = n // v
                l1[v] = vd - 1
                lx[v] = (1 if (vd % 4 == 1 or vd % 4 == 2) else 0) - 1
            s1[0] = 0
            sx[0] = 0
            for p in range(2, r + 1):
                if s1[p] == s1[p - 1]:
                    continue
                sp1 = s1[p - 1]
                spx = sx[p - 1]
                cp = 0 if p == 2 else (1 if p % 4 == 1 else -1)
                p2 = p * p
                lim = n // p2
                if lim > r:
                    lim = r
                for i in range(1, lim + 1):
                    d = i * p
                    if d <= r:
                        l1[i] -= l1[d] - sp1
                        lx[i] -= cp * (lx[d] - spx)
                    else:
                        vd = n // d
                        l1[i] -= s1[vd] - sp1
                        lx[i] -= cp * (sx[vd] - spx)
                v = r
                while v >= p2:
                    vd = v // p
                    s1[v] -= s1[vd] - sp1
                    sx[v] -= cp * (sx[vd] - spx)
                    v -= 1
            res = (l1[1] - 1 + lx[1]) // 2
    finally:
        free(s1)
        free(l1)
        free(sx)
        free(lx)
    return res


# ---------------------------------------------------------------------------
# sum-free sets
# ---------------------------------------------------------------------------

def sumfree_members(uint64_t base, int64_t prefix):
    """Membership of 1..prefix in the sequential random sum-free set whose
    coin for ``n`` is ``mix64(base + n) >> 63``."""
    out = np.zeros(prefix + 1, dtype=np.uint8)
    cdef uint8_t[::1] mem = out
    cdef uint8_t* sums = <uint8_t*>calloc(2 * prefix + 2, 1)
    cdef int64_t* elems = <int64_t*>malloc((prefix + 1) * sizeof(int64_t))
    cdef int64_t n, j, cnt = 0
    try:
        with nogil:
            for n in range(1, prefix + 1):
                if sums[n]:
                    continue
                if mix64(base + <uint64_t>n) >> 63:
                    mem[n] = 1
                    elems[cnt] = n
                    cnt += 1
                    for j in range(cnt):
                        sums[n + elems[j]] = 1
    finally:
        free(sums)
        free(elems)
    return out


# ---------------------------------------------------------------------------
# first-order evaluation on finite graphs (bit-parallel)
# ---------------------------------------------------------------------------

cdef enum:
    ADJ = 0
    EQ = 1
    NOT = 2
    AND = 3
    OR = 4
    IMP = 5
    SALL = 6
    SEX = 7
    VEX = 8
    LIT = 9


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef class _Evaluator:
    cdef int32_t* op
    cdef int32_t* a
    cdef int32_t* b
    cdef int32_t* c
    cdef int32_t* d
    cdef int32_t* mode
    cdef const uint64_t* rows
    cdef uint64_t* buf
    cdef uint64_t* valid
    cdef int64_t* env
    cdef int n, W

    cdef inline uint64_t* out(self, int i) noexcept nogil:
        return self.buf + (4 * i) * self.W

    cdef inline bint is_zero(self, uint64_t* x) noexcept nogil:
        cdef int w
        for w in range(self.W):
            if x[w]:
                return False
        return True

    cdef inline void fill(self, uint64_t* x, bint value) noexcept nogil:
        cdef int w
        if value:
            for w in range(self.W):
                x[w] = self.valid[w]
        else:
            for w in range(self.W):
                x[w] = 0

    cdef inline void literal(self, uint64_t* res, int64_t z, int code) noexcept nogil:
        # conjunction of literals between the bound vertex z and the vector variable:
        # 1: adjacent, 2: not adjacent, 4: different, 8: equal
        cdef int w, W = self.W
        cdef uint64_t word
        cdef const uint64_t* row = self.rows + z * W
        for w in range(W):
            res[w] = ~(<uint64_t>0)
            if code & 1:
                res[w] &= row[w]
            if code & 2:
                res[w] &= ~row[w]
        if code & 4:
            res[z >> 6] &= ~((<uint64_t>1) << (z & 63))
        if code & 8:
            word = res[z >> 6] & ((<uint64_t>1) << (z & 63))
            for w in range(W):
                res[w] = 0
            res[z >> 6] = word

    cdef bint scal(self, int i) noexcept nogil:
        cdef int o = self.op[i], w
        cdef int64_t u, v
        cdef uint64_t* r
        if o == ADJ:
            u = self.env[self.a[i]]
            v = self.env[self.b[i]]
            return u != v and ((self.rows[u * self.W + (v >> 6)] >> (v & 63)) & 1)
        if o == EQ:
            return self.env[self.a[i]] == self.env[self.b[i]]
        if o == NOT:
            return not self.scal(self.a[i])
        if o == AND:
            return self.scal(self.a[i]) and self.scal(self.b[i])
        if o == OR:
            return self.scal(self.a[i]) or self.scal(self.b[i])
        if o == IMP:
            return (not self.scal(self.a[i])) or self.scal(self.b[i])
        if o == SALL:
            self.vec(self.b[i], self.a[i], self.valid)
            r = self.out(self.b[i])
            for w in range(self.W):
                if (r[w] & self.valid[w]) != self.valid[w]:
                    return False
            return True
        if o == SEX:
            self.vec(self.b[i], self.a[i], self.valid)
            r = self.out(self.b[i])
            for w in range(self.W):
                if r[w] & self.valid[w]:
                    return True
            return False
        return False

    cdef void vec(self, int i, int x, uint64_t* need) noexcept nogil:
        cdef int W = self.W, w, o, v, H, G, R, t
        cdef uint64_t* res = self.out(i)
        cdef uint64_t* tmp = res + W
        cdef uint64_t* acc = res + 2 * W
        cdef uint64_t* cand = res + 3 * W
        cdef uint64_t* ra
        cdef uint64_t* rb
        cdef uint64_t word, low
        cdef int64_t other, save, z
        cdef bint done
        if self.mode[i] == 0:
            self.fill(res, self.scal(i))
            return
        o = self.op[i]
        if o == ADJ:
            if self.a[i] == x and self.b[i] == x:
                self.fill(res, False)
                return
            other = self.env[self.b[i]] if self.a[i] == x else self.env[self.a[i]]
            memcpy(res, self.rows + other * W, W * sizeof(uint64_t))
            return
        if o == EQ:
            if self.a[i] == x and self.b[i] == x:
                self.fill(res, True)
                return
            other = self.env[self.b[i]] if self.a[i] == x else self.env[self.a[i]]
            self.fill(res, False)
            res[other >> 6] = (<uint64_t>1) << (other & 63)
            return
        if o == LIT:
            self.literal(res, self.env[self.a[i]], self.b[i])
            return
        if o == NOT:
            self.vec(self.a[i], x, need)
            ra = self.out(self.a[i])
            for w in range(W):
                res[w] = ~ra[w]
            return
        if o == AND or o == OR or o == IMP:
            self.vec(self.a[i], x, need)
            ra = self.out(self.a[i])
            for w in range(W):
                if o == OR:
                    tmp[w] = need[w] & ~ra[w]
                else:
                    tmp[w] = need[w] & ra[w]
            if self.is_zero(tmp):
                for w in range(W):
                    res[w] = ~ra[w] if o == IMP else ra[w]
                return
            self.vec(self.b[i], x, tmp)
            rb = self.out(self.b[i])
            for w in range(W):
                if o == AND:
                    res[w] = ra[w] & rb[w]
                elif o == OR:
                    res[w] = ra[w] | rb[w]
                else:
                    res[w] = (~ra[w]) | rb[w]
            return
        if o == VEX:
            v = self.a[i]
            H = self.b[i]
            G = self.c[i]
            R = self.d[i]
            if H >= 0:
                self.vec(H, x, need)
                ra = self.out(H)
                for w in range(W):
                    tmp[w] = need[w] & ra[w]
            else:
                for w in range(W):
                    tmp[w] = need[w]
            if self.is_zero(tmp):
                self.fill(res, False)
                return
            if G >= 0:
                self.vec(G, v, self.valid)
                rb = self.out(G)
                for w in range(W):
                    cand[w] = rb[w] & self.valid[w]
            else:
                for w in range(W):
                    cand[w] = self.valid[w]
            for w in range(W):
                acc[w] = 0
            save = self.env[v]
            done = False
            for w in range(W):
                word = cand[w]
                while word and not done:
                    low = word & (~word + 1)
                    z = (<int64_t>w << 6) + __builtin_ctzll(low)
                    word ^= low
                    self.env[v] = z
                    if R >= 0 and self.op[R] == LIT:
                        rb = self.out(R)
                        self.literal(rb, z, self.b[R])
                        for t in range(W):
                            acc[t] |= rb[t]
                    elif R >= 0:
                        # res doubles as the remaining-need scratch buffer
                        for t in range(W):
                            res[t] = tmp[t] & ~acc[t]
                        self.vec(R, x, res)
                        rb = self.out(R)
                        for t in range(W):
                            acc[t] |= rb[t]
                    else:
                        for t in range(W):
                            acc[t] = self.valid[t]
                    done = True
                    for t in range(W):
                        if tmp[t] & ~acc[t]:
                            done = False
                            break
                if done:
                    break
            self.env[v] = save
            for w in range(W):
                res[w] = acc[w] & tmp[w]
            return


def eval_program(prog, const uint64_t[:, ::1] rows, int n):
    """Evaluate a compiled sentence on a graph given as packed adjacency rows."""
    cdef int32_t[::1] op = prog.op
    cdef int32_t[::1] a = prog.a
    cdef int32_t[::1] b = prog.b
    cdef int32_t[::1] c = prog.c
    cdef int32_t[::1] d = prog.d
    cdef int32_t[::1] mode = prog.mode
    cdef int nodes = op.shape[0]
    cdef int W = (n + 63) // 64
    cdef int w, root = prog.root
    cdef bint result = False
    cdef _Evaluator ev = _Evaluator()
    if n > 0 and (rows.shape[0] < n or rows.shape[1] < W):
        raise ValueError("adjacency rows too small")
    ev.op = &op[0]
    ev.a = &a[0]
    ev.b = &b[0]
    ev.c = &c[0]
    ev.d = &d[0]
    ev.mode = &mode[0]
    ev.n = n
    ev.W = W
    ev.rows = &rows[0, 0] if n > 0 else NULL
    ev.buf = <uint64_t*>calloc(4 * nodes * W + 1, sizeof(uint64_t))
    ev.valid = <uint64_t*>calloc(W + 1, sizeof(uint64_t))
    ev.env = <int64_t*>calloc(prog.nvars + 1, sizeof(int64_t))
    try:
        for w in range(W):
            ev.valid[w] = ~(<uint64_t>0)
        if n % 64:
            ev.valid[W - 1] = ((<uint64_t>1) << (n % 64)) - 1
        with nogil:
            result = ev.scal(root)
    finally:
        free(ev.buf)
        free(ev.valid)
        free(ev.env)
    return bool(result)
