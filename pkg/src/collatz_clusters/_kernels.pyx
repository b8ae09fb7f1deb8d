# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot-loop kernels (same surface as ``_kernels_py``).

Trajectory arithmetic runs on unsigned 128-bit integers with explicit
overflow checks, matching the pure-Python working-width contract.
"""

BACKEND = "compiled"

SIGMA_UNRESOLVED = 0xFFFFFFFF
SIGMA_OVERFLOW = 0xFFFFFFFE
SIGMA_NOT_DONE = 0xFFFFFFFD

ctypedef unsigned long long u64
ctypedef unsigned int u32

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"
    int __builtin_ctzll(unsigned long long) nogil

cdef u32 _UNRESOLVED = 0xFFFFFFFF
cdef u32 _OVERFLOW = 0xFFFFFFFE
cdef u32 _NOT_DONE = 0xFFFFFFFD

cdef u128 _U128_MAX = ~(<u128>0)
cdef u128 _T_ODD_LIMIT = (_U128_MAX - 1) / 3

cdef u64 _RAW_ODD_CHAIN_LIMIT = 10000


cdef inline int _c_closed(u64 n) nogil:
    cdef int j = __builtin_ctzll(n)
    cdef u64 k = n >> j
    return ((j & 1) == 0) == ((k & 3) == 3)


cdef inline int _c_recursive(u64 n) nogil:
    cdef int flips = 0
    while n != 1:
        if n & 1:
            if n > _RAW_ODD_CHAIN_LIMIT:
                n &= 3
            else:
                n -= 2
                flips ^= 1
        else:
            n >>= 1
            flips ^= 1
    return flips


cdef inline u32 _sigma_one(const u32* vals, u64 table_start, u64 m,
                           u32 max_steps) nogil:
    cdef u128 cur = m
    cdef u32 steps = 0
    cdef u32 memo
    while True:
        if cur == 1:
            return steps
        if cur < m and cur >= table_start:
            memo = vals[<Py_ssize_t>(<u64>cur - table_start)]
            if memo != _NOT_DONE:
                if memo >= _OVERFLOW:
                    return memo
                if <u64>steps + memo <= max_steps:
                    return steps + memo
                return _UNRESOLVED
        if steps == max_steps:
            return _UNRESOLVED
        if cur & 1:
            if cur > _T_ODD_LIMIT:
                return _OVERFLOW
            cur = (3 * cur + 1) >> 1
        else:
            cur >>= 1
        steps += 1


def sigma_fill(u32[::1] values, u64 table_start, Py_ssize_t idx_lo,
               Py_ssize_t idx_hi, u32 max_steps):
    """Fill total-stopping-time entries [idx_lo, idx_hi) of a table.

    Memo lookups consult only entries strictly below the one being
    computed, so results are schedule-independent (see the pure version).
    """
    cdef u32* vals = &values[0]
    cdef Py_ssize_t idx
    with nogil:
        for idx in range(idx_lo, idx_hi):
            vals[idx] = _sigma_one(vals, table_start,
                                   table_start + <u64>idx, max_steps)


def ceq_scan(u64 lo, u64 hi, int max_witnesses=32):
    """n in [lo, hi) where the closed form and the recursion disagree."""
    bad = []
    cdef u64 n
    for n in range(lo, hi):
        if _c_closed(n) != _c_recursive(n):
            bad.append(n)
            if len(bad) >= max_witnesses:
                break
    return bad


def theorem1_scan(u64 n_lo, u64 n_hi, int max_witnesses=32):
    """Witnesses against the triple equivalence for m = 2n - 1
    (T^p(m) mod 4 via 3^p(2q+1) - 1 with 3^p mod 4 = (-1)^p)."""
    bad = []
    cdef u64 n, m, mp1, q
    cdef int p, tp_mod4, same_parity, c
    if n_lo < 2:
        n_lo = 2
    for n in range(n_lo, n_hi):
        m = 2 * n - 1
        mp1 = m + 1
        p = __builtin_ctzll(mp1)
        q = ((mp1 >> p) - 1) >> 1
        tp_mod4 = <int>(((3 if p & 1 else 1) * (2 * q + 1) - 1) & 3)
        same_parity = <int>((p - q) & 1) == 0
        c = _c_closed(n)
        if not ((tp_mod4 == 0) == same_parity == (c == 1)):
            bad.append(n)
            if len(bad) >= max_witnesses:
                break
    return bad


def theorem2_scan(u64 n_lo, u64 n_hi, int max_witnesses=32):
    """Witnesses where T^(p+2)(m - 1) = T^(p+2)(m) disagrees with C(n) = 1."""
    bad = []
    cdef u64 n, m, mp1
    cdef u128 a, b
    cdef int p, i, overflow
    if n_lo < 2:
        n_lo = 2
    for n in range(n_lo, n_hi):
        m = 2 * n - 1
        mp1 = m + 1
        p = __builtin_ctzll(mp1)
        a = m - 1
        b = m
        overflow = 0
        for i in range(p + 2):
            if a & 1:
                if a > _T_ODD_LIMIT:
                    overflow = 1
                    break
                a = (3 * a + 1) >> 1
            else:
                a >>= 1
            if b & 1:
                if b > _T_ODD_LIMIT:
                    overflow = 1
                    break
                b = (3 * b + 1) >> 1
            else:
                b >>= 1
        if overflow or (a == b) != (_c_closed(n) == 1):
            bad.append(n)
            if len(bad) >= max_witnesses:
                break
    return bad


def lemma1_scan(u64 m_lo, u64 m_hi, int max_witnesses=32):
    """Odd m in [m_lo, m_hi) where any of the five iterate identities fails."""
    bad = []
    cdef u64 m, lo, mp1, odd
    cdef u128 a, b, pow3, expect
    cdef int p, i, ok
    lo = m_lo if m_lo > 3 else 3
    if lo % 2 == 0:
        lo += 1
    for m in range(lo, m_hi, 2):
        mp1 = m + 1
        p = __builtin_ctzll(mp1)
        odd = mp1 >> p
        a = m
        b = m - 1
        pow3 = 1
        ok = 1
        for i in range(1, p + 1):
            pow3 *= 3
            a = (3 * a + 1) >> 1 if a & 1 else a >> 1
            b = (3 * b + 1) >> 1 if b & 1 else b >> 1
            expect = pow3 * ((<u128>odd) << (p - i))
            if a != expect - 1:
                ok = 0
                break
            if b != (pow3 / 3) * ((<u128>odd) << (p - i)) - 1:
                ok = 0
                break
        if ok:
            ok = (a == 3 * b + 2 and
                  ((a & 3 == 0 and b & 3 == 2) or (a & 3 == 2 and b & 3 == 0)))
        if not ok:
            bad.append(m)
            if len(bad) >= max_witnesses:
                break
    return bad
