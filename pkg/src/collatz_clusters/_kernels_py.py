"""Pure-Python hot-loop kernels.

Same surface as the compiled module ``_kernels`` (Cython); selected as a
fallback when the extension is not built.  All functions here are written
against plain Python integers, so they share the 128-bit overflow contract
of :mod:`collatz_clusters.core` but not its object types: tables speak in
raw uint32 sentinels, scans return witness lists (expected empty).
"""

from __future__ import annotations

BACKEND = "pure"

# Table sentinels (shared with the cache file format, except NOT_DONE which
# never escapes an in-progress sieve).
SIGMA_UNRESOLVED = 0xFFFFFFFF
SIGMA_OVERFLOW = 0xFFFFFFFE
SIGMA_NOT_DONE = 0xFFFFFFFD

_U128_MAX = (1 << 128) - 1
_T_ODD_LIMIT = (_U128_MAX - 1) // 3

_RAW_ODD_CHAIN_LIMIT = 10_000


def _c_closed(n: int) -> int:
    j = (n & -n).bit_length() - 1
    k = n >> j
    return 1 if (j & 1 == 0) == (k & 3 == 3) else 0


def _c_recursive(n: int) -> int:
    flips = 0
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


def sigma_fill(values, table_start: int, idx_lo: int, idx_hi: int,
               max_steps: int) -> None:
    """Fill total-stopping-time entries [idx_lo, idx_hi) of a table.

    ``values`` is a uint32 array covering [table_start, table_start + len).
    Memoization consults only entries strictly below the one being computed
    (and already written, i.e. != NOT_DONE), which keeps results identical
    no matter how chunks are scheduled across workers.
    """
    for idx in range(idx_lo, idx_hi):
        m = table_start + idx
        cur = m
        steps = 0
        result = SIGMA_UNRESOLVED
        while steps <= max_steps:
            if cur == 1:
                result = steps
                break
            if table_start <= cur < m:
                memo = int(values[cur - table_start])
                if memo != SIGMA_NOT_DONE:
                    if memo == SIGMA_UNRESOLVED or memo == SIGMA_OVERFLOW:
                        result = memo
                    elif steps + memo <= max_steps:
                        result = steps + memo
                    break
            if steps == max_steps:
                break
            if cur & 1:
                if cur > _T_ODD_LIMIT:
                    result = SIGMA_OVERFLOW
                    break
                cur = (3 * cur + 1) >> 1
            else:
                cur >>= 1
            steps += 1
        values[idx] = result


def ceq_scan(lo: int, hi: int, max_witnesses: int = 32) -> list[int]:
    """n in [lo, hi) where the closed form and the recursion disagree."""
    bad = []
    for n in range(lo, hi):
        if _c_closed(n) != _c_recursive(n):
            bad.append(n)
            if len(bad) >= max_witnesses:
                break
    return bad


def theorem1_scan(n_lo: int, n_hi: int, max_witnesses: int = 32) -> list[int]:
    """n in [n_lo, n_hi) (n >= 2) where the triple equivalence
    T^p(m) mod 4 = 0  <=>  p = q (mod 2)  <=>  C(n) = 1  breaks for m = 2n - 1.

    T^p(m) mod 4 comes from the closed iterate 3^p * (2q + 1) - 1 using
    3^p mod 4 = (-1)^p, never from the trajectory.
    """
    bad = []
    for n in range(max(n_lo, 2), n_hi):
        m = 2 * n - 1
        mp1 = m + 1
        p = (mp1 & -mp1).bit_length() - 1
        q = ((mp1 >> p) - 1) >> 1
        pow3 = 3 if p & 1 else 1
        tp_mod4 = (pow3 * (2 * q + 1) - 1) & 3
        same_parity = (p - q) & 1 == 0
        c = _c_closed(n)
        if not ((tp_mod4 == 0) == same_parity == (c == 1)):
            bad.append(n)
            if len(bad) >= max_witnesses:
                break
    return bad


def theorem2_scan(n_lo: int, n_hi: int, max_witnesses: int = 32) -> list[int]:
    """n in [n_lo, n_hi) (n >= 2) where, for m = 2n - 1,
    T^(p+2)(m - 1) = T^(p+2)(m) fails to match C(n) = 1."""
    bad = []
    for n in range(max(n_lo, 2), n_hi):
        m = 2 * n - 1
        mp1 = m + 1
        p = (mp1 & -mp1).bit_length() - 1
        a = m - 1
        b = m
        overflow = False
        for _ in range(p + 2):
            if a & 1:
                if a > _T_ODD_LIMIT:
                    overflow = True
                    break
                a = (3 * a + 1) >> 1
            else:
                a >>= 1
            if b & 1:
                if b > _T_ODD_LIMIT:
                    overflow = True
                    break
                b = (3 * b + 1) >> 1
            else:
                b >>= 1
        if overflow or (a == b) != (_c_closed(n) == 1):
            bad.append(n)
            if len(bad) >= max_witnesses:
                break
    return bad


def lemma1_scan(m_lo: int, m_hi: int, max_witnesses: int = 32) -> list[int]:
    """Odd m in [m_lo, m_hi) where any of the five iterate identities fails:

    (1) T^i(m) = 3^i * 2^(p-i) * (2q+1) - 1 for 0 <= i <= p,
    (2) T^i(m-1) = 3^(i-1) * 2^(p-i) * (2q+1) - 1 for 1 <= i <= p,
    (3) T^p(m) = 3 * T^p(m-1) + 2,
    (4)/(5) exactly one of T^p(m), T^p(m-1) is 0 mod 4, the other 2 mod 4.
    """
    bad = []
    lo = max(m_lo, 3)
    if lo % 2 == 0:
        lo += 1
    for m in range(lo, m_hi, 2):
        mp1 = m + 1
        p = (mp1 & -mp1).bit_length() - 1
        odd = mp1 >> p  # 2q + 1
        a = m       # tracks T^i(m)
        b = m - 1   # tracks T^i(m-1)
        pow3 = 1
        ok = True
        for i in range(1, p + 1):
            pow3 *= 3
            a = (3 * a + 1) >> 1 if a & 1 else a >> 1
            b = (3 * b + 1) >> 1 if b & 1 else b >> 1
            if a != pow3 * (odd << (p - i)) - 1:
                ok = False
                break
            if b != (pow3 // 3) * (odd << (p - i)) - 1:
                ok = False
                break
        if ok:
            ok = (a == 3 * b + 2) and {a & 3, b & 3} == {0, 2}
        if not ok:
            bad.append(m)
            if len(bad) >= max_witnesses:
                break
    return bad
