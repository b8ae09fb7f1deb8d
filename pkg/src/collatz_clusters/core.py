"""Exact integer arithmetic for the shortcut Collatz map.

Everything here works on plain Python integers but enforces a 128-bit
working width: any intermediate 3m + 1 that would exceed 2^128 - 1 raises
:class:`Uint128Overflow` instead of silently growing.  Overflow is a
first-class answer at the API level (see :class:`SigmaValue` and
:class:`TrajectoryRecord`), never an unhandled crash.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

U128_MAX = (1 << 128) - 1
_T_ODD_LIMIT = (U128_MAX - 1) // 3

DEFAULT_MAX_STEPS = 10_000


class Uint128Overflow(ArithmeticError):
    """3m + 1 would exceed the 128-bit working width."""


class Resolution(enum.Enum):
    REACHED_ONE = "reached_one"
    BOUND_EXCEEDED = "bound_exceeded"
    OVERFLOW = "overflow"


class SigmaKind(enum.Enum):
    FINITE = "finite"
    UNRESOLVED = "unresolved"
    OVERFLOW = "overflow"


@dataclass(frozen=True)
class SigmaValue:
    """Total stopping time, or the reason it could not be established."""

    kind: SigmaKind
    steps: int | None = None

    @classmethod
    def finite(cls, steps: int) -> "SigmaValue":
        return cls(SigmaKind.FINITE, steps)

    @classmethod
    def unresolved(cls) -> "SigmaValue":
        return cls(SigmaKind.UNRESOLVED)

    @classmethod
    def overflow(cls) -> "SigmaValue":
        return cls(SigmaKind.OVERFLOW)

    @property
    def is_finite(self) -> bool:
        return self.kind is SigmaKind.FINITE


@dataclass(frozen=True)
class TrajectoryRecord:
    start: int
    iterates: list[int]
    status: Resolution


@dataclass(frozen=True)
class OddDecomposition:
    """The decomposition m = 2^p * (2q + 1) - 1 of an odd m >= 3.

    Derived symbols: n = (m + 1) / 2 = 2^j * k with 2^j || n, j = p - 1,
    k = 2q + 1; j = 2r + s with s in {0, 1}; k = 4t + u with u in {1, 3}.
    """

    m: int
    n: int
    p: int
    q: int
    j: int
    k: int
    r: int
    s: int
    t: int
    u: int


def collatz_t(m: int) -> int:
    """One step of the shortcut map: m/2 for even m, (3m+1)/2 for odd m."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if m & 1:
        if m > _T_ODD_LIMIT:
            raise Uint128Overflow(f"3*{m} + 1 exceeds 128 bits")
        return (3 * m + 1) >> 1
    return m >> 1


def iterate(m: int, i: int) -> int:
    """T^i(m), with T^0(m) = m."""
    if i < 0:
        raise ValueError(f"iteration count must be non-negative, got {i}")
    for _ in range(i):
        m = collatz_t(m)
    return m


def trajectory(m: int, max_steps: int = DEFAULT_MAX_STEPS) -> TrajectoryRecord:
    """Materialize iterates of m until 1, max_steps, or overflow."""
    if max_steps < 1:
        raise ValueError(f"max_steps must be positive, got {max_steps}")
    iterates = [m]
    cur = m
    status = Resolution.REACHED_ONE if cur == 1 else Resolution.BOUND_EXCEEDED
    for _ in range(max_steps):
        if cur == 1:
            break
        try:
            cur = collatz_t(cur)
        except Uint128Overflow:
            status = Resolution.OVERFLOW
            break
        iterates.append(cur)
        if cur == 1:
            status = Resolution.REACHED_ONE
            break
    return TrajectoryRecord(start=m, iterates=iterates, status=status)


def parity_vector(m: int, length: int) -> list[int]:
    """First `length` parities of the trajectory of m (0 even, 1 odd)."""
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    out = []
    cur = m
    for _ in range(length):
        out.append(cur & 1)
        cur = collatz_t(cur)
    return out


def total_stopping_time(m: int, max_steps: int = DEFAULT_MAX_STEPS) -> SigmaValue:
    """Least k with T^k(m) = 1, searched up to max_steps; streams without
    storing the trajectory."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    cur = m
    for k in range(max_steps + 1):
        if cur == 1:
            return SigmaValue.finite(k)
        try:
            cur = collatz_t(cur)
        except Uint128Overflow:
            return SigmaValue.overflow()
    return SigmaValue.unresolved()


def v2(n: int) -> int:
    """2-adic valuation: largest j with 2^j | n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return (n & -n).bit_length() - 1


def decompose_odd(m: int) -> OddDecomposition:
    """Decompose odd m >= 3 as 2^p * (2q + 1) - 1 with all derived symbols."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"decompose_odd needs an odd m >= 3, got {m}")
    p = v2(m + 1)
    odd_part = (m + 1) >> p
    q = (odd_part - 1) >> 1
    n = (m + 1) >> 1
    j = p - 1
    k = odd_part
    return OddDecomposition(
        m=m, n=n, p=p, q=q,
        j=j, k=k,
        r=j >> 1, s=j & 1,
        t=k >> 2, u=k & 3,
    )
