"""Executable predicates for the cluster theorems and their families.

Each lemma/theorem/corollary about the pair (m - 1, m) = (2n - 2, 2n - 1)
becomes a checkable predicate returning structured evidence.  Range-scale
verification returns a :class:`VerificationReport`; a violation in any of
these reports would falsify the corresponding statement, so the expected
violation count is always zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .cfunc import c_closed
from .core import (
    DEFAULT_MAX_STEPS,
    SigmaValue,
    collatz_t,
    decompose_odd,
    iterate,
    total_stopping_time,
    v2,
)


class EquivalenceViolation(Exception):
    """A witness breaking the triple equivalence; must never fire."""


class PreconditionViolation(ValueError):
    """A predicate was called outside its stated hypothesis."""


@dataclass(frozen=True)
class Theorem1Classification:
    """The three equivalent views of an odd m = 2n - 1."""

    m: int
    tp_mod4: int          # T^p(m) mod 4, via the closed iterate formula
    same_parity: bool     # p = q (mod 2)
    c_of_n: int


@dataclass(frozen=True)
class CoincidenceResult:
    m: int
    steps: int            # p + 2
    coincides: bool
    lhs: int              # T^(p+2)(m - 1)
    rhs: int              # T^(p+2)(m)


@dataclass(frozen=True)
class FamilyMember:
    """One member of a parameterized integer family with a known C value.

    ``value`` is the generated integer; ``check_value`` is the integer whose
    C value the family pins down (equal to ``value`` except for garner2b,
    where the invariant lives on 9*value + 6).  ``excluded`` marks members
    outside the family's cluster-statement hypothesis.
    """

    family: str
    indices: tuple
    value: int
    check_value: int
    expected_c: int
    excluded: bool = False


@dataclass
class VerificationReport:
    """Pass/violation/abstention tally for one statement over a range."""

    name: str
    lo: int
    hi: int
    checked: int = 0
    passes: int = 0
    violations: list = field(default_factory=list)
    abstentions: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "range": [self.lo, self.hi],
            "checked": self.checked,
            "passes": self.passes,
            "violations": self.violations,
            "abstentions": self.abstentions,
            "extra": self.extra,
        }


SigmaFn = Callable[[int], SigmaValue]


def _default_sigma(max_steps: int) -> SigmaFn:
    return lambda m: total_stopping_time(m, max_steps)


def theorem1_classify(m: int) -> Theorem1Classification:
    """Classify odd m >= 3 three independent ways and assert they agree.

    T^p(m) mod 4 is evaluated from 3^p * (2q + 1) - 1 with 3^p mod 4 reduced
    to (-1)^p, so p need never be exponentiated.
    """
    d = decompose_odd(m)
    pow3_mod4 = 3 if d.p & 1 else 1
    tp_mod4 = (pow3_mod4 * (2 * d.q + 1) - 1) & 3
    same_parity = (d.p - d.q) % 2 == 0
    c = c_closed(d.n)
    if not ((tp_mod4 == 0) == same_parity == (c == 1)):
        raise EquivalenceViolation(
            f"m={m}: tp_mod4={tp_mod4}, same_parity={same_parity}, C(n)={c}"
        )
    return Theorem1Classification(m=m, tp_mod4=tp_mod4,
                                  same_parity=same_parity, c_of_n=c)


def theorem2_coincides(m: int) -> CoincidenceResult:
    """Do the trajectories of m - 1 and m meet at exactly step p + 2?"""
    d = decompose_odd(m)
    steps = d.p + 2
    lhs = iterate(m - 1, steps)
    rhs = iterate(m, steps)
    return CoincidenceResult(m=m, steps=steps, coincides=lhs == rhs,
                             lhs=lhs, rhs=rhs)


def lemma2_is_exceptional(n: int) -> bool:
    """For C(n) = 1: does the even trajectory hit 1 within the first p + 1
    steps?  True exactly for n in {2, 3}."""
    if n < 2:
        raise PreconditionViolation(f"n must be >= 2, got {n}")
    if c_closed(n) != 1:
        raise PreconditionViolation(f"lemma requires C(n) = 1, got n={n}")
    m = 2 * n - 1
    p = v2(m + 1)
    x = m - 1
    for _ in range(p + 1):
        x = collatz_t(x)
        if x == 1:
            return True
    return False


def corollary2_cluster_predicate(n: int, max_steps: int = DEFAULT_MAX_STEPS,
                                 sigma: SigmaFn | None = None) -> bool:
    """For n >= 4 with C(n) = 1: do 2n - 2 and 2n - 1 form a cluster?

    Both unresolved counts as holding (the statement's infinite branch);
    mixed finite/unresolved counts as failing.
    """
    if n < 4:
        raise PreconditionViolation(f"n must be >= 4, got {n}")
    if c_closed(n) != 1:
        raise PreconditionViolation(f"corollary requires C(n) = 1, got n={n}")
    sigma = sigma or _default_sigma(max_steps)
    sa = sigma(2 * n - 2)
    sb = sigma(2 * n - 1)
    if sa.is_finite and sb.is_finite:
        return sa.steps == sb.steps
    return not sa.is_finite and not sb.is_finite


# --- Parameterized families -------------------------------------------------

FAMILY_IDS = ("garner1", "garner2a", "garner2b", "mersenne")


def garner1_value(i: int, m: int) -> int:
    """n1(i, m) = 2^i * (4m + 2 + (-1)^i); C = 1 throughout."""
    return (1 << i) * (4 * m + 2 + (1 if i % 2 == 0 else -1))


def garner2a_value(j: int, m: int) -> int:
    """i(j, m) = 2^j * (4m + 2 + (-1)^(j+1)); C = 0 throughout."""
    return (1 << j) * (4 * m + 2 + (-1 if j % 2 == 0 else 1))


def garner2b_value(j: int, m: int) -> int:
    """The j-th member for parameter m, from the integer base cases
    i(0) = 4m + 1, i(1) = 8m + 4 and the recurrence i(j+2) = 4*i(j) + 2
    (equivalently 9*i(j+2) + 6 = 4 * (9*i(j) + 6)); C(9*i + 6) = 1."""
    val = 4 * m + 1 if j % 2 == 0 else 8 * m + 4
    for _ in range(j // 2):
        val = 4 * val + 2
    return val


def garner2b_closed(j: int, m: int) -> int:
    """Closed form of the garner2b member, valid for j >= 1:
    2^(j-1) * (8m + 3 + (-1)^(j+1)) + (2^(j-1) * (3 + (-1)^j) - 2) / 3."""
    if j < 1:
        raise ValueError("closed form requires j >= 1")
    sign = -1 if j % 2 == 0 else 1
    head = (1 << (j - 1)) * (8 * m + 3 + sign)
    tail_num = (1 << (j - 1)) * (3 - sign) - 2
    if tail_num % 3:
        raise AssertionError(f"non-integer closed form at j={j}, m={m}")
    return head + tail_num // 3


def mersenne_pair(r: int) -> tuple[int, int]:
    """(m, n) = (2^(2r) - 1, 2^(2r-1)) for r >= 1; C(n) = 1 and the
    trajectories of m - 1 and m meet at step 2r + 2."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return (1 << (2 * r)) - 1, 1 << (2 * r - 1)


def family_generate(family: str, index_max: int,
                    m_max: int = 0) -> list[FamilyMember]:
    """Enumerate a family over the grid index in [0, index_max],
    m in [0, m_max] (mersenne uses r in [1, index_max] and ignores m_max)."""
    if family not in FAMILY_IDS:
        raise ValueError(f"unknown family {family!r}")
    members = []
    if family == "mersenne":
        for r in range(1, index_max + 1):
            m, n = mersenne_pair(r)
            members.append(FamilyMember("mersenne", (r,), n, n, 1))
        return members
    for idx in range(index_max + 1):
        for m in range(m_max + 1):
            if family == "garner1":
                val = garner1_value(idx, m)
                members.append(FamilyMember("garner1", (idx, m), val, val, 1))
            elif family == "garner2a":
                val = garner2a_value(idx, m)
                members.append(
                    FamilyMember("garner2a", (idx, m), val, val, 0,
                                 excluded=(idx, m) == (0, 0)))
            else:
                val = garner2b_value(idx, m)
                members.append(
                    FamilyMember("garner2b", (idx, m), val, 9 * val + 6, 1))
    return members


# --- Corollaries 3-8 over index ranges --------------------------------------

# corollary id -> (hypothesis filter on i, the sigma-equal tuple at i)
_COROLLARY_FORMS: dict[str, tuple[Callable[[int], bool],
                                  Callable[[int], tuple[int, ...]]]] = {
    "c3": (lambda i: i >= 1, lambda i: (8 * i + 4, 8 * i + 5)),
    "c4": (lambda i: i >= 1, lambda i: (16 * i + 2, 16 * i + 3)),
    "c5": (lambda i: i >= 1 and c_closed(i) == 1,
           lambda i: (8 * i - 2, 8 * i - 1)),
    "c6": (lambda i: i >= 2 and c_closed(i) == 0,
           lambda i: (4 * i - 2, 4 * i - 1)),
    "c7": (lambda i: i >= 2 and c_closed(i) == 0,
           lambda i: (8 * i - 4, 8 * i - 3, 8 * i - 2)),
    "c8": (lambda i: i >= 1 and c_closed(9 * i + 6) == 1,
           lambda i: (32 * i + 17, 32 * i + 18)),
}

COROLLARY_IDS = tuple(_COROLLARY_FORMS)


def corollary_members(corollary_id: str, i: int) -> tuple[int, ...] | None:
    """The tuple of integers claimed to share a stopping time at index i,
    or None when i fails the corollary's hypothesis."""
    try:
        hypothesis, members = _COROLLARY_FORMS[corollary_id]
    except KeyError:
        raise ValueError(f"unknown corollary {corollary_id!r}") from None
    return members(i) if hypothesis(i) else None


def corollary_verify(corollary_id: str, i_lo: int, i_hi: int,
                     max_steps: int = DEFAULT_MAX_STEPS,
                     sigma: SigmaFn | None = None) -> VerificationReport:
    """Check one of corollaries c3..c8 for every index i in [i_lo, i_hi).

    Indices failing the hypothesis are skipped; unresolved stopping times
    are recorded as abstentions, never as passes or violations.
    """
    sigma = sigma or _default_sigma(max_steps)
    report = VerificationReport(name=corollary_id, lo=i_lo, hi=i_hi)
    for i in range(i_lo, i_hi):
        members = corollary_members(corollary_id, i)
        if members is None:
            continue
        report.checked += 1
        sigmas = [sigma(v) for v in members]
        if not all(s.is_finite for s in sigmas):
            report.abstentions.append(i)
        elif len({s.steps for s in sigmas}) == 1:
            report.passes += 1
        else:
            report.violations.append(
                {"i": i, "members": list(members),
                 "sigmas": [s.steps for s in sigmas]})
    return report


def corollary8_prefix_check(i: int) -> bool:
    """The eight explicit iterate identities behind the 32i+17 corollary."""
    if i < 1:
        raise ValueError(f"i must be >= 1, got {i}")
    m = 32 * i + 17
    expect_m = (48 * i + 26, 24 * i + 13, 36 * i + 20, 18 * i + 10)
    expect_m1 = (16 * i + 9, 24 * i + 14, 12 * i + 7, 18 * i + 11)
    a, b = m, m + 1
    for ea, eb in zip(expect_m, expect_m1):
        a = collatz_t(a)
        b = collatz_t(b)
        if a != ea or b != eb:
            return False
    return True
