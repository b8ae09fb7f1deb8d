"""Range engine: memoized stopping-time sieve, cluster runs, converse
counterexample search, and the range verification suite.

The sieve stores one uint32 per integer with two reserved sentinels
(unresolved / overflow).  Chunks may be processed by any number of workers
in any order; every entry is written exactly once and memo lookups consult
only strictly lower indices, so the finished table (and everything derived
from it) is bit-identical regardless of scheduling.
"""

from __future__ import annotations

import struct
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .cfunc import c_closed, c_recursive
from .core import (
    DEFAULT_MAX_STEPS,
    SigmaValue,
    collatz_t,
    decompose_odd,
    total_stopping_time,
    v2,
)
from .theorems import (
    COROLLARY_IDS,
    VerificationReport,
    corollary_verify,
    lemma2_is_exceptional,
)

SIGMA_UNRESOLVED = 0xFFFFFFFF
SIGMA_OVERFLOW = 0xFFFFFFFE
_SIGMA_NOT_DONE = 0xFFFFFFFD
_SENTINEL_MIN = _SIGMA_NOT_DONE

DEFAULT_CHUNK_SIZE = 1 << 16

CACHE_MAGIC = b"CSV1"
CACHE_VERSION = 1
_CACHE_HEADER = struct.Struct("<QQI")  # start, count, max_steps


class CacheFormatError(ValueError):
    """Sieve cache file is malformed or fails its CRC."""


def _decode(raw: int) -> SigmaValue:
    if raw == SIGMA_UNRESOLVED:
        return SigmaValue.unresolved()
    if raw == SIGMA_OVERFLOW:
        return SigmaValue.overflow()
    return SigmaValue.finite(raw)


@dataclass
class SigmaTable:
    """Dense total-stopping-time values over [start, start + len(values))."""

    start: int
    values: np.ndarray  # uint32, little-endian
    max_steps: int

    @property
    def stop(self) -> int:
        return self.start + len(self.values)

    def __contains__(self, m: int) -> bool:
        return self.start <= m < self.stop

    def sigma(self, m: int) -> SigmaValue:
        if m not in self:
            raise IndexError(f"{m} outside table [{self.start}, {self.stop})")
        return _decode(int(self.values[m - self.start]))


@dataclass(frozen=True)
class ClusterRun:
    first: int
    length: int
    sigma: int


@dataclass(frozen=True)
class ConverseWitness:
    """n with C(n) = 0 whose pair (2n - 2, 2n - 1) still forms a cluster;
    the trajectories merge only after step p + 2."""

    n: int
    sigma: int
    c_of_n: int
    coincidence_index: int
    p: int


def sieve_sigma(lo: int, hi: int, max_steps: int = DEFAULT_MAX_STEPS,
                chunk_size: int = DEFAULT_CHUNK_SIZE,
                workers: int = 1) -> SigmaTable:
    """Compute total stopping times for every m in [lo, hi)."""
    if lo < 1 or hi <= lo:
        raise ValueError(f"need 1 <= lo < hi, got [{lo}, {hi})")
    if chunk_size < 1 or workers < 1:
        raise ValueError("chunk_size and workers must be positive")
    count = hi - lo
    values = np.full(count, _SIGMA_NOT_DONE, dtype="<u4")
    bounds = [(i, min(i + chunk_size, count)) for i in range(0, count, chunk_size)]
    if workers == 1 or len(bounds) == 1:
        for i_lo, i_hi in bounds:
            kernels.sigma_fill(values, lo, i_lo, i_hi, max_steps)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(kernels.sigma_fill, values, lo, i_lo, i_hi,
                                   max_steps)
                       for i_lo, i_hi in bounds]
            for f in futures:
                f.result()
    return SigmaTable(start=lo, values=values, max_steps=max_steps)


def write_cache(table: SigmaTable, path) -> None:
    """Persist a table: magic + version + header + payload + CRC32(payload)."""
    payload = table.values.astype("<u4", copy=False).tobytes()
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(bytes([CACHE_VERSION]))
        fh.write(_CACHE_HEADER.pack(table.start, len(table.values),
                                    table.max_steps))
        fh.write(payload)
        fh.write(struct.pack("<I", zlib.crc32(payload)))


def read_cache(path) -> SigmaTable:
    """Load a sieve cache, validating magic, version, length, and CRC."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != CACHE_MAGIC:
        raise CacheFormatError("bad magic bytes")
    if len(data) < 5 + _CACHE_HEADER.size + 4:
        raise CacheFormatError("truncated header")
    if data[4] != CACHE_VERSION:
        raise CacheFormatError(f"unsupported version {data[4]}")
    start, count, max_steps = _CACHE_HEADER.unpack_from(data, 5)
    body = 5 + _CACHE_HEADER.size
    expected = body + 4 * count + 4
    if len(data) != expected:
        raise CacheFormatError(
            f"expected {expected} bytes for {count} entries, got {len(data)}")
    payload = data[body:body + 4 * count]
    (crc,) = struct.unpack_from("<I", data, body + 4 * count)
    if crc != zlib.crc32(payload):
        raise CacheFormatError("payload CRC mismatch")
    values = np.frombuffer(payload, dtype="<u4").copy()
    return SigmaTable(start=start, values=values, max_steps=max_steps)


def find_clusters(table: SigmaTable, min_length: int = 2) -> list[ClusterRun]:
    """Maximal runs of consecutive equal finite stopping times, in order."""
    if min_length < 2:
        raise ValueError(f"min_length must be >= 2, got {min_length}")
    vals = table.values
    n = len(vals)
    if n == 0:
        return []
    change = np.flatnonzero(vals[1:] != vals[:-1]) + 1
    starts = np.concatenate(([0], change))
    ends = np.concatenate((change, [n]))
    runs = []
    for s, e in zip(starts, ends):
        if e - s >= min_length and vals[s] < _SENTINEL_MIN:
            runs.append(ClusterRun(first=table.start + int(s),
                                   length=int(e - s), sigma=int(vals[s])))
    return runs


def coincidence_index(a: int, b: int,
                      max_steps: int = DEFAULT_MAX_STEPS) -> int | None:
    """Smallest i >= 1 with T^i(a) = T^i(b), or None within max_steps.
    Raises Uint128Overflow if either trajectory leaves the working width."""
    if a == b:
        raise ValueError("a and b must differ")
    for i in range(1, max_steps + 1):
        a = collatz_t(a)
        b = collatz_t(b)
        if a == b:
            return i
    return None


def find_converse_counterexamples(n_limit: int,
                                  max_steps: int = DEFAULT_MAX_STEPS,
                                  table: SigmaTable | None = None,
                                  chunk_size: int = DEFAULT_CHUNK_SIZE,
                                  workers: int = 1) -> list[ConverseWitness]:
    """All n in [4, n_limit] with C(n) = 0 whose pair (2n - 2, 2n - 1)
    nonetheless shares a finite stopping time.  Smallest such n is 121."""
    if n_limit < 4:
        raise ValueError(f"n_limit must be >= 4, got {n_limit}")
    if table is None:
        table = sieve_sigma(1, 2 * n_limit, max_steps=max_steps,
                            chunk_size=chunk_size, workers=workers)
    witnesses = []
    for n in range(4, n_limit + 1):
        if c_closed(n) != 0:
            continue
        sa = table.sigma(2 * n - 2)
        sb = table.sigma(2 * n - 1)
        if not (sa.is_finite and sb.is_finite and sa.steps == sb.steps):
            continue
        m = 2 * n - 1
        idx = coincidence_index(m - 1, m, max_steps)
        witnesses.append(ConverseWitness(
            n=n, sigma=sa.steps, c_of_n=0,
            coincidence_index=idx if idx is not None else -1,
            p=decompose_odd(m).p))
    return witnesses


# --- Range verification suite ----------------------------------------------

THEOREM_SELECTORS = ("t1", "t2", "lemma1", "lemma2", "c2", "c3", "c4", "c5",
                     "c6", "c7", "c8", "prop1", "prop2", "prop3", "ceq")

# The four-case table behind the closed form: (v2 parity, odd part mod 4) -> C
_FOUR_CASES = {(0, 1): 0, (0, 3): 1, (1, 1): 1, (1, 3): 0}


def _scan_report(name, lo, hi, witnesses, checked) -> VerificationReport:
    return VerificationReport(
        name=name, lo=lo, hi=hi, checked=checked,
        passes=checked - len(witnesses),
        violations=[{"n": int(w)} for w in witnesses])


def _verify_lemma2(lo, hi) -> VerificationReport:
    report = VerificationReport(name="lemma2", lo=lo, hi=hi)
    exceptional = []
    for n in range(max(lo, 2), hi):
        if c_closed(n) != 1:
            continue
        report.checked += 1
        hit = lemma2_is_exceptional(n)
        if hit:
            exceptional.append(n)
        if hit != (n in (2, 3)):
            report.violations.append({"n": n})
        else:
            report.passes += 1
    report.extra["exceptional"] = exceptional
    return report


def _verify_c2(lo, hi, max_steps, chunk_size, workers) -> VerificationReport:
    lo = max(lo, 4)
    report = VerificationReport(name="c2", lo=lo, hi=hi)
    table = sieve_sigma(1, 2 * hi, max_steps=max_steps,
                        chunk_size=chunk_size, workers=workers)
    for n in range(lo, hi):
        if c_closed(n) != 1:
            continue
        report.checked += 1
        sa = table.sigma(2 * n - 2)
        sb = table.sigma(2 * n - 1)
        if sa.is_finite and sb.is_finite:
            if sa.steps == sb.steps:
                report.passes += 1
            else:
                report.violations.append(
                    {"n": n, "sigmas": [sa.steps, sb.steps]})
        else:
            report.abstentions.append(n)
    return report


def _verify_props(name, lo, hi) -> VerificationReport:
    from .cfunc import c_prop1_checks, c_prop2_check

    report = VerificationReport(name=name, lo=max(lo, 1), hi=hi)
    for n in range(report.lo, hi):
        report.checked += 1
        if name == "prop1":
            ok = c_prop1_checks(n)
        elif name == "prop2":
            ok = c_prop2_check(n)
        else:  # prop3: recursion agrees with the four-case table
            j = v2(n)
            ok = c_recursive(n) == _FOUR_CASES[(j & 1, (n >> j) & 3)]
        if ok:
            report.passes += 1
        else:
            report.violations.append({"n": n})
    return report


def run_verification_suite(lo: int, hi: int, selectors=THEOREM_SELECTORS,
                           max_steps: int = DEFAULT_MAX_STEPS,
                           chunk_size: int = DEFAULT_CHUNK_SIZE,
                           workers: int = 1) -> dict[str, VerificationReport]:
    """Run the selected statement checks over [lo, hi).

    The range is over n for theorem/lemma/prop selectors and over the
    corollary index i for c3..c8.  Output is deterministic for any
    chunk_size / workers combination.
    """
    reports: dict[str, VerificationReport] = {}
    table = None
    if any(s in COROLLARY_IDS for s in selectors):
        # largest member referenced by any corollary form at index hi - 1
        table = sieve_sigma(1, 32 * hi + 18, max_steps=max_steps,
                            chunk_size=chunk_size, workers=workers)

    def table_sigma(m):
        if table is not None and m in table:
            return table.sigma(m)
        return total_stopping_time(m, max_steps)

    for sel in selectors:
        if sel == "ceq":
            eff = max(lo, 1)
            bad = kernels.ceq_scan(eff, hi)
            reports[sel] = _scan_report("ceq", eff, hi, bad,
                                        max(0, hi - eff))
        elif sel == "t1":
            eff = max(lo, 2)
            bad = kernels.theorem1_scan(eff, hi)
            reports[sel] = _scan_report("t1", eff, hi, bad,
                                        max(0, hi - eff))
        elif sel == "t2":
            eff = max(lo, 2)
            bad = kernels.theorem2_scan(eff, hi)
            reports[sel] = _scan_report("t2", eff, hi, bad,
                                        max(0, hi - eff))
        elif sel == "lemma1":
            # range over n; lemma 1 speaks about odd m = 2n - 1
            eff = max(lo, 2)
            bad = kernels.lemma1_scan(2 * eff - 1, max(2 * eff - 1, 2 * hi - 1))
            reports[sel] = _scan_report("lemma1", eff, hi, bad,
                                        max(0, hi - eff))
        elif sel == "lemma2":
            reports[sel] = _verify_lemma2(lo, hi)
        elif sel == "c2":
            reports[sel] = _verify_c2(lo, hi, max_steps, chunk_size, workers)
        elif sel in COROLLARY_IDS:
            reports[sel] = corollary_verify(sel, max(lo, 1), hi,
                                            max_steps=max_steps,
                                            sigma=table_sigma)
        elif sel in ("prop1", "prop2", "prop3"):
            reports[sel] = _verify_props(sel, lo, hi)
        else:
            raise ValueError(f"unknown selector {sel!r}")
    return reports
