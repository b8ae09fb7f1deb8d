"""Cross-checks between the compiled and pure-Python kernel backends.

The compiled module may be absent (source checkout without a build); in
that case these tests are skipped and the rest of the suite runs on the
pure backend anyway.
"""

import numpy as np
import pytest

from collatz_clusters import _kernels_py as pure

compiled = pytest.importorskip("collatz_clusters._kernels")

NOT_DONE = pure.SIGMA_NOT_DONE


def _fill(backend, lo, hi, max_steps=10_000):
    values = np.full(hi - lo, NOT_DONE, dtype="<u4")
    backend.sigma_fill(values, lo, 0, hi - lo, max_steps)
    return values


def test_sentinel_constants_agree():
    assert compiled.SIGMA_UNRESOLVED == pure.SIGMA_UNRESOLVED
    assert compiled.SIGMA_OVERFLOW == pure.SIGMA_OVERFLOW
    assert compiled.SIGMA_NOT_DONE == pure.SIGMA_NOT_DONE


@pytest.mark.parametrize("lo,hi", [(1, 4000), (100, 3100), (7, 8), (2, 3)])
def test_sigma_fill_agrees(lo, hi):
    assert (_fill(compiled, lo, hi) == _fill(pure, lo, hi)).all()


def test_sigma_fill_tight_bound_agrees():
    assert (_fill(compiled, 2, 500, max_steps=6)
            == _fill(pure, 2, 500, max_steps=6)).all()


def test_sigma_fill_partial_chunks_agree():
    values_c = np.full(1000, NOT_DONE, dtype="<u4")
    values_p = values_c.copy()
    for a, b in [(0, 250), (250, 700), (700, 1000)]:
        compiled.sigma_fill(values_c, 50, a, b, 10_000)
        pure.sigma_fill(values_p, 50, a, b, 10_000)
    assert (values_c == values_p).all()


def test_scans_agree_and_are_empty():
    assert compiled.ceq_scan(1, 50_000) == pure.ceq_scan(1, 50_000) == []
    assert compiled.theorem1_scan(2, 20_000) == pure.theorem1_scan(2, 20_000) == []
    assert compiled.theorem2_scan(2, 20_000) == pure.theorem2_scan(2, 20_000) == []
    assert compiled.lemma1_scan(3, 20_000) == pure.lemma1_scan(3, 20_000) == []


def test_scan_bounds_clamp_alike():
    assert compiled.theorem1_scan(0, 10) == pure.theorem1_scan(0, 10)
    assert compiled.lemma1_scan(0, 10) == pure.lemma1_scan(0, 10)
