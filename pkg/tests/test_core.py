import pytest
from hypothesis import given, strategies as st

from collatz_clusters import (
    Resolution,
    SigmaKind,
    Uint128Overflow,
    collatz_t,
    decompose_odd,
    iterate,
    parity_vector,
    total_stopping_time,
    trajectory,
    v2,
)

U128_MAX = (1 << 128) - 1


def oracle_step(m):
    """Independent restatement of the shortcut map for cross-checking."""
    return m // 2 if m % 2 == 0 else (3 * m + 1) // 2


def oracle_sigma(m, bound=100_000):
    k = 0
    while m != 1:
        m = oracle_step(m)
        k += 1
        assert k <= bound
    return k


class TestCollatzT:
    def test_definition_values(self):
        assert collatz_t(15) == 23
        assert collatz_t(2) == 1
        # (3*241 + 1) / 2, also on the oracle path
        assert collatz_t(241) == 362 == oracle_step(241)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            collatz_t(0)

    def test_overflow_raises(self):
        with pytest.raises(Uint128Overflow):
            collatz_t(U128_MAX)  # odd, 3m + 1 leaves 128 bits

    def test_largest_safe_odd(self):
        limit = (U128_MAX - 1) // 3
        m = limit if limit % 2 == 1 else limit - 1
        assert collatz_t(m) == (3 * m + 1) // 2
        with pytest.raises(Uint128Overflow):
            collatz_t(m + 2)

    @given(st.integers(min_value=1, max_value=10**6))
    def test_even_odd_forms(self, x):
        assert collatz_t(2 * x) == x
        assert collatz_t(2 * x - 1) == 3 * x - 1


class TestIterate:
    def test_paper_iterates(self):
        assert iterate(15, 6) == 20
        assert iterate(14, 6) == 20
        assert iterate(31, 7) == 182

    @given(st.integers(min_value=1, max_value=10**6))
    def test_identity(self, m):
        assert iterate(m, 0) == m

    @given(st.integers(min_value=1, max_value=10**5),
           st.integers(min_value=0, max_value=30),
           st.integers(min_value=0, max_value=30))
    def test_composition(self, m, i, j):
        assert iterate(iterate(m, i), j) == iterate(m, i + j)


class TestTrajectory:
    def test_reaches_one(self):
        rec = trajectory(2, 10)
        assert rec.iterates == [2, 1]
        assert rec.status is Resolution.REACHED_ONE

    def test_paper_fifteen(self):
        rec = trajectory(15, 100)
        assert len(rec.iterates) == 13
        assert rec.iterates[12] == 1
        assert rec.status is Resolution.REACHED_ONE

    def test_bound_exceeded(self):
        rec = trajectory(27, 5)
        assert len(rec.iterates) == 6
        assert rec.status is Resolution.BOUND_EXCEEDED

    def test_start_at_one(self):
        rec = trajectory(1, 10)
        assert rec.iterates == [1]
        assert rec.status is Resolution.REACHED_ONE

    @given(st.integers(min_value=1, max_value=10**5))
    def test_consecutive_step_invariant(self, m):
        rec = trajectory(m, 50)
        for a, b in zip(rec.iterates, rec.iterates[1:]):
            assert b == collatz_t(a)


class TestParityVector:
    def test_examples(self):
        assert parity_vector(1, 3) == [1, 0, 1]
        assert parity_vector(14, 4) == [0, 1, 1, 1]
        assert parity_vector(2**5, 5) == [0] * 5


class TestTotalStoppingTime:
    def test_paper_values(self):
        assert total_stopping_time(15).steps == 12
        assert total_stopping_time(14).steps == 12
        assert total_stopping_time(31).steps == 67
        assert total_stopping_time(30).steps == 13
        assert total_stopping_time(240).steps == 16
        assert total_stopping_time(241).steps == 16

    def test_powers_of_two(self):
        for n in range(21):
            assert total_stopping_time(2**n).steps == n

    def test_unresolved_under_tight_bound(self):
        sv = total_stopping_time(27, max_steps=5)
        assert sv.kind is SigmaKind.UNRESOLVED

    def test_minimality_against_trajectory(self):
        for m in range(1, 2000):
            sv = total_stopping_time(m)
            rec = trajectory(m, 10_000)
            assert rec.iterates[sv.steps] == 1
            assert 1 not in rec.iterates[: sv.steps] or m == 1

    @given(st.integers(min_value=1, max_value=50_000))
    def test_against_oracle(self, m):
        assert total_stopping_time(m).steps == oracle_sigma(m)


class TestV2:
    def test_examples(self):
        assert v2(8) == 3
        assert v2(121) == 0
        assert v2(2**4 * 7) == 4

    @given(st.integers(min_value=1, max_value=10**9))
    def test_exact_division(self, n):
        j = v2(n)
        assert n % (1 << j) == 0
        assert (n >> j) % 2 == 1


class TestDecomposeOdd:
    def test_paper_examples(self):
        d = decompose_odd(15)
        assert (d.p, d.q, d.n) == (4, 0, 8)
        d = decompose_odd(31)
        assert (d.p, d.q, d.n) == (5, 0, 16)
        d = decompose_odd(3)
        assert (d.p, d.q, d.n) == (2, 0, 2)

    def test_rejects_even_and_small(self):
        for m in (1, 2, 4, -3):
            with pytest.raises(ValueError):
                decompose_odd(m)

    @given(st.integers(min_value=1, max_value=10**8))
    def test_roundtrip_and_symbols(self, half):
        m = 2 * half + 1
        d = decompose_odd(m)
        assert (1 << d.p) * (2 * d.q + 1) - 1 == m
        assert (m + 1) % (1 << d.p) == 0
        assert ((m + 1) >> d.p) % 2 == 1
        assert d.n == (1 << d.j) * d.k
        assert v2(d.n) == d.j
        assert d.j == 2 * d.r + d.s and d.s in (0, 1)
        assert d.k == 4 * d.t + d.u and d.u in (1, 3)
        assert d.r >= 0 and d.t >= 0
