import numpy as np
import pytest

from collatz_clusters import (
    SigmaKind,
    coincidence_index,
    find_clusters,
    find_converse_counterexamples,
    read_cache,
    run_verification_suite,
    sieve_sigma,
    total_stopping_time,
    write_cache,
)
from collatz_clusters.scanner import (
    CacheFormatError,
    SIGMA_UNRESOLVED,
    SigmaTable,
)


class TestSieve:
    def test_powers_of_two(self):
        t = sieve_sigma(1, 33)
        for n in range(6):
            assert t.sigma(2**n).steps == n

    def test_paper_pairs(self):
        t = sieve_sigma(14, 16)
        assert t.sigma(14).steps == t.sigma(15).steps == 12
        t = sieve_sigma(240, 242)
        assert t.sigma(240).steps == t.sigma(241).steps == 16

    def test_memoization_soundness(self):
        t = sieve_sigma(2, 20_000)
        rng = np.random.default_rng(7)
        for m in rng.integers(2, 20_000, size=300):
            m = int(m)
            assert t.sigma(m).steps == total_stopping_time(m).steps

    def test_unresolved_sentinel(self):
        t = sieve_sigma(27, 28, max_steps=5)
        assert t.sigma(27).kind is SigmaKind.UNRESOLVED
        assert int(t.values[0]) == SIGMA_UNRESOLVED

    def test_monotone_consistency(self):
        # sigma(m) = sigma(T(m)) + 1 whenever both land in the table
        from collatz_clusters import collatz_t

        t = sieve_sigma(1, 5000)
        for m in range(2, 5000):
            tm = collatz_t(m)
            if tm in t:
                assert t.sigma(m).steps == t.sigma(tm).steps + 1

    def test_determinism_across_scheduling(self):
        base = sieve_sigma(2, 30_000, chunk_size=4096, workers=1).values
        for workers, chunk in [(2, 4096), (8, 4096), (1, 517), (8, 30_000)]:
            other = sieve_sigma(2, 30_000, chunk_size=chunk,
                                workers=workers).values
            assert (other == base).all(), (workers, chunk)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            sieve_sigma(10, 10)
        with pytest.raises(ValueError):
            sieve_sigma(0, 5)


class TestClusters:
    def test_paper_pair_run(self):
        runs = find_clusters(sieve_sigma(14, 16), 2)
        assert runs and runs[0].first == 14 and runs[0].sigma == 12
        assert runs[0].length >= 2

    def test_triple_run(self):
        from collatz_clusters import ClusterRun

        runs = find_clusters(sieve_sigma(28, 31), 3)
        assert runs == [ClusterRun(first=28, length=3, sigma=13)]

    def test_distinct_values_empty(self):
        table = SigmaTable(start=10,
                           values=np.array([3, 7, 1, 9], dtype="<u4"),
                           max_steps=100)
        assert find_clusters(table, 2) == []

    def test_sentinels_never_cluster(self):
        table = SigmaTable(
            start=10,
            values=np.array([SIGMA_UNRESOLVED] * 4, dtype="<u4"),
            max_steps=100)
        assert find_clusters(table, 2) == []

    def test_maximality(self):
        t = sieve_sigma(2, 5000)
        runs = find_clusters(t, 2)
        for r in runs:
            left = r.first - 1
            right = r.first + r.length
            if left in t and t.sigma(left).is_finite:
                assert t.sigma(left).steps != r.sigma
            if right in t and t.sigma(right).is_finite:
                assert t.sigma(right).steps != r.sigma


class TestCoincidence:
    def test_paper_values(self):
        assert coincidence_index(240, 241) == 10
        assert coincidence_index(14, 15) == 6

    def test_mersenne_steps(self):
        for r in range(1, 11):
            m = (1 << (2 * r)) - 1
            assert coincidence_index(m - 1, m) == 2 * r + 2

    def test_equal_inputs_rejected(self):
        with pytest.raises(ValueError):
            coincidence_index(5, 5)

    def test_unresolved(self):
        assert coincidence_index(27, 31, max_steps=3) is None


class TestConverseCounterexamples:
    def test_smallest_witness(self):
        witnesses = find_converse_counterexamples(121)
        assert len(witnesses) == 1
        w = witnesses[0]
        assert (w.n, w.sigma, w.coincidence_index, w.c_of_n) == (121, 16, 10, 0)

    def test_none_below(self):
        assert find_converse_counterexamples(120) == []

    def test_witness_invariants_to_5000(self):
        for w in find_converse_counterexamples(5000):
            from collatz_clusters import c_closed

            assert c_closed(w.n) == 0
            assert total_stopping_time(2 * w.n - 2).steps == w.sigma
            assert total_stopping_time(2 * w.n - 1).steps == w.sigma
            # merging at p + 2 or earlier would force C(n) = 1
            assert w.coincidence_index > w.p + 2


class TestCache:
    def test_round_trip(self, tmp_path):
        t = sieve_sigma(2, 5000)
        path = tmp_path / "sigma.bin"
        write_cache(t, path)
        back = read_cache(path)
        assert back.start == t.start
        assert back.max_steps == t.max_steps
        assert (back.values == t.values).all()

    def test_layout(self, tmp_path):
        t = sieve_sigma(5, 9, max_steps=77)
        path = tmp_path / "sigma.bin"
        write_cache(t, path)
        data = path.read_bytes()
        assert data[:4] == b"CSV1"
        assert data[4] == 1
        assert len(data) == 5 + 20 + 4 * 4 + 4
        import struct

        start, count, max_steps = struct.unpack_from("<QQI", data, 5)
        assert (start, count, max_steps) == (5, 4, 77)

    def test_crc_detects_corruption(self, tmp_path):
        t = sieve_sigma(2, 100)
        path = tmp_path / "sigma.bin"
        write_cache(t, path)
        data = bytearray(path.read_bytes())
        data[40] ^= 0xFF
        path.write_bytes(bytes(data))
        with pytest.raises(CacheFormatError):
            read_cache(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "sigma.bin"
        path.write_bytes(b"NOPE" + bytes(40))
        with pytest.raises(CacheFormatError):
            read_cache(path)

    def test_truncation_detected(self, tmp_path):
        t = sieve_sigma(2, 100)
        path = tmp_path / "sigma.bin"
        write_cache(t, path)
        path.write_bytes(path.read_bytes()[:-3])
        with pytest.raises(CacheFormatError):
            read_cache(path)


class TestVerificationSuite:
    def test_all_selectors_clean(self):
        reports = run_verification_suite(2, 2000)
        for name, report in reports.items():
            assert not report.violations, (name, report.violations[:3])

    def test_lemma2_exceptional_set(self):
        report = run_verification_suite(2, 1000, selectors=("lemma2",))["lemma2"]
        assert report.extra["exceptional"] == [2, 3]

    def test_deterministic_reports(self):
        import json

        def run(workers, chunk):
            reports = run_verification_suite(
                2, 3000, selectors=("c2", "c3", "t2"),
                workers=workers, chunk_size=chunk)
            return json.dumps({k: r.to_dict() for k, r in reports.items()},
                              sort_keys=True)

        outputs = {run(w, c) for w, c in [(1, 4096), (4, 999), (8, 64)]}
        assert len(outputs) == 1

    def test_unknown_selector(self):
        with pytest.raises(ValueError):
            run_verification_suite(2, 10, selectors=("bogus",))
