import math

import numpy as np
import pytest

from oracles import is_prime_trial, primes_trial
from primedensity import (DomainError, FDataset, FSample, FitParams,
                          PUBLISHED_FIT, PiSource, PiValue, Provenance,
                          build_dataset, correction_profile, dataset_from_csv,
                          dataset_to_csv, f_exact, f_hat, published_dataset,
                          residual_table, scan_discontinuities, sieve_primes)

# exact counts at 10**n for the dataset-construction tests
_COUNTS = {1: 4, 2: 25, 3: 168, 4: 1229}


def _source(n: int) -> PiValue | None:
    if n in _COUNTS:
        return PiValue(10 ** n, _COUNTS[n], PiSource.EMBEDDED)
    return None


class TestFExact:
    def test_hundred(self):
        assert f_exact(100.0, 25) == pytest.approx(0.6051701859880918, rel=1e-15)
        assert abs(f_exact(100.0, 25) - 0.60517019) < 1e-8

    def test_ten_is_negative(self):
        value = f_exact(10.0, 4)
        assert value == pytest.approx(-0.1974149070059541, rel=1e-15)
        assert abs(value + 0.19741491) < 1e-8   # printed magnitude, opposite sign

    def test_ten_thousand(self):
        value = f_exact(1e4, 1229)
        assert value == pytest.approx(1.0736438707556797, rel=1e-15)
        assert abs(value - 1.07364387) < 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            f_exact(100.0, 0)
        with pytest.raises(DomainError):
            f_exact(1.0, 1)


class TestFDataset:
    def test_sorts_and_rejects_duplicates(self):
        a = FSample(100.0, 2.0, 0.6, Provenance.PUBLISHED)
        b = FSample(10.0, 1.0, -0.2, Provenance.PUBLISHED)
        ds = FDataset([a, b])
        assert [s.y for s in ds] == [1.0, 2.0]
        with pytest.raises(DomainError):
            FDataset([a, a])


class TestBuildDataset:
    def test_computed_rows_match_printed_to_eight_decimals(self):
        ds = build_dataset(4, _source)
        assert len(ds) == 4
        printed = {2: 0.60517019, 3: 0.95537433, 4: 1.07364387}
        for s in ds:
            assert s.provenance is Provenance.COMPUTED_FROM_PI
            n = int(round(s.y))
            if n in printed:
                assert abs(s.f - printed[n]) < 1e-8, n
        assert ds.samples[0].f == pytest.approx(-0.1974149070059541, rel=1e-15)

    def test_full_published_table(self):
        ds = build_dataset(22, lambda n: None)
        assert len(ds) == 22
        assert all(s.provenance is Provenance.PUBLISHED for s in ds)
        assert ds.samples[0].f == -0.19741491      # sign-corrected by default
        assert ds.samples[-1].f == 1.02102214

    def test_published_sign_flag(self):
        ds = build_dataset(22, _source, published_sign_at_ten=True)
        assert ds.samples[0].f == 0.19741491
        assert ds.samples[0].provenance is Provenance.PUBLISHED

    def test_single_sample(self):
        ds = build_dataset(1, _source)
        assert len(ds) == 1

    def test_exponents_beyond_table_absent(self):
        ds = build_dataset(25, lambda n: None)
        assert len(ds) == 22

    def test_source_call_order_irrelevant(self):
        calls: list[int] = []

        def recording(n: int) -> PiValue | None:
            calls.append(n)
            return _source(n)

        first = build_dataset(6, recording)
        second = build_dataset(6, _source)
        assert first == second

    def test_published_dataset_variants(self):
        corrected = published_dataset()
        printed = published_dataset(corrected=False)
        assert corrected.samples[0].f == -printed.samples[0].f
        assert corrected.samples[1:] == printed.samples[1:]


class TestScanDiscontinuities:
    def test_figure_window(self):
        assert scan_discontinuities(2, 20).tolist() == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_empty_window(self):
        assert scan_discontinuities(24, 28).tolist() == []

    def test_interior_window(self):
        assert scan_discontinuities(89, 97).tolist() == primes_trial(89, 97)

    def test_jump_iff_prime_exhaustive(self):
        jumps = set(scan_discontinuities(2, 3000).tolist())
        for n in range(3, 3001):
            assert (n in jumps) == is_prime_trial(n), n

    def test_matches_sieve_table(self):
        assert np.array_equal(scan_discontinuities(2, 10 ** 4),
                              sieve_primes(10 ** 4).primes())

    def test_domain(self):
        with pytest.raises(DomainError):
            scan_discontinuities(1, 10)
        with pytest.raises(DomainError):
            scan_discontinuities(30, 20)


class TestCorrectionProfile:
    def test_values_match_definition(self):
        ns, fs = correction_profile(2, 30)
        pi = 0
        for n, f in zip(ns.tolist(), fs.tolist()):
            pi += is_prime_trial(n)
            assert f == pytest.approx(math.log(n) - n / pi, rel=1e-15), n

    def test_interior_start_uses_absolute_count(self):
        ns, fs = correction_profile(97, 110)
        assert fs[0] == pytest.approx(f_exact(97.0, 25), rel=1e-15)

    def test_jumps_exactly_at_primes(self):
        ns, fs = correction_profile(2, 200)
        diffs = np.diff(fs)
        jump_points = ns[1:][np.abs(diffs) > 0.008]
        interior_primes = [n for n in jump_points.tolist() if is_prime_trial(n)]
        assert interior_primes == jump_points.tolist()


class TestResidualTable:
    def test_exact_model_gives_zero_sse(self):
        params = FitParams(0.7, -5.0, -1.0, 1.0)
        samples = [FSample(10.0 ** n, float(n), f_hat(float(n), params),
                           Provenance.COMPUTED_FROM_PI) for n in range(1, 9)]
        report = residual_table(FDataset(samples), params)
        assert report.sse <= 1e-20

    def test_single_sample(self):
        ds = FDataset([FSample(100.0, 2.0, 0.7, Provenance.PUBLISHED)])
        report = residual_table(ds, PUBLISHED_FIT)
        _, f, fh, resid = report.rows[0]
        assert resid == f - fh
        assert report.sse == pytest.approx(resid ** 2, rel=1e-15)

    def test_published_baseline(self):
        # independent recomputation of the published-parameter SSE
        report = residual_table(published_dataset(), PUBLISHED_FIT)
        expected = math.fsum(
            (s.f - (0.7013 / s.y - 4.964 * math.exp(-0.9677 * s.y) + 0.98)) ** 2
            for s in published_dataset())
        assert report.sse == pytest.approx(expected, rel=1e-12)
        assert report.sse == pytest.approx(0.0013683431954168203, rel=1e-12)

    def test_empty_dataset_rejected(self):
        with pytest.raises(DomainError):
            residual_table(FDataset([]), PUBLISHED_FIT)


class TestDatasetCsv:
    def test_round_trip(self):
        ds = build_dataset(22, _source)
        text = dataset_to_csv(ds)
        assert dataset_from_csv(text) == ds

    def test_header_and_provenance_column(self):
        text = dataset_to_csv(published_dataset())
        lines = text.splitlines()
        assert lines[0] == "exponent,x,y,f,provenance"
        assert lines[1].endswith("published")
        assert len(lines) == 23

    def test_bad_header_rejected(self):
        with pytest.raises(DomainError):
            dataset_from_csv("a,b,c\n1,2,3\n")
