import math
import time

import numpy as np
import pytest

from renyisharp.core.errors import DomainError, RenyiSharpError, ResourceError
from renyisharp.core.settings import SettingsManager
from renyisharp.measures import CondSource, bhattacharyya, cond_renyi, min_error
from renyisharp.measures.orders import HALF, INFINITY, SHANNON, TWO, ZERO, Order
from renyisharp.oracle import (
    ALL_CHECKS,
    CHECKS,
    BoundCheck,
    Sample,
    SourceBatch,
    VerificationReport,
    collect_batches,
    grid_count,
    grid_source_batch,
    grid_sources,
    random_sources,
    simplex_grid,
    verify_bound,
    verify_estimator_pe,
)
from renyisharp.oracle.checks import EstimatorCheck, IdentityCheck
from renyisharp.oracle.properties import is_nondecreasing, sign_changes


class TestSources:
    def test_grid_count(self):
        assert grid_count(2, 1, 0.5) == 3
        assert grid_count(2, 2, 0.5) == 9
        assert grid_count(3, 1, 0.25) == 15

    def test_simplex_grid(self):
        points = simplex_grid(3, 0.5)
        assert len(points) == 6
        for p in points:
            assert p.sum() == pytest.approx(1.0)
            assert np.all(p >= 0.0)
        assert {tuple(p) for p in points} >= {(1.0, 0.0, 0.0), (0.5, 0.5, 0.0), (0.0, 0.0, 1.0)}

    def test_grid_sources_match_count(self):
        sources = list(grid_sources(2, 2, 0.5))
        assert len(sources) == grid_count(2, 2, 0.5)
        assert all(s.k == 2 and s.n == 2 for s in sources)

    def test_grid_batch_matches_grid_sources(self):
        batch = grid_source_batch(3, 2, 0.5)
        sources = list(grid_sources(3, 2, 0.5))
        assert batch.size == len(sources) == grid_count(3, 2, 0.5)
        for i, src in enumerate(sources):
            np.testing.assert_array_equal(batch.py[i], src.py.masses)
            for y in range(src.k):
                np.testing.assert_array_equal(batch.channels[i, y], src.channels[y].masses)

    def test_grid_cap(self):
        with pytest.raises(ResourceError):
            list(grid_sources(4, 3, 0.05, cap=100))
        with pytest.raises(ResourceError):
            grid_source_batch(4, 3, 0.05, cap=100)

    @pytest.mark.parametrize("step", [0.0, 0.3, 1.5])
    def test_bad_step(self, step):
        with pytest.raises(DomainError):
            grid_count(2, 1, step)

    def test_random_sources_are_seeded(self):
        first = [s.to_csv_text() for s in random_sources(7, 5)]
        again = [s.to_csv_text() for s in random_sources(7, 5)]
        other = [s.to_csv_text() for s in random_sources(8, 5)]
        assert first == again
        assert first != other

    def test_random_limits(self):
        for src in random_sources(3, 30, max_n=3, max_k=2, min_n=3):
            assert src.n == 3
            assert 1 <= src.k <= 2
        with pytest.raises(DomainError):
            list(random_sources(1, 1, max_n=2, min_n=3))

    def test_estimator_matches_map(self, bsc):
        assert verify_estimator_pe(bsc) == pytest.approx(0.1)
        for src in random_sources(11, 20, max_n=3, max_k=3):
            assert verify_estimator_pe(src) == min_error(src)

    def test_estimator_cap(self):
        src = CondSource.from_channels([[0.5, 0.3, 0.2]] * 3)
        with pytest.raises(ResourceError):
            verify_estimator_pe(src, cap=10)

    def test_collect_batches(self, settings):
        batches = collect_batches(settings, seed=1, budget=5, grid_specs=[[2, 1, 0.5]])
        assert batches[0].size == 3
        assert sum(b.size for b in batches) == 3 + 5


class TestSourceBatch:
    @pytest.fixture
    def sources(self):
        return list(random_sources(21, 60, max_n=4, max_k=3))

    def test_groups_by_shape(self, sources):
        batches = SourceBatch.from_sources(sources)
        assert sum(b.size for b in batches) == len(sources)
        seen = sorted(int(i) for b in batches for i in b.index)
        assert seen == list(range(len(sources)))
        for b in batches:
            for row, i in enumerate(b.index):
                assert (sources[i].k, sources[i].n) == (b.k, b.n)
                assert b.source(row).to_csv_text() == sources[i].to_csv_text()

    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            SourceBatch(np.ones((2, 3)), np.ones((2, 2, 4)))

    @pytest.mark.parametrize("a", [ZERO, HALF, SHANNON, TWO, Order.of(3.5), INFINITY])
    def test_cond_renyi_agrees(self, sources, a):
        for b in SourceBatch.from_sources(sources):
            values = b.cond_renyi(a)
            for row, i in enumerate(b.index):
                assert values[row] == pytest.approx(cond_renyi(sources[i], a), rel=1e-12, abs=1e-14)

    def test_error_and_bhattacharyya_agree(self, sources):
        for b in SourceBatch.from_sources(sources):
            pe, z, sx = b.min_error(), b.bhattacharyya(), b.support_x()
            for row, i in enumerate(b.index):
                src = sources[i]
                assert pe[row] == pytest.approx(min_error(src), rel=1e-12, abs=1e-15)
                assert z[row] == pytest.approx(bhattacharyya(src), rel=1e-12, abs=1e-15)
                assert sx[row] == src.support_x()

    def test_bhattacharyya_needs_two_letters(self):
        (b,) = SourceBatch.from_sources([CondSource.from_channels([[1.0], [1.0]])])
        with pytest.raises(DomainError):
            b.bhattacharyya()

    def test_best_estimator_is_exactly_map(self, sources):
        for b in SourceBatch.from_sources(sources):
            hit = b.best_estimator_hit(chunk=7)
            np.testing.assert_array_equal(1.0 - hit, b.min_error())
            for row, i in enumerate(b.index):
                assert 1.0 - hit[row] == pytest.approx(verify_estimator_pe(sources[i]), abs=1e-15)

    def test_memoized(self, sources):
        (b, *_) = SourceBatch.from_sources(sources)
        assert b.cond_renyi(TWO) is b.cond_renyi(TWO)


class TestReport:
    def test_merge(self):
        left = VerificationReport("x", sources_scanned=2, max_violation=0.1, min_gap=0.3, grid_gaps={"a": 0.2})
        right = VerificationReport(
            "x", sources_scanned=3, min_gap=0.2, witness_gap=1e-10, errors=["e"], grid_gaps={"a": 0.1, "b": 0.4}
        )
        merged = left.merge(right)
        assert merged.sources_scanned == 5
        assert merged.max_violation == 0.1
        assert merged.min_gap == 0.2
        assert merged.witness_gap == 1e-10
        assert merged.errors == ["e"]
        assert merged.grid_gaps == {"a": 0.1, "b": 0.4}

    def test_passed(self):
        assert VerificationReport("x", needs_witness=False).passed
        assert not VerificationReport("x").passed
        assert VerificationReport("x", witness_gap=1e-12).passed
        assert not VerificationReport("x", witness_gap=1e-12, max_violation=1e-6).passed
        assert not VerificationReport("x", needs_witness=False, errors=["boom"]).passed

    def test_grid_touch_counts_as_sharp(self):
        report = VerificationReport(
            "x",
            witness_gap=1e-4,
            witness_gaps={"lower": 1e-12, "upper": 1e-4},
            grid_gaps={"upper": 5e-4},
        )
        assert report.passed
        report.sharp_tolerance_grid = 1e-4
        assert not report.passed
        report.grid_gaps = {}
        report.sharp_tolerance_grid = 1e-3
        assert not report.passed

    def test_add(self):
        report = VerificationReport("x")
        for slack in (0.5, -1e-3, 0.1, -1e-6):
            report.add(slack)
        assert report.max_violation == 1e-3
        assert report.min_gap == 0.1

    def test_add_many(self):
        report = VerificationReport("x")
        report.add_many(np.array([0.5, -1e-3, 0.1]), "lower")
        report.add_many(np.array([2e-4]), "lower")
        report.add_many(np.array([]), "upper")
        assert report.max_violation == 1e-3
        assert report.min_gap == 2e-4
        assert report.grid_gaps == {"lower": 2e-4}

    def test_to_dict(self):
        data = VerificationReport("x", needs_witness=False).to_dict()
        assert data["pass"] is True
        assert data["min_gap"] is None
        assert "checks" not in data


class _AlwaysViolated(BoundCheck):
    check_id = "always-violated"
    description = "test double"
    needs_witness = False

    def samples(self, batch, pairs):
        return [Sample("x", np.full(batch.size, -1.0), False)]


class _Exploding(BoundCheck):
    check_id = "exploding"
    description = "test double"
    needs_witness = False

    def samples(self, batch, pairs):
        raise RenyiSharpError("boom")


class _Undefined(BoundCheck):
    check_id = "undefined"
    description = "test double"
    needs_witness = False

    def samples(self, batch, pairs):
        return [Sample("x", np.full(batch.size, np.nan), False)]


class TestVerify:
    @pytest.mark.parametrize("check_id", ["identities", "estimator", "binary", "alpha-inf", "uv", "pe"])
    def test_checks_pass(self, settings, check_id):
        report = verify_bound(check_id, settings, threads=1)
        assert report.sources_scanned > 0
        assert report.errors == []
        assert report.passed, report.to_dict()

    def test_threads_agree(self, settings):
        one = verify_bound("identities", settings, threads=1, budget=600)
        two = verify_bound("identities", settings, threads=3, budget=600)
        assert one.sources_scanned == two.sources_scanned
        assert one.max_violation == two.max_violation

    def test_witness_is_reported(self, settings):
        report = verify_bound("binary", settings, threads=1)
        assert report.witness is not None
        assert report.witness_gap <= 1e-8
        assert report.witness_gaps
        assert max(report.witness_gaps.values()) == report.witness_gap

    def test_unknown_check(self, settings):
        with pytest.raises(ValueError):
            verify_bound("no-such-check", settings)

    def test_failures_are_report_content(self, settings, bsc):
        for check in (_AlwaysViolated, _Exploding, _Undefined):
            CHECKS.register(check.check_id, check)
        try:
            violated = verify_bound("always-violated", settings, sources=[bsc])
            exploded = verify_bound("exploding", settings, sources=[bsc])
            undefined = verify_bound("undefined", settings, sources=[bsc, bsc])
        finally:
            for check in (_AlwaysViolated, _Exploding, _Undefined):
                CHECKS.unregister(check.check_id)
        assert not violated.passed
        assert violated.max_violation == 1.0
        assert not exploded.passed
        assert "boom" in exploded.errors[0]
        assert not undefined.passed
        assert "2 undefined" in undefined.errors[0]

    def test_all(self, settings, monkeypatch):
        monkeypatch.setattr(CHECKS, "_entries", {"identities": IdentityCheck, "estimator": EstimatorCheck})
        report = verify_bound(ALL_CHECKS, settings, threads=1)
        assert report.passed
        assert [c["theorem_id"] for c in report.to_dict()["checks"]] == ["identities", "estimator"]

    def test_estimator_cap_setting(self, settings):
        settings.set("estimator_cap", 1)
        report = verify_bound("estimator", settings, threads=1)
        assert report.sources_scanned > 0
        assert report.min_gap == math.inf

        settings.set("estimator_cap", 1_000_000)
        report = verify_bound("estimator", settings, threads=1)
        assert report.min_gap == 0.0

    def test_grid_tolerance_setting(self, settings):
        loose = verify_bound("binary", settings, threads=1)
        assert loose.passed, loose.to_dict()
        settings.set("sharp_tol_grid", 0.0)
        settings.set("sharp_tol_witness", 0.0)
        strict = verify_bound("binary", settings, threads=1)
        assert strict.grid_gaps == loose.grid_gaps
        if loose.witness_gap > 0.0 and min(loose.grid_gaps.values()) > 0.0:
            assert not strict.passed

    def test_logs_to_file(self, settings):
        verify_bound("identities", settings, threads=1, budget=3)
        log_file = settings.get_log_file_path()
        assert log_file is not None and log_file.exists()
        assert "check identities: pass" in log_file.read_text(encoding="utf-8")


@pytest.mark.slow
def test_default_sweep_is_fast(tmp_path):
    settings = SettingsManager(settings_path=tmp_path / "settings.json", log_dir=tmp_path / "log")
    settings.set("threads", 1)
    started = time.perf_counter()
    report = verify_bound(ALL_CHECKS, settings)
    elapsed = time.perf_counter() - started
    assert report.passed, report.to_dict()
    assert report.sources_scanned >= 10_000
    assert elapsed < 60.0


class TestCheckTable:
    def test_list(self):
        ids = CHECKS.names()
        assert len(ids) == 17
        for check_id in ("renyi-v", "st", "uv", "fano", "pe", "z-pe", "h2-hhalf", "feasible", "estimator"):
            assert check_id in ids

    def test_duplicate_registration(self):
        with pytest.raises(ValueError):
            CHECKS.register("uv", IdentityCheck)

    def test_create(self):
        assert isinstance(CHECKS.create("identities"), IdentityCheck)


class TestProperties:
    def test_sign_changes(self):
        assert sign_changes([1, -1, 0, -2, 3]) == [1, 4]
        assert sign_changes([1e-20, -1e-20, 1.0], tol=1e-12) == []

    def test_nondecreasing(self):
        assert is_nondecreasing([0.0, 0.0, 1.0])
        assert not is_nondecreasing([0.0, 1.0, 0.5])


def test_feasible_check_on_bsc(bsc, settings):
    check = CHECKS.create("feasible")
    samples = check.evaluate(bsc, settings.order_pairs())
    assert len(samples) == 2 * len(settings.order_pairs())
    assert min(s.slack for s in samples) >= -1e-9
