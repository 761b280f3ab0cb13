import math

import pytest

from renyisharp.core.errors import DomainError
from renyisharp.measures import (
    HALF,
    INFINITY,
    SHANNON,
    TWO,
    ZERO,
    CondSource,
    ProbVec,
    bhattacharyya,
    cond_renyi,
    expected_norm,
    lr_norm,
    min_error,
    renyi_entropy,
)
from renyisharp.oracle.sources import random_sources, verify_estimator_pe

ORDERS = [ZERO, 0.3, HALF, SHANNON, TWO, 5.0, INFINITY]


@pytest.fixture
def deterministic():
    return CondSource.from_channels([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


@pytest.fixture
def uniform3():
    return CondSource.from_channels([[1 / 3] * 3, [1 / 3] * 3])


class TestCondSource:
    def test_shape(self, bsc):
        assert bsc.n == 2
        assert bsc.k == 2
        assert bsc.marginal_x().tolist() == pytest.approx([0.5, 0.5])
        assert bsc.support_x() == 2

    def test_zero_mass_y_rejected(self):
        with pytest.raises(DomainError):
            CondSource(ProbVec([1.0, 0.0]), (ProbVec([0.5, 0.5]), ProbVec([1.0, 0.0])))

    def test_channel_count_mismatch(self):
        with pytest.raises(DomainError):
            CondSource(ProbVec([0.5, 0.5]), (ProbVec([0.5, 0.5]),))

    def test_alphabet_mismatch(self):
        with pytest.raises(DomainError):
            CondSource.from_channels([[0.5, 0.5], [0.2, 0.3, 0.5]])

    def test_csv(self, bsc):
        src = CondSource.from_csv_text("py,x0,x1\n# comment\n0.5,0.9,0.1\n0.5,0.1,0.9\n")
        assert src.py.tolist() == [0.5, 0.5]
        assert [c.tolist() for c in src.channels] == [[0.9, 0.1], [0.1, 0.9]]
        again = CondSource.from_csv_text(bsc.to_csv_text())
        assert cond_renyi(again, TWO) == cond_renyi(bsc, TWO)

    def test_csv_file(self, tmp_path):
        path = tmp_path / "src.csv"
        path.write_text("0.25,1,0\n0.75,0.5,0.5\n", encoding="utf-8")
        src = CondSource.from_csv(path)
        assert src.k == 2
        assert min_error(src) == pytest.approx(0.375)

    def test_csv_errors(self):
        with pytest.raises(DomainError):
            CondSource.from_csv_text("# nothing\n")
        with pytest.raises(DomainError):
            CondSource.from_csv_text("1.0\n")
        with pytest.raises(DomainError):
            CondSource.from_csv_text("0.5,0.5,0.5\n0.5,x,0.5\n")

    @pytest.mark.parametrize(
        "text",
        [
            "0.5,x,0.5\n0.5,0.5,0.5\n",
            "py,0.9,0.1\n1.0,0.5,0.5\n",
            "0.5;0.9;0.1\n0.5,0.1,0.9\n",
            "py,x0,x1\npy,x0,x1\n1.0,0.5,0.5\n",
        ],
    )
    def test_malformed_first_row_is_not_a_header(self, text):
        with pytest.raises(DomainError):
            CondSource.from_csv_text(text)

    def test_labelled_header(self):
        src = CondSource.from_csv_text("P(y), P(x1|y), P(x2|y)\n1.0,0.25,0.75\n")
        assert src.channels[0].tolist() == [0.25, 0.75]


class TestQuantities:
    def test_bsc_values(self, bsc):
        assert expected_norm(bsc, TWO) == pytest.approx(math.sqrt(0.82), rel=1e-12)
        assert cond_renyi(bsc, INFINITY) == pytest.approx(-math.log(0.9), rel=1e-12)
        assert cond_renyi(bsc, TWO) == pytest.approx(-math.log(0.82), rel=1e-12)
        assert min_error(bsc) == pytest.approx(0.1, abs=1e-15)
        assert bhattacharyya(bsc) == pytest.approx(0.6, rel=1e-12)
        assert cond_renyi(bsc, HALF) == pytest.approx(math.log(1.6), rel=1e-12)

    @pytest.mark.parametrize("a", ORDERS)
    def test_deterministic(self, deterministic, a):
        assert cond_renyi(deterministic, a) == pytest.approx(0.0, abs=1e-15)

    def test_deterministic_error(self, deterministic):
        assert min_error(deterministic) == 0.0
        assert bhattacharyya(deterministic) == pytest.approx(0.0, abs=1e-15)
        assert expected_norm(deterministic, HALF) == pytest.approx(1.0)

    def test_uniform(self, uniform3):
        assert min_error(uniform3) == pytest.approx(2.0 / 3.0)
        assert bhattacharyya(uniform3) == pytest.approx(1.0)
        for a in ORDERS:
            assert cond_renyi(uniform3, a) == pytest.approx(math.log(3), rel=1e-12)

    def test_trivial_y(self):
        P = [0.6, 0.3, 0.1]
        src = CondSource.unconditional(P)
        for a in ORDERS:
            assert cond_renyi(src, a) == pytest.approx(renyi_entropy(P, a), rel=1e-12)
        assert expected_norm(src, TWO) == pytest.approx(lr_norm(P, TWO))

    def test_zero_order_norm_rejected(self, bsc):
        with pytest.raises(DomainError):
            expected_norm(bsc, ZERO)

    def test_bhattacharyya_needs_two_letters(self):
        with pytest.raises(DomainError):
            bhattacharyya(CondSource.unconditional([1.0]))


class TestInvariants:
    @pytest.fixture(scope="class")
    def sources(self):
        return list(random_sources(seed=7, count=60, max_n=5, max_k=4))

    def test_order_monotonicity(self, sources):
        orders = sorted(ORDERS)
        for src in sources:
            values = [cond_renyi(src, a) for a in orders]
            assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_range(self, sources):
        for src in sources:
            for a in ORDERS:
                h = cond_renyi(src, a)
                assert -1e-12 <= h <= math.log(src.n) + 1e-12

    def test_identities(self, sources):
        for src in sources:
            assert math.exp(-cond_renyi(src, INFINITY)) == pytest.approx(1.0 - min_error(src), abs=1e-15)
            z = bhattacharyya(src)
            assert cond_renyi(src, HALF) == pytest.approx(math.log1p((src.n - 1) * z), abs=1e-12)

    def test_min_error_is_best_estimator(self, sources, bsc, uniform3):
        assert verify_estimator_pe(bsc) == min_error(bsc)
        assert verify_estimator_pe(uniform3) == pytest.approx(2.0 / 3.0)
        for src in sources:
            if src.n ** src.k <= 256:
                assert verify_estimator_pe(src) == min_error(src)
