import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from renyisharp.bounds.couplers import (
    build_st,
    build_st_from_norm,
    build_uv,
    build_uv_from_norm,
    clear_root_cache,
    g_fn,
    p_star_closed_form,
    pair_cond_renyi,
    slope_residual,
    tangency_roots,
    zeta_root,
)
from renyisharp.core.errors import ConvergenceError, DomainError
from renyisharp.measures import (
    HALF,
    INFINITY,
    SHANNON,
    TWO,
    CondSource,
    ProbVec,
    cond_renyi,
    expected_norm,
    norm_v,
)
from renyisharp.measures.extremal import interval_v, inv_entropy_v, renyi_v
from renyisharp.oracle.properties import sign_changes
from renyisharp.oracle.sources import random_sources


class TestG:
    @pytest.mark.parametrize("n", [2, 3, 7])
    def test_vanishes_at_one(self, n):
        assert g_fn(n, 1.0, HALF, TWO) == 0.0

    @pytest.mark.parametrize("z", [0.2, 1.7, 40.0])
    def test_antisymmetric(self, z):
        assert g_fn(4, z, 0.7, 3.0) == -g_fn(4, z, 3.0, 0.7)

    def test_binary_is_negative(self):
        assert g_fn(2, 4.0, HALF, TWO) < 0.0
        for r, s in [(0.5, 2.0), (0.7, 3.0), (0.5, 1.5)]:
            for z in np.geomspace(1.01, 1e6, 200):
                assert g_fn(2, float(z), r, s) < 0.0

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_positive_below_one(self, n):
        for z in (0.1, 0.5, 0.9):
            assert g_fn(n, z, 0.5, 2.0) > 0.0
            assert g_fn(n, z, 0.3, 0.8) > 0.0

    def test_single_sign_change(self):
        zs = np.linspace(1.0 + 1e-3, 1000.0, 10_000)
        values = [g_fn(3, float(z), HALF, TWO) for z in zs]
        assert len(sign_changes(values)) == 1

    def test_domain(self):
        with pytest.raises(DomainError):
            g_fn(3, 0.0, HALF, TWO)


class TestZeta:
    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_root(self, n):
        zeta = zeta_root(n, HALF, TWO)
        assert zeta > 1.0
        assert g_fn(n, zeta, HALF, TWO) == pytest.approx(0.0, abs=1e-9)
        for z in np.geomspace(1.0 + 1e-3, zeta * (1 - 1e-3), 30):
            assert g_fn(n, float(z), HALF, TWO) > 0.0
        for z in np.geomspace(zeta * (1 + 1e-3), zeta * 1e3, 30):
            assert g_fn(n, float(z), HALF, TWO) < 0.0

    def test_order_of_arguments_irrelevant(self):
        assert zeta_root(5, TWO, HALF) == zeta_root(5, HALF, TWO)

    def test_binary_has_no_root(self):
        with pytest.raises(ConvergenceError):
            zeta_root(2, HALF, TWO)

    def test_orders_below_half_rejected(self):
        with pytest.raises(DomainError):
            zeta_root(4, 0.3, TWO)


class TestTangency:
    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_half_two(self, n):
        roots = tangency_roots(n, HALF, TWO)
        assert roots.p_star == 0.5
        assert roots.t_star == pytest.approx(0.5 * (1.0 + math.sqrt(n - 1)) ** 2, rel=1e-12)
        assert roots.closed_form

    def test_t_star_value(self):
        assert tangency_roots(8, HALF, TWO).t_star == pytest.approx(6.6458, abs=1e-4)

    @pytest.mark.parametrize("n", [3, 5, 8])
    @pytest.mark.parametrize("t", [2.0 / 3.0, 3.0, 5.0])
    def test_closed_form_matches_solver(self, n, t):
        numeric = tangency_roots(n, HALF, t, closed_form=False)
        assert numeric.p_star == pytest.approx(p_star_closed_form(n, t), abs=1e-9)
        assert not numeric.closed_form

    def test_bundle_invariants(self):
        roots = tangency_roots(5, 0.7, 3.0)
        lo, hi = interval_v(5, 0.7)
        assert lo < roots.tau < hi
        assert 1.0 / 5 < roots.p_star < 1.0
        assert norm_v(5, roots.p_star, 0.7) == pytest.approx(roots.t_star, abs=1e-10)
        assert abs(roots.residuals["slope"]) < 1e-6
        assert roots.to_dict()["n"] == 5

    @pytest.mark.parametrize(
        "n, r, s",
        [(3, 0.7, 3.0), (4, 0.7, 3.0), (6, 0.6, 2.0), (4, 1.5, 3.0), (4, 3.0, 0.7), (5, 4.0, HALF)],
    )
    def test_slope_residual_single_sign_change(self, n, r, s):
        ps = np.linspace(1.0 / n + 1e-3, 1.0 - 1e-4, 10_000)
        values = [slope_residual(n, float(p), r, s) for p in ps]
        changes = sign_changes(values)
        assert len(changes) == 1
        (i,) = changes
        assert ps[i - 1] - 1e-9 <= tangency_roots(n, r, s).p_star <= ps[i] + 1e-9

    def test_cache(self):
        clear_root_cache()
        first = tangency_roots(4, HALF, 3.0)
        assert tangency_roots(4, HALF, 3.0) is first
        clear_root_cache()
        assert tangency_roots(4, HALF, 3.0) is not first

    def test_cache_shared_across_threads(self):
        clear_root_cache()
        with ThreadPoolExecutor(max_workers=4) as pool:
            bundles = list(pool.map(lambda _: tangency_roots(5, 0.7, 3.0), range(16)))
        assert all(b is bundles[0] for b in bundles)
        assert tangency_roots(5, 0.7, 3.0) is bundles[0]

    def test_domain(self):
        with pytest.raises(DomainError):
            tangency_roots(2, HALF, TWO)
        with pytest.raises(DomainError):
            tangency_roots(4, HALF, HALF)
        with pytest.raises(DomainError):
            tangency_roots(4, SHANNON, TWO)


def _sources(min_n=3, count=25, seed=11):
    return list(random_sources(seed=seed, count=count, max_n=5, max_k=3, min_n=min_n))


class TestST:
    def test_deterministic_source(self):
        src = CondSource.from_channels([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        pair = build_st(src, HALF, TWO)
        assert pair.regime == "b"
        assert pair_cond_renyi(pair, TWO) == pytest.approx(0.0, abs=1e-12)

    def test_uniform_source(self):
        src = CondSource.unconditional(ProbVec.uniform(4))
        pair = build_st(src, HALF, TWO)
        assert pair.regime == "a"
        assert pair.delta == pytest.approx(0.0, abs=1e-12)
        assert pair_cond_renyi(pair, TWO) == pytest.approx(math.log(4), rel=1e-12)

    def test_single_component_regime(self):
        # threshold for n = 4 is 2 ln(1 + sqrt 3) - ln 2 ~ 1.317
        pair = build_st_from_norm(4, HALF, TWO, math.exp(1.2))
        assert pair.regime == "b"
        assert pair.weights == (0.0, 1.0)
        expected = renyi_v(4, inv_entropy_v(4, HALF, 1.2), TWO)
        assert pair_cond_renyi(pair, TWO) == pytest.approx(expected, rel=1e-12)

    def test_boundary_goes_to_single_component(self):
        t_star = tangency_roots(5, HALF, TWO).t_star
        assert build_st_from_norm(5, HALF, TWO, t_star).regime == "b"

    @pytest.mark.parametrize("a,b", [(HALF, TWO), (TWO, HALF), (3.0, HALF), (0.7, 4.0)])
    def test_conserves_order_a(self, a, b):
        for src in _sources():
            pair = build_st(src, a, b)
            assert sum(pair.weights) == pytest.approx(1.0)
            assert pair_cond_renyi(pair, a) == pytest.approx(cond_renyi(src, a), abs=1e-9)

    def test_pair_source_matches(self):
        pair = build_st_from_norm(4, HALF, TWO, 3.9)
        assert pair.regime == "a"
        src = pair.to_source(4)
        assert cond_renyi(src, TWO) == pytest.approx(pair_cond_renyi(pair, TWO), abs=1e-12)
        assert cond_renyi(src, HALF) == pytest.approx(math.log(3.9), abs=1e-12)

    def test_domain(self, bsc):
        with pytest.raises(DomainError):
            build_st(bsc, HALF, TWO)
        with pytest.raises(DomainError):
            build_st_from_norm(4, SHANNON, TWO, 0.5)
        with pytest.raises(DomainError):
            build_st_from_norm(4, 0.3, TWO, 2.0)
        with pytest.raises(DomainError):
            build_st_from_norm(4, HALF, TWO, 5.0)


class TestUV:
    def test_deterministic(self):
        src = CondSource.from_channels([[1, 0], [0, 1]])
        pair = build_uv(src, HALF)
        assert (pair.m, pair.lam) == (1, 1.0)
        assert pair_cond_renyi(pair, TWO) == pytest.approx(0.0, abs=1e-15)

    def test_min_entropy_example(self):
        pair = build_uv_from_norm(INFINITY, 0.4)
        assert pair.m == 2
        assert pair.lam == pytest.approx(0.4, rel=1e-12)
        expected = 0.4 * math.log(2) + 0.6 * math.log(3)
        assert pair_cond_renyi(pair, SHANNON) == pytest.approx(expected, rel=1e-12)
        assert pair_cond_renyi(pair, SHANNON) == pytest.approx(0.9364, abs=1e-4)

    def test_uniform_channels(self):
        src = CondSource.unconditional(ProbVec.uniform(4))
        pair = build_uv(src, TWO)
        assert pair.m == 4
        assert pair.lam == pytest.approx(1.0, abs=1e-12)
        for b in (HALF, SHANNON, TWO, INFINITY):
            assert pair_cond_renyi(pair, b) == pytest.approx(math.log(4), rel=1e-9)

    @pytest.mark.parametrize("a", [0.3, HALF, TWO, 3.0, INFINITY])
    def test_conserves_norm(self, a):
        for src in _sources(min_n=2):
            pair = build_uv(src, a)
            assert 0.0 <= pair.lam <= 1.0
            assert pair.expected_norm(a) == pytest.approx(expected_norm(src, a), rel=1e-12)

    def test_to_source(self):
        pair = build_uv_from_norm(INFINITY, 0.4)
        src = pair.to_source()
        assert src.n == 3
        assert pair.to_source(5).n == 5
        for b in (HALF, SHANNON, TWO, INFINITY):
            assert cond_renyi(src, b) == pytest.approx(pair_cond_renyi(pair, b), abs=1e-12)
        with pytest.raises(DomainError):
            pair.to_source(2)

    def test_shannon_order_rejected(self, bsc):
        with pytest.raises(DomainError):
            build_uv(bsc, SHANNON)
