import math

import pytest

from renyisharp.bounds.curves import (
    CSV_HEADER,
    REGIONS,
    BoundCurve,
    curve_grid,
    describe_regions,
    region_key,
    sample_curve,
)
from renyisharp.bounds.theorems import h2_hhalf_threshold
from renyisharp.core.errors import DomainError
from renyisharp.measures import HALF, SHANNON, TWO


class TestGrid:
    def test_breaks_are_spliced_in(self):
        assert curve_grid((0.0, 1.0), 5, [0.3]) == pytest.approx([0.0, 0.25, 0.3, 0.5, 0.75, 1.0])

    def test_duplicate_breaks_merge(self):
        assert curve_grid((0.0, 1.0), 5, [0.5, 0.5 + 1e-15]) == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])

    def test_breaks_outside_are_dropped(self):
        assert len(curve_grid((0.0, 1.0), 3, [-1.0, 1.0, 2.0])) == 3

    def test_last_point_is_exact(self):
        hi = math.log(7)
        assert curve_grid((0.0, hi), 13, [])[-1] == hi

    def test_too_few_points(self):
        with pytest.raises(DomainError):
            curve_grid((0.0, 1.0), 1, [])

    def test_region_key(self):
        assert region_key(" H2-vs-Hhalf ") == "h2_vs_hhalf"


class TestSampling:
    def test_h2_hhalf_grid_has_threshold(self):
        curve = sample_curve("H2_vs_Hhalf", 8, points=5)
        xs = curve.xs()
        assert xs[0] == 0.0
        assert xs[-1] == pytest.approx(math.log(8))
        assert any(abs(x - h2_hhalf_threshold(8)) < 1e-15 for x in xs)
        assert curve.x_label == f"H_{HALF}" and curve.y_label == f"H_{TWO}"

    def test_h2_hhalf_end_points(self):
        curve = sample_curve("H2_vs_Hhalf", 8, points=9)
        x0, lo0, up0 = curve.points[0]
        assert (lo0, up0) == pytest.approx((0.0, 0.0), abs=1e-12)
        _, lo1, up1 = curve.points[-1]
        assert lo1 == pytest.approx(math.log(8), abs=1e-9)
        assert up1 == pytest.approx(math.log(8), abs=1e-9)

    def test_z_vs_pe_end_points(self):
        curve = sample_curve("Z_vs_Pe", 4, points=7)
        assert curve.points[0] == pytest.approx((0.0, 0.0, 0.0))
        assert curve.points[-1] == pytest.approx((0.75, 1.0, 1.0))

    @pytest.mark.parametrize(
        "region,kwargs",
        [
            ("Z_vs_Pe", {}),
            ("Pe_vs_H", {"a": TWO}),
            ("Pe_vs_H", {"a": SHANNON}),
            ("H_vs_Pe", {}),
            ("H_vs_Pe", {"a": TWO, "kind": "unconditional"}),
            ("H2_vs_Hhalf", {}),
            ("Hb_vs_Ha", {"a": HALF, "b": TWO}),
        ],
    )
    def test_no_violations(self, region, kwargs):
        curve = sample_curve(region, 4, points=9, **kwargs)
        assert curve.violations() == []
        assert len(curve.points) >= 9

    def test_explicit_xs(self):
        curve = sample_curve("Z_vs_Pe", 2, xs=[0.1])
        assert curve.points == pytest.approx(((0.1, 0.2, 0.6),))

    def test_threads_do_not_change_values(self):
        one = sample_curve("Hb_vs_Ha", 5, points=7, a=HALF, b=TWO, threads=1)
        two = sample_curve("Hb_vs_Ha", 5, points=7, a=HALF, b=TWO, threads=2)
        assert one == two

    def test_case_insensitive_names(self):
        assert sample_curve("z-vs-pe", 3, points=4) == sample_curve("Z_vs_Pe", 3, points=4)

    def test_errors(self):
        with pytest.raises(DomainError):
            sample_curve("nowhere", 4)
        with pytest.raises(DomainError):
            sample_curve("Hb_vs_Ha", 4, a=HALF)
        with pytest.raises(DomainError):
            sample_curve("Z_vs_Pe", 1)
        with pytest.raises(DomainError):
            sample_curve("Z_vs_Pe", 4, xs=[])


class TestBoundCurve:
    def test_csv_text(self):
        text = sample_curve("Z_vs_Pe", 3, points=4).to_csv_text()
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 1 + len(sample_curve("Z_vs_Pe", 3, points=4).points)

    def test_from_csv(self):
        curve = sample_curve("Z_vs_Pe", 3, points=4)
        back = BoundCurve.from_csv(curve.to_csv_text(), "P_e", "Z")
        assert back.points == pytest.approx(curve.points, abs=1e-11)

    def test_from_csv_rejects_bad_input(self):
        with pytest.raises(DomainError):
            BoundCurve.from_csv("a,b,c\n1,2,3\n")
        with pytest.raises(DomainError):
            BoundCurve.from_csv("x,y_lower,y_upper\n1,2\n")

    def test_violations(self):
        curve = BoundCurve("x", "y", ((0.0, 0.0, 1.0), (1.0, 2.0, 1.0)))
        assert curve.violations() == [1]

    def test_json(self):
        data = sample_curve("Z_vs_Pe", 2, xs=[0.1]).to_dict()
        assert data["x_label"] == "P_e"
        assert data["points"][0] == pytest.approx([0.1, 0.2, 0.6])

    def test_every_region_is_described(self):
        assert set(describe_regions()) == set(REGIONS)
