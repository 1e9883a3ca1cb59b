import csv
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from balayage.geometry import TWO_PI, Arc, dyadic_level
from balayage.measures import Atomic, RadialSegment
from balayage.operators import BoundaryGrid, balayage
from balayage.seminorms import (ResolutionError, arc_average, campanato_seminorm,
                                max_resolved_depth, mean_oscillation, per_scale_max,
                                samples_to_csv, thm1_functional)


def grid_of(f, n=4096):
    return BoundaryGrid(f(TWO_PI * np.arange(n) / n))


bounded_grids = arrays(np.float64, st.integers(64, 256), elements=st.floats(-5, 5)).map(BoundaryGrid)


class TestAverages:
    def test_constant(self):
        g = BoundaryGrid(np.full(64, 2.5))
        assert arc_average(g, Arc(1.0, 0.7)) == pytest.approx(2.5)
        assert mean_oscillation(g, Arc(1.0, 0.7)) == 0.0

    def test_cosine(self):
        g = grid_of(np.cos)
        assert abs(arc_average(g, Arc(0.0, TWO_PI))) < 1e-10
        assert arc_average(g, Arc(0.0, math.pi)) == pytest.approx(2 / math.pi, abs=1e-6)
        assert mean_oscillation(g, Arc(0.0, TWO_PI)) == pytest.approx(2 / math.pi, abs=1e-6)

    def test_resolution_guard(self):
        g = BoundaryGrid(np.ones(64))
        with pytest.raises(ResolutionError):
            arc_average(g, Arc(0.0, 3 * TWO_PI / 64))
        arc_average(g, Arc(0.0, 4 * TWO_PI / 64))

    @given(bounded_grids, st.floats(0, TWO_PI), st.floats(0.5, TWO_PI))
    def test_power_mean(self, g, c, length):
        arc = Arc(c, length)
        assert mean_oscillation(g, arc, 2.0) >= mean_oscillation(g, arc, 1.0) ** 2 - 1e-12

    def test_rejects_p(self):
        with pytest.raises(ValueError):
            mean_oscillation(BoundaryGrid(np.ones(64)), Arc(0, 1), 0.5)


class TestCampanato:
    def test_constant_and_origin_balayage(self):
        assert campanato_seminorm(BoundaryGrid(np.ones(256)), 1, 1, 5)[0] == 0.0
        assert campanato_seminorm(balayage(Atomic.dirac(0.0), 256), 1, 1, 5)[0] == 0.0

    def test_step_is_order_one(self):
        g = grid_of(lambda t: np.sign(np.sin(t)))
        _, samples = campanato_seminorm(g, 1, 1, 9)
        per = per_scale_max(samples)
        assert set(per) == set(range(10))
        assert all(0.5 <= v <= 1.0 + 1e-12 for k, v in per.items() if k >= 1)

    @given(bounded_grids)
    def test_bounded_by_range(self, g):
        depth = max_resolved_depth(g)
        sup, _ = campanato_seminorm(g, 1, 1, depth)
        assert sup <= 2 * np.max(np.abs(g.values)) + 1e-12

    def test_resolved_depth(self):
        assert max_resolved_depth(BoundaryGrid(np.ones(2048))) == 9

    def test_csv(self, tmp_path):
        _, samples = campanato_seminorm(grid_of(np.cos, 256), 1, 0.5, 2)
        samples_to_csv(samples, tmp_path / "o.csv")
        with open(tmp_path / "o.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["scale_index", "arc_center", "arc_length", "value"]
        assert len(rows) == 1 + 1 + 4 + 8


class TestThm1Functional:
    def test_constant(self):
        g = BoundaryGrid(np.full(128, 4.0))
        for gamma in (0.0, 0.5, 0.9):
            assert thm1_functional(g, Arc(0.3, 1.0), gamma, 0.5).value == 0.0

    def test_gamma_zero_against_riemann_sum(self):
        g = grid_of(lambda t: np.cos(3 * t) + np.abs(np.sin(t)), 1024)
        arc = Arc(0.4, 1.3)
        n = 3000
        x = arc.start + (np.arange(n) + 0.5) * arc.length / n
        v = g(x)
        ref = np.mean(np.abs(v[:, None] - v[None, :])) * arc.length**2 / arc.length**2
        got = thm1_functional(g, arc, 0.0, 1.0).value
        assert got == pytest.approx(ref, rel=1e-3)

    @given(st.lists(st.floats(-2, 2), min_size=2, max_size=12), st.floats(0, TWO_PI),
           st.integers(0, 4))
    def test_domination(self, coef, c, k):
        # resolved grids: trigonometric polynomials sampled well above their degree
        m = len(coef) // 2
        g = grid_of(lambda t: sum(a * np.cos(j * t) + b * np.sin(j * t)
                                  for j, (a, b) in enumerate(zip(coef[:m], coef[m:]), 1)), 1024)
        arc = Arc(c, TWO_PI / 2**k)
        osc = mean_oscillation(g, arc)
        assert osc <= thm1_functional(g, arc, 0.0, 1.0).value + 1e-6

    @given(bounded_grids)
    def test_domination_discrete(self, g):
        # the inequality also holds for the exact oscillation of any interpolant,
        # up to the double-integral quadrature error on kinked data
        arc = Arc(0.0, TWO_PI)
        osc = mean_oscillation(g, arc)
        res = thm1_functional(g, arc, 0.0, 1.0)
        assert osc <= res.value + 1e-3 * np.ptp(g.values)

    def test_oscillation_exact_for_piecewise_linear(self):
        g = BoundaryGrid(np.array([0.0] + [1.0] * 63))
        arc = Arc(0.0, TWO_PI)
        h = TWO_PI / 64
        # phi dips to 0 over two cells around t = 0; mean m = 1 - h / 2pi
        m = 1 - h / TWO_PI
        t = np.linspace(-h, h, 200_001)
        ref = np.trapezoid(np.abs(np.interp(np.abs(t), [0, h], [0, 1]) - m), t) + (TWO_PI - 2 * h) * (1 - m)
        assert mean_oscillation(g, arc) == pytest.approx(ref / TWO_PI, rel=1e-8)

    @given(bounded_grids, st.floats(-3, 3), st.floats(-3, 3), st.sampled_from([0.0, 0.5]))
    def test_scale_covariance(self, g, a, b, gamma):
        h = BoundaryGrid(a * g.values + b)
        arc = Arc(0.5, 2.0)
        assert mean_oscillation(h, arc) == pytest.approx(abs(a) * mean_oscillation(g, arc), abs=1e-9)
        assert thm1_functional(h, arc, gamma, 1).value == pytest.approx(
            abs(a) * thm1_functional(g, arc, gamma, 1).value, abs=1e-9)
        assert campanato_seminorm(h, 1, 1, 2)[0] == pytest.approx(
            abs(a) * campanato_seminorm(g, 1, 1, 2)[0], abs=1e-9)

    def test_atom_balayage_has_no_growth(self):
        g = balayage(Atomic.dirac(0.9), 2048)
        per = {k: max(thm1_functional(g, a, 0.5, 1.0).value for a in dyadic_level(k))
               for k in range(2, 9)}
        assert all(np.isfinite(v) for v in per.values())
        assert per[8] <= 3 * np.median(list(per.values()))

    def test_error_budget_scales(self):
        g = balayage(RadialSegment(0.0), 1024)
        res = thm1_functional(g, Arc(0.0, 0.5), 0.5, 1.0)
        assert res.value > 0 and res.error_budget > 0

    def test_rejects(self):
        g = BoundaryGrid(np.ones(64))
        with pytest.raises(ValueError):
            thm1_functional(g, Arc(0, 1), 1.0, 1.0)
        with pytest.raises(ValueError):
            thm1_functional(g, Arc(0, 1), 0.5, 0.0)
