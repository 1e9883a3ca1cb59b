import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from balayage.geometry import TWO_PI, Arc, CarlesonSquare, HyperbolicDisk, dyadic_level
from balayage.measures import (Atomic, DiskCap, Mixture, RadialSegment, WeightedArea,
                               WeightTransform, carleson_constant, carleson_constant_hyperbolic,
                               default_centers, fit_mass_slope, mass_of_hyperbolic_disk,
                               mass_of_square, measure_from_spec, weight_transform)
from balayage.numerics import QuadratureRule

from oracles import weighted_area_box_mass


@st.composite
def atomic_measures(draw, max_atoms=5):
    n = draw(st.integers(1, max_atoms))
    pts = [draw(st.floats(0, 0.98)) * np.exp(1j * draw(st.floats(0, TWO_PI))) for _ in range(n)]
    masses = [draw(st.floats(0.01, 5.0)) for _ in range(n)]
    return Atomic(tuple(pts), tuple(masses))


def mask_mass(mu, region, rule=QuadratureRule(48, 2048, 12)):
    z, w = mu.nodes(rule)
    return float(np.sum(w[region(z)]))


class TestVariants:
    def test_atomic_validation(self):
        with pytest.raises(ValueError):
            Atomic((1.0,), (1.0,))
        with pytest.raises(ValueError):
            Atomic((0.5,), (0.0,))
        with pytest.raises(ValueError):
            WeightedArea(-1.0)

    def test_total_masses(self):
        assert Atomic.dirac(0.3, 2.0).total_mass() == 2.0
        assert RadialSegment(1.0).total_mass() == 1.0
        assert WeightedArea(0.5).total_mass() == 1.0

    @given(atomic_measures(), st.floats(0.1, 4.0))
    def test_transform_of_atoms(self, mu, sigma):
        nu = weight_transform(mu, sigma)
        z, w = nu.nodes(None)
        np.testing.assert_allclose(w, np.array(mu.masses) * (1 - np.abs(mu.points)) ** sigma)
        assert nu.total_mass() <= mu.total_mass()

    @pytest.mark.parametrize("base", [WeightedArea(0.0), WeightedArea(1.5), RadialSegment(0.3)])
    def test_transform_mass_below_base(self, base):
        assert weight_transform(base, 1.0).total_mass() < base.total_mass()

    def test_transform_rejects_sigma(self):
        for sigma in (0.0, -1.0):
            with pytest.raises(ValueError):
                weight_transform(WeightedArea(0), sigma)

    def test_nested_transform_collapses(self):
        nu = weight_transform(weight_transform(WeightedArea(0), 1.0), 0.5)
        assert isinstance(nu, WeightTransform) and nu.sigma == 1.5

    def test_weighted_area_transform_total_mass(self):
        # int (1-r)^2 * 2r dr = 1/6
        assert weight_transform(WeightedArea(0), 2.0).total_mass() == pytest.approx(1 / 6, rel=1e-10)

    def test_disk_cap_nodes(self):
        cap = DiskCap(0.4 + 0.1j, 0.01, 2.0)
        z, w = cap.nodes()
        assert np.sum(w) == pytest.approx(2.0)
        assert np.max(np.abs(z - cap.center)) < 0.01
        assert np.sum(w * z) / 2.0 == pytest.approx(cap.center)


class TestSquareMass:
    def test_origin_atom(self):
        delta = Atomic.dirac(0.0)
        for k in range(1, 6):
            assert all(mass_of_square(delta, CarlesonSquare(a)) == 0 for a in dyadic_level(k))
        assert mass_of_square(delta, CarlesonSquare(Arc(0, TWO_PI))) == 1.0

    @pytest.mark.parametrize("length", [0.1, 1.0, 3.0])
    def test_radial_segment(self, length):
        sq = CarlesonSquare(Arc(0.0, length))
        assert mass_of_square(RadialSegment(0.0), sq) == pytest.approx(length / TWO_PI, abs=1e-14)
        assert mass_of_square(RadialSegment(2.0), sq) == 0.0

    @pytest.mark.parametrize("length", [0.05, 0.5, 2.0, TWO_PI])
    def test_weighted_area_closed_form(self, length):
        sq = CarlesonSquare(Arc(1.0, length))
        d = length / TWO_PI
        assert mass_of_square(WeightedArea(0), sq) == pytest.approx(d * (1 - (1 - d) ** 2), abs=1e-8)

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.0])
    def test_weighted_area_against_mask(self, alpha):
        sq = CarlesonSquare(Arc(0.7, 0.9))
        got = mass_of_square(WeightedArea(alpha), sq)
        assert got == pytest.approx(weighted_area_box_mass(0.9, alpha), rel=1e-10)
        assert got == pytest.approx(mask_mass(WeightedArea(alpha), sq.contains), rel=1e-2)

    @pytest.mark.parametrize("base", [WeightedArea(0.0), RadialSegment(0.2)])
    def test_transform_against_mask(self, base):
        nu = weight_transform(base, 1.5)
        sq = CarlesonSquare(Arc(0.2, 0.6))
        assert mass_of_square(nu, sq) == pytest.approx(mask_mass(nu, sq.contains), rel=2e-2)

    @given(atomic_measures(), atomic_measures(), st.floats(0, TWO_PI), st.floats(0.01, TWO_PI))
    def test_additivity(self, mu, nu, c, length):
        sq = CarlesonSquare(Arc(c, length))
        both = mu.union(nu)
        assert mass_of_square(both, sq) == pytest.approx(mass_of_square(mu, sq) + mass_of_square(nu, sq))

    def test_mixture_linear(self):
        mix = Mixture(((2.0, WeightedArea(0)), (3.0, Atomic.dirac(0.9))))
        sq = CarlesonSquare(Arc(0.0, 1.0))
        expect = 2 * mass_of_square(WeightedArea(0), sq) + 3 * mass_of_square(Atomic.dirac(0.9), sq)
        assert mass_of_square(mix, sq) == pytest.approx(expect)


class TestDiskMass:
    def test_atom(self):
        a = 0.3 - 0.2j
        assert mass_of_hyperbolic_disk(Atomic.dirac(a, 2.5), HyperbolicDisk(a, 0.1)) == 2.5
        assert mass_of_hyperbolic_disk(Atomic.dirac(a), HyperbolicDisk(-0.5, 0.2)) == 0.0

    @pytest.mark.parametrize("r", [0.2, 1.0, 2.5])
    def test_area_centered(self, r):
        assert mass_of_hyperbolic_disk(WeightedArea(0), HyperbolicDisk(0, r)) == pytest.approx(math.tanh(r) ** 2)

    @pytest.mark.parametrize("mu", [WeightedArea(0), WeightedArea(1.0), RadialSegment(0.5),
                                    weight_transform(WeightedArea(0), 2),
                                    weight_transform(RadialSegment(0.5), 1)])
    def test_off_center_against_mask(self, mu):
        disk = HyperbolicDisk(0.7 * np.exp(0.5j), 0.8)
        got = mass_of_hyperbolic_disk(mu, disk)
        if isinstance(mu, RadialSegment) or getattr(mu, "base", None).__class__ is RadialSegment:
            # exact ray length inside the Euclidean image
            c, rad = disk.euclidean()
            n = 1_000_000
            r = (np.arange(n) + 0.5) / n
            inside = np.abs(r * np.exp(0.5j) - c) < rad
            sigma = getattr(mu, "sigma", 0.0)
            ref = np.sum(inside * (1 - r) ** sigma) / n
            assert got == pytest.approx(ref, rel=1e-4)
        else:
            assert got == pytest.approx(mask_mass(mu, disk.contains), rel=1e-2)

    @given(st.floats(0.05, 1.0), st.floats(0.0, 1.5))
    def test_monotone_in_radius(self, r, extra):
        mu = Mixture(((1.0, WeightedArea(0)), (1.0, Atomic.dirac(0.6))))
        centers = [0.5, 0.9j, -0.99]
        small = carleson_constant_hyperbolic(mu, 2, r, centers)
        large = carleson_constant_hyperbolic(mu, 2, r + extra, centers)
        for (_, a), (_, b) in zip(small.samples, large.samples):
            assert b >= a - 1e-12


class TestCarlesonConstant:
    def test_origin_atom(self):
        rep = carleson_constant(Atomic.dirac(0.0), 1, 10)
        assert rep.empirical_constant == pytest.approx(1 / TWO_PI)
        assert rep.argmax_region.is_full

    def test_radial_segment_every_scale(self):
        rep = carleson_constant(RadialSegment(0.0), 1, 10)
        for _, ratio in rep.samples:
            assert ratio == pytest.approx(1 / TWO_PI, rel=1e-12)

    def test_area_slope(self):
        rep = carleson_constant(WeightedArea(0), 2, 10, min_level=4)
        assert fit_mass_slope(rep) == pytest.approx(2.0, abs=0.05)
        ratios = [r for _, r in rep.samples]
        assert max(ratios) <= 3 * np.median(ratios)

    @pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0])
    def test_transform_slope_shift(self, sigma):
        base = carleson_constant(WeightedArea(0), 2, 10, min_level=4)
        moved = carleson_constant(weight_transform(WeightedArea(0), sigma), 2 + sigma, 10, min_level=4)
        assert fit_mass_slope(moved) - fit_mass_slope(base) == pytest.approx(sigma, abs=0.1)

    def test_constant_is_max(self):
        rep = carleson_constant(Atomic((0.9, -0.5j), (1.0, 2.0)), 1.0, 8)
        assert rep.empirical_constant == max(r for _, r in rep.samples)

    def test_boundary_atom_flagged(self):
        rep = carleson_constant(Atomic.dirac(1 - 1e-5), 1, 10)
        assert rep.notes

    def test_hyperbolic_origin_far(self):
        rep = carleson_constant_hyperbolic(Atomic.dirac(0.0), 2, 0.5, [0.9, 0.95j])
        assert rep.empirical_constant == 0.0

    def test_hyperbolic_area_bounded(self):
        rep = carleson_constant_hyperbolic(WeightedArea(0), 2, 1.0)
        ratios = np.array([r for _, r in rep.samples])
        assert np.all(np.isfinite(ratios)) and ratios.max() < 10.0

    def test_hyperbolic_preconditions(self):
        with pytest.raises(ValueError):
            carleson_constant_hyperbolic(WeightedArea(0), 1.0, 1.0)
        with pytest.raises(ValueError):
            carleson_constant_hyperbolic(WeightedArea(0), 2.0, 1.0, [])

    def test_default_centers(self):
        c = default_centers()
        assert len(c) == 160 and max(abs(z) for z in c) == pytest.approx(1 - 2**-10)

    @pytest.mark.parametrize("mu", [WeightedArea(0), weight_transform(WeightedArea(0), 1.0),
                                    Atomic.dirac(0.5), RadialSegment(0.0)])
    def test_square_disk_consistency(self, mu):
        s = 2.0
        sq = carleson_constant(mu, s, 10)
        disk = carleson_constant_hyperbolic(mu, s, 1.0)
        sq_scale4 = dict(sq.samples)[4]
        # default centers: 16 rays per ring, ring k = 4 holds indices 48..63
        disk_scale4 = max(r for i, r in disk.samples if 48 <= i < 64)
        finite_sq = sq.empirical_constant < 1e3 * sq_scale4
        finite_disk = disk.empirical_constant < 1e3 * disk_scale4
        assert finite_sq == finite_disk


class TestSchema:
    @pytest.mark.parametrize("mu", [
        Atomic((0.5, 0.1j), (1.0, 2.0)), RadialSegment(0.4), WeightedArea(1.5),
        weight_transform(WeightedArea(0), 2.0), DiskCap(0.2, 0.01, 3.0),
        Mixture(((1.0, WeightedArea(0)), (0.5, RadialSegment(0.0)))),
    ])
    def test_round_trip(self, mu):
        assert measure_from_spec(mu.to_spec()) == mu

    def test_unknown(self):
        with pytest.raises(ValueError):
            measure_from_spec({"type": "lebesgue"})
        with pytest.raises(ValueError):
            measure_from_spec([])
