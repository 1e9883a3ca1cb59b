"""Finite positive measures on the disk and Carleson-constant estimators.

Each measure knows its total mass, the mass of Carleson boxes and of
Euclidean disks (exactly whenever a closed form exists) and how to
discretise itself into weighted point masses for the operators.  Atomic
measures discretise exactly, which makes them the quadrature-free oracle
for everything downstream.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate

from .geometry import TWO_PI, Arc, CarlesonSquare, HyperbolicDisk, dyadic_level
from .numerics import QuadratureRule, _jacobi01, _legendre01


class Measure:
    """Base class; subclasses are immutable dataclasses."""

    def total_mass(self) -> float:
        raise NotImplementedError

    def nodes(self, rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
        """Weighted points approximating the measure (exact for atoms)."""
        raise NotImplementedError

    def mass_of_square(self, square: CarlesonSquare) -> float:
        z, w = self.nodes(_MASK_RULE)
        return float(np.sum(w[square.contains(z)]))

    def mass_in_euclidean_disk(self, center: complex, radius: float) -> float:
        z, w = self.nodes(_MASK_RULE)
        return float(np.sum(w[np.abs(z - center) < radius]))

    def rings(self, rule: QuadratureRule):
        """``(radii, ring_weights, angular_count)`` when :meth:`nodes` is a
        tensor of rings and equispaced angles ``2 pi m / M``; else ``None``."""
        return None

    def boundary_gap(self) -> float | None:
        """Distance from the circle of the outermost concentrated mass.

        ``None`` for diffuse measures, which have no isolated spikes to resolve.
        """
        return None

    @property
    def is_atomic(self) -> bool:
        return False

    def to_spec(self) -> dict:
        raise NotImplementedError


# used only for region masses of node-based measures (disk caps, mixtures of them)
_MASK_RULE = QuadratureRule(16, 64, 10)


@dataclass(frozen=True)
class Atomic(Measure):
    points: tuple[complex, ...]
    masses: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        ms = tuple(float(m) for m in self.masses)
        if len(pts) != len(ms) or not pts:
            raise ValueError("atomic measure needs matching, nonempty points and masses")
        if any(not abs(p) < 1.0 for p in pts):
            raise ValueError("atoms must lie strictly inside the disk")
        if any(not m > 0 for m in ms):
            raise ValueError("atom masses must be positive")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "masses", ms)

    @classmethod
    def dirac(cls, a: complex, mass: float = 1.0) -> "Atomic":
        return cls((a,), (mass,))

    def union(self, other: "Atomic") -> "Atomic":
        return Atomic(self.points + other.points, self.masses + other.masses)

    @property
    def is_atomic(self) -> bool:
        return True

    def total_mass(self) -> float:
        return math.fsum(self.masses)

    def nodes(self, rule=None):
        return np.array(self.points, dtype=complex), np.array(self.masses)

    def mass_of_square(self, square):
        z, m = self.nodes()
        return math.fsum(m[square.contains(z)])

    def mass_in_euclidean_disk(self, center, radius):
        z, m = self.nodes()
        return math.fsum(m[np.abs(z - center) < radius])

    def boundary_gap(self):
        return 1.0 - max(abs(p) for p in self.points)

    def to_spec(self):
        return {
            "type": "atomic",
            "atoms": [{"re": p.real, "im": p.imag, "mass": m} for p, m in zip(self.points, self.masses)],
        }


@dataclass(frozen=True)
class RadialSegment(Measure):
    """Unit linear density along the radius ``{r e^{i angle}: 0 <= r < 1}``."""

    angle: float = 0.0

    def total_mass(self):
        return 1.0

    def nodes(self, rule):
        r, w = rule.radial(0.0)
        return r * np.exp(1j * self.angle), w

    def mass_of_square(self, square):
        if not square.arc.contains(self.angle):
            return 0.0
        return square.depth

    def mass_in_euclidean_disk(self, center, radius):
        return _ray_mass(self.angle, 0.0, center, radius)

    def to_spec(self):
        return {"type": "radial_segment", "angle": self.angle}


@dataclass(frozen=True)
class WeightedArea(Measure):
    """``dA_alpha = (alpha+1)(1-|z|^2)^alpha dA``, a probability measure."""

    alpha: float = 0.0

    def __post_init__(self):
        if not self.alpha > -1:
            raise ValueError("alpha must exceed -1")

    def total_mass(self):
        return 1.0

    def nodes(self, rule):
        return rule.disk_nodes(self.alpha)

    def rings(self, rule):
        return _area_rings(rule, self.alpha, 0.0)

    def mass_of_square(self, square):
        return square.depth * _radial_mass_above(self.alpha, 0.0, square.inner_radius)

    def mass_in_euclidean_disk(self, center, radius):
        return _radial_mass_in_disk(self.alpha, 0.0, center, radius)

    def to_spec(self):
        return {"type": "weighted_area", "alpha": self.alpha}


@dataclass(frozen=True)
class WeightTransform(Measure):
    """``d nu = (1 - |z|)^sigma d base``.  Nested transforms collapse."""

    base: Measure
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if isinstance(self.base, WeightTransform):
            object.__setattr__(self, "sigma", self.sigma + self.base.sigma)
            object.__setattr__(self, "base", self.base.base)

    @property
    def is_atomic(self):
        return self.base.is_atomic

    def total_mass(self):
        b = self.base
        if isinstance(b, WeightedArea):
            return _radial_mass_above(b.alpha, self.sigma, 0.0)
        if isinstance(b, RadialSegment):
            return 1.0 / (self.sigma + 1.0)
        return float(np.sum(self.nodes(_MASK_RULE)[1]))

    def nodes(self, rule):
        b = self.base
        if isinstance(b, WeightedArea):
            return rule.disk_nodes(b.alpha, self.sigma)
        if isinstance(b, RadialSegment):
            r, w = rule.radial(self.sigma)
            return r * np.exp(1j * b.angle), w
        z, w = b.nodes(rule)
        return z, w * (1.0 - np.abs(z)) ** self.sigma

    def rings(self, rule):
        if isinstance(self.base, WeightedArea):
            return _area_rings(rule, self.base.alpha, self.sigma)
        return None

    def mass_of_square(self, square):
        b = self.base
        if isinstance(b, WeightedArea):
            return square.depth * _radial_mass_above(b.alpha, self.sigma, square.inner_radius)
        if isinstance(b, RadialSegment):
            if not square.arc.contains(b.angle):
                return 0.0
            return square.depth ** (self.sigma + 1.0) / (self.sigma + 1.0)
        if b.is_atomic:
            z, w = self.nodes(None)
            return math.fsum(w[square.contains(z)])
        return super().mass_of_square(square)

    def mass_in_euclidean_disk(self, center, radius):
        b = self.base
        if isinstance(b, WeightedArea):
            return _radial_mass_in_disk(b.alpha, self.sigma, center, radius)
        if isinstance(b, RadialSegment):
            return _ray_mass(b.angle, self.sigma, center, radius)
        if b.is_atomic:
            z, w = self.nodes(None)
            return math.fsum(w[np.abs(z - center) < radius])
        return super().mass_in_euclidean_disk(center, radius)

    def boundary_gap(self):
        return self.base.boundary_gap()

    def to_spec(self):
        return {"type": "weight_transform", "sigma": self.sigma, "base": self.base.to_spec()}


@dataclass(frozen=True)
class DiskCap(Measure):
    """Uniform mass on a small Euclidean disk: a mollified atom."""

    center: complex
    radius: float
    mass: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (self.radius > 0 and abs(self.center) + self.radius < 1.0 and self.mass > 0):
            raise ValueError("disk cap must have positive radius and mass and lie inside the disk")

    def total_mass(self):
        return self.mass

    def nodes(self, rule=None):
        return _cap_nodes(self.center, self.radius, self.mass)

    def boundary_gap(self):
        return 1.0 - abs(self.center) - self.radius

    def to_spec(self):
        return {"type": "disk_cap", "re": self.center.real, "im": self.center.imag,
                "radius": self.radius, "mass": self.mass}


@functools.lru_cache(maxsize=64)
def _cap_nodes(center, radius, mass, radial=12, angular=24):
    x, w = _legendre01(radial)
    ang = TWO_PI * (np.arange(angular) + 0.5) / angular
    z = center + radius * (x[:, None] * np.exp(1j * ang)[None, :])
    # uniform density: weights proportional to rho d rho d theta
    wt = np.broadcast_to((2.0 * x * w)[:, None] / angular, z.shape) * mass
    return z.ravel(), np.ascontiguousarray(wt).ravel()


@dataclass(frozen=True)
class Mixture(Measure):
    """Positive combination ``sum c_i mu_i``."""

    parts: tuple[tuple[float, Measure], ...]

    def __post_init__(self):
        parts = tuple((float(c), m) for c, m in self.parts)
        if not parts or any(c <= 0 for c, _ in parts):
            raise ValueError("mixture needs positive coefficients")
        object.__setattr__(self, "parts", parts)

    @property
    def is_atomic(self):
        return all(m.is_atomic for _, m in self.parts)

    def total_mass(self):
        return math.fsum(c * m.total_mass() for c, m in self.parts)

    def nodes(self, rule):
        zs, ws = zip(*(m.nodes(rule) for _, m in self.parts))
        return np.concatenate(zs), np.concatenate([c * w for (c, _), w in zip(self.parts, ws)])

    def mass_of_square(self, square):
        return math.fsum(c * m.mass_of_square(square) for c, m in self.parts)

    def mass_in_euclidean_disk(self, center, radius):
        return math.fsum(c * m.mass_in_euclidean_disk(center, radius) for c, m in self.parts)

    def boundary_gap(self):
        gaps = [g for _, m in self.parts if (g := m.boundary_gap()) is not None]
        return min(gaps) if gaps else None

    def to_spec(self):
        return {"type": "mixture",
                "parts": [{"weight": c, "measure": m.to_spec()} for c, m in self.parts]}


# -- closed forms for rotation-invariant densities ---------------------------

def _area_rings(rule, alpha, sigma):
    r, w = rule.radial(alpha + sigma)
    return r, w * (alpha + 1.0) * (1.0 + r) ** alpha * 2.0 * r, rule.angular_count


def _radial_density(alpha, sigma, t):
    return (alpha + 1.0) * (1.0 - t * t) ** alpha * (1.0 - t) ** sigma * 2.0 * t


def _radial_mass_above(alpha: float, sigma: float, rho: float) -> float:
    """Mass of ``{rho <= |z| < 1}`` under ``(1-|z|)^sigma dA_alpha``."""
    h = 1.0 - rho
    if h <= 0.0:
        return 0.0
    if sigma == 0.0:
        return (1.0 - rho * rho) ** (alpha + 1.0)
    # t = 1 - h x: integrand h^(alpha+sigma+1) x^(alpha+sigma) (2 - h x)^alpha 2(1 - h x)
    x, w = _jacobi01(48, alpha + sigma)
    body = (2.0 - h * x) ** alpha * 2.0 * (1.0 - h * x)
    return float((alpha + 1.0) * h ** (alpha + sigma + 1.0) * np.sum(w * body))


def _radial_mass_in_disk(alpha: float, sigma: float, center: complex, radius: float) -> float:
    c = abs(center)
    if c + radius <= 1e-15:
        return 0.0
    if c < 1e-14:
        return _radial_mass_above(alpha, sigma, 0.0) - _radial_mass_above(alpha, sigma, min(radius, 1.0))

    def frac(t):
        if t <= 0.0:
            return 1.0 if radius > c else 0.0
        cos_half = (t * t + c * c - radius * radius) / (2.0 * t * c)
        return math.acos(min(1.0, max(-1.0, cos_half))) / math.pi

    lo, hi = max(0.0, c - radius), min(1.0, c + radius)
    total = 0.0
    if radius > c:
        # circles of radius < radius - c lie entirely inside
        inner = radius - c
        total += _radial_mass_above(alpha, sigma, 0.0) - _radial_mass_above(alpha, sigma, inner)
        lo = inner
    val, _ = integrate.quad(lambda t: _radial_density(alpha, sigma, t) * frac(t), lo, hi,
                            limit=200, epsabs=1e-13, epsrel=1e-11)
    return total + val


def _ray_mass(angle: float, sigma: float, center: complex, radius: float) -> float:
    b = (center * np.exp(-1j * angle)).real
    disc = b * b - (abs(center) ** 2 - radius * radius)
    if disc <= 0:
        return 0.0
    root = math.sqrt(disc)
    r0, r1 = max(b - root, 0.0), min(b + root, 1.0)
    if r1 <= r0:
        return 0.0
    return ((1.0 - r0) ** (sigma + 1.0) - (1.0 - r1) ** (sigma + 1.0)) / (sigma + 1.0)


# -- public operations -------------------------------------------------------

def mass_of_square(mu: Measure, square: CarlesonSquare) -> float:
    return mu.mass_of_square(square)


def mass_of_hyperbolic_disk(mu: Measure, disk: HyperbolicDisk) -> float:
    if mu.is_atomic:
        z, w = mu.nodes(None)
        return math.fsum(w[disk.contains(z)])
    c, radius = disk.euclidean()
    return mu.mass_in_euclidean_disk(c, radius)


def weight_transform(mu: Measure, sigma: float) -> WeightTransform:
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return WeightTransform(mu, float(sigma))


@dataclass
class CarlesonReport:
    """Empirical Carleson constant ``sup mu(region) / size^s``.

    ``samples`` holds ``(scale, ratio)`` pairs: the dyadic level and the
    largest ratio at that level for box estimates, the center index for
    hyperbolic-disk estimates.  ``scale_masses`` keeps the largest box mass
    per level for slope fitting.
    """

    s: float
    empirical_constant: float
    argmax_region: Arc | HyperbolicDisk | None
    samples: list[tuple[int, float]]
    scale_lengths: list[float] = field(default_factory=list)
    scale_masses: list[float] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def carleson_constant(mu: Measure, s: float, depth: int, min_level: int = 0) -> CarlesonReport:
    """Sup of ``mu(S(I)) / |I|^s`` over the two-shift dyadic grid.

    Levels ``min_level..depth`` are scanned; level 0 is the full circle,
    whose box is the whole disk.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if s <= 0:
        raise ValueError("s must be positive")
    best, best_arc = 0.0, None
    samples, lengths, masses = [], [], []
    for k in range(min_level, depth + 1):
        arcs = dyadic_level(k)
        level_mass = np.array([mu.mass_of_square(CarlesonSquare(a)) for a in arcs])
        length = arcs[0].length
        ratios = level_mass / length**s
        i = int(np.argmax(ratios))
        samples.append((k, float(ratios[i])))
        lengths.append(length)
        masses.append(float(level_mass.max()))
        if ratios[i] > best:
            best, best_arc = float(ratios[i]), arcs[i]
    notes = []
    gap = mu.boundary_gap()
    if gap is not None and gap < 0.5**depth:
        notes.append(f"mass at distance {gap:.3g} from the circle is finer than the grid scale 2^-{depth}")
    return CarlesonReport(s, best, best_arc, samples, lengths, masses, notes)


def default_centers(rays: int = 16, levels: int = 10) -> list[complex]:
    """Centers on ``rays`` equispaced rays at radii ``1 - 2^-k``, ``k = 1..levels``."""
    return [(1.0 - 0.5**k) * np.exp(1j * TWO_PI * j / rays)
            for k in range(1, levels + 1) for j in range(rays)]


def carleson_constant_hyperbolic(mu: Measure, s: float, r: float,
                                 centers: Sequence[complex] | None = None) -> CarlesonReport:
    """Sup over ``centers`` of ``mu(D(z, r)) / (1 - |z|^2)^s``."""
    if not s > 1:
        raise ValueError("the hyperbolic-disk condition needs s > 1")
    if centers is None:
        centers = default_centers()
    if len(centers) == 0:
        raise ValueError("center list is empty")
    best, best_disk, samples = 0.0, None, []
    for i, z in enumerate(centers):
        disk = HyperbolicDisk(z, r)
        ratio = float(mass_of_hyperbolic_disk(mu, disk) / (1.0 - abs(z) ** 2) ** s)
        samples.append((i, ratio))
        if ratio > best:
            best, best_disk = ratio, disk
    return CarlesonReport(s, best, best_disk, samples)


def fit_mass_slope(report: CarlesonReport, levels: Sequence[int] | None = None) -> float:
    """Least-squares slope of ``log(max box mass)`` against ``log |I|``."""
    ks = [k for k, _ in report.samples]
    pick = [i for i, k in enumerate(ks) if (levels is None or k in levels)
            and report.scale_masses[i] > 0]
    if len(pick) < 2:
        raise ValueError("need at least two levels with positive mass to fit a slope")
    x = np.log([report.scale_lengths[i] for i in pick])
    y = np.log([report.scale_masses[i] for i in pick])
    return float(np.polyfit(x, y, 1)[0])


# -- schema -------------------------------------------------------------------

def measure_from_spec(spec: dict) -> Measure:
    """Build a measure from its tagged JSON record."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise ValueError("measure spec must be an object with a 'type' field")
    kind = spec["type"]
    if kind == "atomic":
        atoms = spec.get("atoms") or []
        return Atomic(tuple(complex(a["re"], a.get("im", 0.0)) for a in atoms),
                      tuple(a["mass"] for a in atoms))
    if kind == "radial_segment":
        return RadialSegment(float(spec.get("angle", 0.0)))
    if kind == "weighted_area":
        return WeightedArea(float(spec.get("alpha", 0.0)))
    if kind == "weight_transform":
        return weight_transform(measure_from_spec(spec["base"]), float(spec["sigma"]))
    if kind == "disk_cap":
        return DiskCap(complex(spec["re"], spec.get("im", 0.0)), float(spec["radius"]),
                       float(spec.get("mass", 1.0)))
    if kind == "mixture":
        return Mixture(tuple((p["weight"], measure_from_spec(p["measure"])) for p in spec["parts"]))
    raise ValueError(f"unknown measure type {kind!r}")
