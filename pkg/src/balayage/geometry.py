"""Geometry of the unit disk and its boundary circle.

Points of the disk are plain Python/numpy complex numbers.  Angles are
radians; every comparison of two angles goes through :func:`wrap_angle`,
which maps into the half-open interval ``(-pi, pi]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


def wrap_angle(x):
    """Map angles into ``(-pi, pi]``."""
    y = np.mod(np.asarray(x, dtype=float) + np.pi, TWO_PI) - np.pi
    # np.mod lands exact odd multiples of pi on -pi; move them to +pi
    y = np.where(y <= -np.pi, np.pi, y)
    return y if y.ndim else float(y)


def as_disk_point(z) -> complex:
    z = complex(z)
    if not abs(z) < 1.0:
        raise ValueError(f"point {z} is not inside the unit disk")
    return z


def chord(theta, phi):
    """Euclidean distance ``|e^{i theta} - e^{i phi}|``."""
    return 2.0 * np.abs(np.sin(0.5 * (np.asarray(theta) - np.asarray(phi))))


def poisson_kernel(z, theta):
    """Poisson kernel ``(1 - |z|^2) / |1 - z e^{-i theta}|^2``.

    Broadcasts over ``z`` and ``theta``.
    """
    z = np.asarray(z, dtype=complex)
    den = np.abs(1.0 - z * np.exp(-1j * np.asarray(theta, dtype=float))) ** 2
    return (1.0 - np.abs(z) ** 2) / den


def poisson_antiderivative(z, theta):
    """A continuous antiderivative in ``theta`` of the Poisson kernel.

    ``theta + 2 arg(1 - z e^{-i theta})``; the argument never leaves
    ``(-pi/2, pi/2)`` because ``Re(1 - z e^{-i theta}) > 0`` on the disk, so
    differences of this function integrate the kernel exactly over any
    interval, wrapped or not.
    """
    theta = np.asarray(theta, dtype=float)
    z = np.asarray(z, dtype=complex)
    return theta + 2.0 * np.angle(1.0 - z * np.exp(-1j * theta))


def mobius(a, z):
    """Disk automorphism ``(a - z) / (1 - conj(a) z)``; an involution."""
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    return (a - z) / (1.0 - np.conj(a) * z)


def pseudo_hyperbolic(z, w):
    """Pseudo-hyperbolic distance ``|z - w| / |1 - conj(z) w|``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    rho = np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)
    return rho if rho.ndim else float(rho)


def hyperbolic_distance(z, w):
    """Hyperbolic metric ``beta(z, w) = artanh(rho(z, w))``."""
    return np.arctanh(pseudo_hyperbolic(z, w))


@dataclass(frozen=True)
class Arc:
    """Closed arc of the unit circle given by its center angle and length."""

    center: float
    length: float

    def __post_init__(self):
        if not 0.0 < self.length <= TWO_PI + 1e-12:
            raise ValueError(f"arc length must lie in (0, 2pi], got {self.length}")
        object.__setattr__(self, "length", min(float(self.length), TWO_PI))
        object.__setattr__(self, "center", float(np.mod(self.center, TWO_PI)))

    @property
    def start(self) -> float:
        return self.center - 0.5 * self.length

    @property
    def end(self) -> float:
        return self.center + 0.5 * self.length

    @property
    def is_full(self) -> bool:
        return self.length >= TWO_PI

    def contains(self, psi):
        if self.is_full:
            return np.ones_like(np.asarray(psi, dtype=float), dtype=bool)
        return np.abs(wrap_angle(np.asarray(psi, dtype=float) - self.center)) <= 0.5 * self.length

    def dilate(self, n: int) -> "Arc":
        return dilate_arc(self, n)


@dataclass(frozen=True)
class CarlesonSquare:
    """The box ``{r e^{it}: e^{it} in I, 1 - |I|/2pi <= r < 1}`` over an arc."""

    arc: Arc

    @property
    def inner_radius(self) -> float:
        return max(1.0 - self.arc.length / TWO_PI, 0.0)

    @property
    def depth(self) -> float:
        """Radial thickness ``|I|/2pi`` of the box."""
        return min(self.arc.length / TWO_PI, 1.0)

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        return (r >= self.inner_radius) & (r < 1.0) & self.arc.contains(np.angle(z))


@dataclass(frozen=True)
class HyperbolicDisk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_disk_point(self.center))
        if not self.radius > 0:
            raise ValueError("hyperbolic radius must be positive")

    def contains(self, w):
        return hyperbolic_distance(self.center, w) < self.radius

    def euclidean(self) -> tuple[complex, float]:
        """Euclidean center and radius of the disk as a subset of the plane."""
        rho = np.tanh(self.radius)
        z = self.center
        den = 1.0 - rho**2 * abs(z) ** 2
        return (1.0 - rho**2) * z / den, rho * (1.0 - abs(z) ** 2) / den


def dilate_arc(arc: Arc, n: int) -> Arc:
    """The concentric arc of length ``2^n |I|``, capped at the full circle."""
    if n < 0:
        raise ValueError("dilation exponent must be nonnegative")
    return Arc(arc.center, min(arc.length * 2.0**n, TWO_PI))


def dyadic_level(k: int) -> list[Arc]:
    """Both shifted families of dyadic arcs of length ``2pi / 2^k``."""
    if k == 0:
        return [Arc(0.0, TWO_PI)]
    m = 2**k
    ell = TWO_PI / m
    first = [Arc((2 * j + 1) * np.pi / m, ell) for j in range(m)]
    shifted = [Arc(j * ell, ell) for j in range(m)]
    return first + shifted


def dyadic_arcs(depth: int, include_full: bool = False) -> list[Arc]:
    """Two-shift dyadic grid of arcs at levels ``1..depth``.

    Every arc of length ``L >= 2pi / 2^depth`` lies inside a grid arc (or the
    full circle, when ``L > pi/2``) of length at most ``4L``.
    """
    if not 1 <= depth <= 24:
        raise ValueError("depth must lie in 1..24")
    arcs = [Arc(0.0, TWO_PI)] if include_full else []
    for k in range(1, depth + 1):
        arcs.extend(dyadic_level(k))
    return arcs
