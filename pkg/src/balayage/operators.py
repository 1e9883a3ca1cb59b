"""Balayage, B-balayage, weighted Bergman projection and the Besov norm."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial
from scipy.special import gammaln

from .geometry import TWO_PI, poisson_antiderivative, poisson_kernel, wrap_angle
from .measures import Measure, RadialSegment
from .numerics import NumericalFailure, QuadratureRule, integrate_disk

# evaluation blocks are capped at this many kernel entries
_BLOCK = 1 << 21


@dataclass
class BoundaryGrid:
    """Samples of a function on the circle at the angles ``2 pi j / n``.

    ``mode`` is ``"point"`` for point values and ``"cell"`` for averages
    over ``[t_j - pi/n, t_j + pi/n]``.  Cell averages stay finite for
    integrable singularities and integrate to the exact circle mean.
    """

    values: np.ndarray
    mode: str = "point"
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size < 8:
            raise ValueError("a boundary grid needs at least 8 samples")
        if not np.all(np.isfinite(self.values)):
            j = int(np.flatnonzero(~np.isfinite(self.values))[0])
            raise NumericalFailure("non-finite boundary value", TWO_PI * j / self.values.size)
        if self.mode not in ("point", "cell"):
            raise ValueError(f"unknown grid mode {self.mode!r}")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def angles(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n

    @property
    def spacing(self) -> float:
        return TWO_PI / self.n

    def mean(self) -> float:
        return float(np.mean(self.values))

    def __call__(self, t):
        """Periodic piecewise-linear interpolant."""
        return np.interp(np.mod(t, TWO_PI), np.append(self.angles, TWO_PI),
                         np.append(self.values, self.values[0]))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["angle", "value"])
            for t, v in zip(self.angles, self.values):
                writer.writerow([repr(float(t)), repr(float(v))])


def _radial_segment_balayage(u):
    # closed form of int_0^1 P_{r}(u) dr, u measured from the segment's angle
    c, s = np.cos(u), np.sin(u)
    with np.errstate(divide="ignore"):
        return -1.0 - c * np.log(2.0 - 2.0 * c) + np.abs(s) * (np.pi - np.abs(u))


def _radial_segment_primitive(u):
    # antiderivative of the above on [-pi, pi], vanishing at 0
    with np.errstate(divide="ignore", invalid="ignore"):
        log_term = np.where(u == 0.0, 0.0, np.sin(u) * np.log(4.0 * np.sin(0.5 * u) ** 2))
    return -log_term + u * np.cos(u) + np.pi * np.sign(u) * (1.0 - np.cos(u))


def _wrapped_increment(primitive, u0, width):
    """Integral over ``[u0, u0 + width]`` of a 2pi-periodic function with
    primitive ``primitive`` valid on ``[-pi, pi]``; ``u0`` in ``(-pi, pi]``."""
    u1 = u0 + width
    over = u1 > np.pi
    inside = primitive(np.where(over, np.pi, u1)) - primitive(u0)
    spill = np.where(over, primitive(np.where(over, u1 - TWO_PI, -np.pi)) - primitive(-np.pi), 0.0)
    return inside + spill


def balayage_at(mu: Measure, t, rule: QuadratureRule | None = None):
    """Point values ``S_mu(e^{it})``."""
    t = np.asarray(t, dtype=float)
    if isinstance(mu, RadialSegment):
        return _radial_segment_balayage(wrap_angle(t - mu.angle))
    rings = mu.rings(rule) if rule is not None else None
    if rings is not None:
        # exact sum of the kernel over M equispaced nodes on each ring
        r, w, m = rings
        x = (r[:, None] ** m) * np.exp(-1j * m * t.ravel()[None, :])
        ring_sums = m * ((1.0 + x) / (1.0 - x)).real
        return (ring_sums.T @ w).reshape(t.shape) / m
    z, w = mu.nodes(rule)
    out = np.zeros(t.shape)
    flat = t.ravel()
    step = max(1, _BLOCK // max(flat.size, 1))
    acc = np.zeros(flat.size)
    for i in range(0, z.size, step):
        acc += poisson_kernel(z[i:i + step, None], flat[None, :]).T @ w[i:i + step]
    out[...] = acc.reshape(t.shape)
    return out


def balayage(mu: Measure, n: int, rule: QuadratureRule | None = None, mode: str = "cell") -> BoundaryGrid:
    """``S_mu`` sampled on ``n`` equispaced angles.

    Atomic measures are summed exactly; a bare radial segment uses its closed
    form; every other measure is discretised by ``rule``.
    """
    if n < 8:
        raise ValueError("need n >= 8")
    h = TWO_PI / n
    t = h * np.arange(n)
    if mode == "point":
        values = balayage_at(mu, t, rule)
    elif mode == "cell":
        if isinstance(mu, RadialSegment):
            u0 = wrap_angle(t - 0.5 * h - mu.angle)
            values = _wrapped_increment(_radial_segment_primitive, u0, h) / h
        elif (rings := mu.rings(rule) if rule is not None else None) is not None:
            r, w, m = rings
            edges = h * (np.arange(n + 1) - 0.5)
            # sum over a ring of t + 2 arg(1 - r e^{i(theta_m - t)}) in closed form
            prim = m * edges[None, :] + 2.0 * np.angle(
                1.0 - (r[:, None] ** m) * np.exp(-1j * m * edges[None, :]))
            values = (np.diff(prim, axis=1).T @ w) / (m * h)
        else:
            z, w = mu.nodes(rule)
            # the kernel at the origin is identically 1
            at_origin = z == 0
            base = float(np.sum(w[at_origin]))
            z, w = z[~at_origin], w[~at_origin]
            edges = h * (np.arange(n + 1) - 0.5)
            step = max(1, _BLOCK // (n + 1))
            values = np.zeros(n)
            for i in range(0, z.size, step):
                prim = poisson_antiderivative(z[i:i + step, None], edges[None, :])
                values += np.diff(prim, axis=1).T @ w[i:i + step]
            values = values / h + base
    else:
        raise ValueError(f"unknown grid mode {mode!r}")
    warnings = []
    gap = mu.boundary_gap()
    if gap is not None and gap > 0 and n < TWO_PI / gap:
        warnings.append(f"n={n} does not resolve a Poisson spike of width {gap:.3g}; "
                        f"need n >= {math.ceil(TWO_PI / gap)}")
    return BoundaryGrid(values, mode, warnings)


def b_balayage(mu: Measure, z, rule: QuadratureRule | None = None):
    """``G_mu(z) = int (1-|w|^2)^2 / |1 - conj(z) w|^4 d mu(w)``; broadcasts over ``z``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("evaluation points must lie inside the disk")
    flat = z.ravel()
    rings = mu.rings(rule) if rule is not None else None
    if rings is not None:
        # rotation-invariant rings: exact angular mean of |1 - rho e^{i theta}|^-4
        r, w, _ = rings
        rho2 = (np.abs(flat)[:, None] * r[None, :]) ** 2
        acc = ((1.0 + rho2) / (1.0 - rho2) ** 3) @ (w * (1.0 - r ** 2) ** 2)
        if not np.all(np.isfinite(acc)):
            raise NumericalFailure("non-finite B-balayage value", flat[~np.isfinite(acc)][0])
        return acc.reshape(z.shape) if z.ndim else float(acc[0])
    a, w = mu.nodes(rule)
    step = max(1, _BLOCK // max(flat.size, 1))
    acc = np.zeros(flat.size)
    for i in range(0, a.size, step):
        ai = a[i:i + step, None]
        k = (1.0 - np.abs(ai) ** 2) ** 2 / np.abs(1.0 - np.conj(flat[None, :]) * ai) ** 4
        acc += k.T @ w[i:i + step]
    if not np.all(np.isfinite(acc)):
        raise NumericalFailure("non-finite B-balayage value", flat[~np.isfinite(acc)][0])
    return acc.reshape(z.shape) if z.ndim else float(acc[0])


def _check_kernel_point(z: complex, rule: QuadratureRule) -> complex:
    z = complex(z)
    if not abs(z) < 1:
        raise ValueError("z must lie inside the disk")
    if abs(z) > rule.max_usable_radius:
        raise ValueError(f"|z| = {abs(z):.6g} exceeds the rule's usable radius "
                         f"{rule.max_usable_radius:.6g}; raise angular_count or refinement_levels")
    return z


def bergman_projection(g: Callable, alpha: float, z: complex, rule: QuadratureRule) -> complex:
    """``P_alpha g(z) = int g(w) / (1 - z conj(w))^(2+alpha) dA_alpha(w)``."""
    z = _check_kernel_point(z, rule)
    return complex(integrate_disk(lambda w: g(w) * (1.0 - z * np.conj(w)) ** (-(2.0 + alpha)),
                                  alpha, rule))


def projected_derivative(g: Callable, alpha: float, z: complex, rule: QuadratureRule) -> complex:
    """``(1-|z|^2) (P_alpha g)'(z)`` through the differentiated kernel."""
    z = _check_kernel_point(z, rule)
    integral = integrate_disk(
        lambda w: g(w) * np.conj(w) * (1.0 - z * np.conj(w)) ** (-(3.0 + alpha)), alpha, rule)
    return complex((alpha + 2.0) * (1.0 - abs(z) ** 2) * integral)


def besov_norm(f: Polynomial, p: float, rule: QuadratureRule) -> float:
    """``(int |f'|^p (1-|z|^2)^(p-2) dA)^(1/p)``, the Besov seminorm.

    The weight ``(1-|z|^2)^(p-2)`` is folded into ``dA_{p-2}`` so the
    quadrature absorbs it exactly even when ``p < 2``.
    """
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")
    df = Polynomial(f.coef).deriv() if len(f.coef) > 1 else Polynomial([0.0])
    if not np.any(df.coef):
        return 0.0
    value = integrate_disk(lambda z: np.abs(df(z)) ** p, p - 2.0, rule) / (p - 1.0)
    return float(value) ** (1.0 / p)


# -- test polynomials -------------------------------------------------------

def _series_mul(a: np.ndarray, b: np.ndarray, degree: int) -> np.ndarray:
    return np.convolve(a, b)[: degree + 1]


def mobius_power_polynomial(a: complex, k: int, degree: int = 24) -> Polynomial:
    """Taylor truncation of ``((a - z) / (1 - conj(a) z))^k``."""
    a = complex(a)
    geo = np.conj(a) ** np.arange(degree + 1)
    factor = _series_mul(np.array([a, -1.0], dtype=complex), geo, degree)
    out = np.array([1.0 + 0j])
    for _ in range(k):
        out = _series_mul(out, factor, degree)
    return Polynomial(out)


def kernel_polynomial(a: complex, exponent: float, degree: int = 24) -> Polynomial:
    """Taylor truncation of ``((1-|a|^2) / (1 - conj(a) z)^2)^exponent``.

    These concentrate near ``a / |a|`` as ``|a| -> 1``.
    """
    a = complex(a)
    m = np.arange(degree + 1)
    two_e = 2.0 * exponent
    log_binom = gammaln(m + two_e) - gammaln(m + 1) - gammaln(two_e)
    coef = np.exp(log_binom) * np.conj(a) ** m * (1.0 - abs(a) ** 2) ** exponent
    return Polynomial(coef)
