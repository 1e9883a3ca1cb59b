"""Quadrature on the disk, the circle and arc-squared domains.

Radial integrals use Gauss-Legendre rules on geometric bands
``[1 - 2^-k, 1 - 2^-(k+1))`` with a final band reaching ``r = 1``.  The
final band is integrated with a Gauss-Jacobi rule that absorbs the factor
``(1 - r)^e`` exactly, so weights ``(1 - |z|^2)^alpha`` with ``alpha`` close
to ``-1`` cost no accuracy.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import roots_jacobi

from .geometry import TWO_PI, Arc, chord


class NumericalFailure(ArithmeticError):
    """A quadrature produced a non-finite value."""

    def __init__(self, message: str, node=None):
        super().__init__(message if node is None else f"{message} at node {node!r}")
        self.node = node


def _check_finite(values, nodes):
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = np.flatnonzero(np.ravel(bad))[0]
        node = np.ravel(np.broadcast_to(nodes, np.shape(values)))[idx]
        raise NumericalFailure("non-finite integrand", node)


def band_edges(levels: int) -> np.ndarray:
    """Radii ``0, 1/2, 3/4, ..., 1 - 2^-levels, 1``."""
    inner = 1.0 - 0.5 ** np.arange(levels + 1)
    return np.append(inner, 1.0)


@functools.lru_cache(maxsize=None)
def _legendre01(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


@functools.lru_cache(maxsize=None)
def _jacobi01(order: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    # nodes/weights for int_0^1 x^exponent g(x) dx
    if exponent == 0.0:
        return _legendre01(order)
    y, w = roots_jacobi(order, 0.0, exponent)
    return 0.5 * (y + 1.0), w * 0.5 ** (exponent + 1.0)


@functools.lru_cache(maxsize=256)
def radial_rule(order: int, levels: int, exponent: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``int_0^1 (1 - r)^exponent g(r) dr``.

    The returned weights already contain ``(1 - r)^exponent``; callers sum
    ``w * g(r)``.
    """
    if exponent <= -1.0:
        raise ValueError("radial weight exponent must exceed -1")
    edges = band_edges(levels)
    xs, ws = _legendre01(order)
    radii, weights = [], []
    for a, b in zip(edges[:-2], edges[1:-1]):
        r = a + (b - a) * xs
        radii.append(r)
        weights.append((b - a) * ws * (1.0 - r) ** exponent)
    # last band [a, 1): r = 1 - h x, (1 - r)^e = h^e x^e
    h = 1.0 - edges[-2]
    xj, wj = _jacobi01(order, float(exponent))
    radii.append(1.0 - h * xj)
    weights.append(h ** (exponent + 1.0) * wj)
    r = np.concatenate(radii)
    w = np.concatenate(weights)
    order_idx = np.argsort(r)
    return r[order_idx], w[order_idx]


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor rule on the disk: banded radial nodes times equispaced angles.

    ``radial_count`` nodes are used in each of the ``refinement_levels + 1``
    radial bands.
    """

    radial_count: int
    angular_count: int
    refinement_levels: int = 0
    radial_nodes: np.ndarray = field(init=False, repr=False, compare=False)
    radial_weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.radial_count < 2 or self.angular_count < 4 or self.refinement_levels < 0:
            raise ValueError(
                "need radial_count >= 2, angular_count >= 4, refinement_levels >= 0"
            )
        r, w = radial_rule(self.radial_count, self.refinement_levels)
        object.__setattr__(self, "radial_nodes", r)
        object.__setattr__(self, "radial_weights", w)

    @property
    def size(self) -> int:
        return self.radial_nodes.size * self.angular_count

    @property
    def angles(self) -> np.ndarray:
        return TWO_PI * np.arange(self.angular_count) / self.angular_count

    @property
    def max_usable_radius(self) -> float:
        """Largest ``|z|`` at which kernels like ``(1 - z conj(w))^-k`` are
        resolved: the peak width ``1 - |z|`` must span 16 angular spacings and
        lie outside the last radial band."""
        return min(1.0 - 16.0 / self.angular_count, 1.0 - 0.5 ** max(self.refinement_levels - 2, 1))

    def radial(self, exponent: float = 0.0):
        return radial_rule(self.radial_count, self.refinement_levels, float(exponent))

    def disk_nodes(self, alpha: float = 0.0, sigma: float = 0.0):
        """Points and weights for ``dA_alpha`` times ``(1 - |z|)^sigma``.

        With ``sigma = 0`` the weights sum to 1 (up to quadrature error).
        """
        return _disk_nodes(self, float(alpha), float(sigma))


@functools.lru_cache(maxsize=64)
def _disk_nodes(rule: QuadratureRule, alpha: float, sigma: float):
    if alpha <= -1.0:
        raise ValueError("alpha must exceed -1")
    r, w = rule.radial(alpha + sigma)
    # (alpha+1)(1-r^2)^alpha dA = (alpha+1)(1-r)^alpha (1+r)^alpha * 2r dr dtheta/2pi
    w = w * (alpha + 1.0) * (1.0 + r) ** alpha * 2.0 * r / rule.angular_count
    z = r[:, None] * np.exp(1j * rule.angles)[None, :]
    weights = np.broadcast_to(w[:, None], z.shape)
    points, weights = z.ravel(), np.ascontiguousarray(weights).ravel()
    points.setflags(write=False)
    weights.setflags(write=False)
    return points, weights


def build_disk_rule(radial_count: int, angular_count: int, refinement_levels: int = 0) -> QuadratureRule:
    return QuadratureRule(int(radial_count), int(angular_count), int(refinement_levels))


def _real_if_close(value):
    value = complex(value)
    return value.real if value.imag == 0.0 else value


def integrate_disk(f: Callable, alpha: float, rule: QuadratureRule):
    """Integrate ``f`` against ``dA_alpha = (alpha+1)(1-|z|^2)^alpha dA``.

    ``f`` receives a complex array of nodes.  Returns a float for real
    integrands and a complex number otherwise.
    """
    if not alpha > -1.0:
        raise ValueError(f"alpha must exceed -1, got {alpha}")
    z, w = rule.disk_nodes(alpha)
    values = np.asarray(f(z))
    _check_finite(values, z)
    total = np.sum(values * w)
    return float(total) if np.isrealobj(total) else _real_if_close(total)


def integrate_circle(f: Callable, n: int) -> float:
    """Trapezoid rule on ``n`` equispaced angles over a full period."""
    if n < 8:
        raise ValueError("need at least 8 circle nodes")
    t = TWO_PI * np.arange(n) / n
    values = np.asarray(f(t))
    _check_finite(values, t)
    total = np.sum(values) * (TWO_PI / n)
    return float(total) if np.isrealobj(total) else _real_if_close(total)


@dataclass(frozen=True)
class ArcPairRule:
    """Rule for ``int_I int_I f(theta, phi) |e^{i theta} - e^{i phi}|^-gamma``.

    The square ``I x I`` is parametrised by the offset ``u = |theta - phi|``.
    The offset range is split into ``panels`` Gauss-Legendre panels of
    ``order`` nodes; the first panel is the diagonal band of half-width
    ``|I| / panels`` and is graded (``u = h t^q``) so that the ``u^-gamma``
    singularity is absorbed by the Jacobian.
    """

    gamma: float = 0.0
    panels: int = 16
    order: int = 6

    def __post_init__(self):
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma must lie in [0, 1), got {self.gamma}")
        if self.panels < 1 or self.order < 1:
            raise ValueError("panels and order must be positive")

    def band(self, arc: Arc) -> float:
        return arc.length / self.panels

    @property
    def grading(self) -> int:
        return int(np.ceil(1.0 / (1.0 - self.gamma) - 1e-12))


class ArcPairResult(NamedTuple):
    value: float
    error_budget: float


def integrate_arc_pair(f: Callable, arc: Arc, rule: ArcPairRule) -> ArcPairResult:
    """Singular double integral over ``I x I``.

    ``f(theta, phi)`` must broadcast over arrays.  The returned
    ``error_budget`` is an analytic majorant of the diagonal band's
    contribution, ``sup|f| * |I| * 2 (pi/2)^gamma h^(1-gamma) / (1-gamma)``
    with ``h`` the band half-width, so truncation of the singular region
    stays auditable even though the band is integrated, not dropped.
    """
    gamma = rule.gamma
    length = arc.length
    a = arc.start
    h = rule.band(arc)
    q = rule.grading
    t, wt = _legendre01(rule.order)

    # offsets: graded first panel, plain panels after
    u_first = h * t**q
    w_first = h * q * t ** (q - 1) * wt
    starts = h * np.arange(1, rule.panels)
    u_rest = (starts[:, None] + h * t[None, :]).ravel()
    w_rest = np.tile(h * wt, rule.panels - 1)
    u = np.concatenate([u_first, u_rest])
    wu = np.concatenate([w_first, w_rest])

    # inner variable phi in [a, a + L - u], composite over the same panel count
    x = ((np.arange(rule.panels)[:, None] + t[None, :]) / rule.panels).ravel()
    wx = np.tile(wt / rule.panels, rule.panels)

    span = (length - u)[:, None]
    phi = a + span * x[None, :]
    theta = phi + u[:, None]
    weight = wu[:, None] * span * wx[None, :]

    kernel = chord(theta, phi)
    with np.errstate(divide="ignore", invalid="ignore"):
        k = np.where(kernel > 0.0, kernel ** (-gamma), 0.0) if gamma > 0 else 1.0
    values = (np.asarray(f(theta, phi)) + np.asarray(f(phi, theta))) * k
    values = np.broadcast_to(values, weight.shape)
    _check_finite(values, theta)
    total = float(np.sum(values * weight))

    band_f = np.broadcast_to(np.abs(np.asarray(f(theta[: rule.order], phi[: rule.order]))),
                             weight[: rule.order].shape)
    sup_f = float(np.max(band_f)) if band_f.size else 0.0
    budget = sup_f * length * 2.0 * (0.5 * np.pi) ** gamma * h ** (1.0 - gamma) / (1.0 - gamma)
    return ArcPairResult(total, budget)
