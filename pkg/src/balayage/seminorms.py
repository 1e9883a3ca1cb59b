"""Functionals of boundary grids: arc averages, mean oscillation,
Campanato seminorms and the weighted double-oscillation functional.

Grid functions are read as periodic piecewise-linear interpolants, so
arc integrals are exact trapezoid sums over the grid nodes inside the arc
plus the two interpolated end pieces.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .geometry import Arc, dyadic_level
from .numerics import ArcPairResult, ArcPairRule, integrate_arc_pair
from .operators import BoundaryGrid

MIN_NODES_PER_ARC = 4


class ResolutionError(ValueError):
    """The arc holds too few grid nodes for a meaningful integral."""


@dataclass(frozen=True)
class OscillationSample:
    arc: Arc
    value: float
    scale_index: int


def nodes_in_arc(phi: BoundaryGrid, arc: Arc) -> int:
    return int(math.floor(arc.length / phi.spacing + 1e-9))


def check_resolution(phi: BoundaryGrid, arc: Arc) -> None:
    if nodes_in_arc(phi, arc) < MIN_NODES_PER_ARC:
        raise ResolutionError(
            f"arc of length {arc.length:.3g} spans fewer than {MIN_NODES_PER_ARC} "
            f"grid spacings (n={phi.n})")


def arc_samples(phi: BoundaryGrid, arc: Arc):
    """Breakpoints, trapezoid weights and values of ``phi`` on ``arc``."""
    check_resolution(phi, arc)
    h = phi.spacing
    a, b = arc.start, arc.end
    j0, j1 = math.floor(a / h) + 1, math.ceil(b / h) - 1
    inner = h * np.arange(j0, j1 + 1)
    t = np.concatenate([[a], inner, [b]])
    values = np.concatenate([[phi(a)], phi.values[np.arange(j0, j1 + 1) % phi.n], [phi(b)]])
    dt = np.diff(t)
    w = np.zeros(t.size)
    w[:-1] += 0.5 * dt
    w[1:] += 0.5 * dt
    return t, w, values


def arc_average(phi: BoundaryGrid, arc: Arc) -> float:
    _, w, v = arc_samples(phi, arc)
    return float(np.dot(w, v) / arc.length)


def _abs_power_segments(a, b, d, p):
    """Exact ``int |linear|^p`` over segments of width ``d`` with end values ``a``, ``b``."""
    aa, bb = np.abs(a), np.abs(b)
    same = a * b >= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        across = (aa ** (p + 1) + bb ** (p + 1)) / ((p + 1) * (aa + bb))
        along = (np.maximum(aa, bb) ** (p + 1) - np.minimum(aa, bb) ** (p + 1)) / (
            (p + 1) * np.abs(bb - aa))
    flat = aa ** p
    out = np.where(same, np.where(aa == bb, flat, along), across)
    return d * np.where(np.isfinite(out), out, flat)


def mean_oscillation(phi: BoundaryGrid, arc: Arc, p: float = 1.0) -> float:
    """``(1/|I|) int_I |phi - phi_I|^p``; with ``p = 1`` the BMO integrand.

    Exact for the piecewise-linear interpolant, including the kinks where
    ``phi`` crosses its average.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    t, w, v = arc_samples(phi, arc)
    if np.all(v == v[0]):
        return 0.0
    dev = v - np.dot(w, v) / arc.length
    return float(np.sum(_abs_power_segments(dev[:-1], dev[1:], np.diff(t), p)) / arc.length)


def campanato_seminorm(phi: BoundaryGrid, p: float, lam: float, depth: int,
                       min_depth: int = 0) -> tuple[float, list[OscillationSample]]:
    """Sup over the two-shift dyadic grid of ``|I|^-lam int_I |phi - phi_I|^p``.

    Levels whose arcs hold fewer than four grid nodes raise
    :class:`ResolutionError`; callers wanting partial sweeps should trim
    ``depth`` first (see :func:`max_resolved_depth`).
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    samples = []
    for k in range(min_depth, depth + 1):
        for arc in dyadic_level(k):
            value = arc.length ** (1.0 - lam) * mean_oscillation(phi, arc, p)
            samples.append(OscillationSample(arc, value, k))
    sup = max((smp.value for smp in samples), default=0.0)
    return sup, samples


def max_resolved_depth(phi: BoundaryGrid) -> int:
    """Finest dyadic level whose arcs pass the resolution guard."""
    k = 0
    while nodes_in_arc(phi, dyadic_level(k + 1)[0]) >= MIN_NODES_PER_ARC:
        k += 1
    return k


def per_scale_max(samples: Iterable[OscillationSample]) -> dict[int, float]:
    out: dict[int, float] = {}
    for smp in samples:
        out[smp.scale_index] = max(out.get(smp.scale_index, 0.0), smp.value)
    return dict(sorted(out.items()))


def grid_pair_rule(phi: BoundaryGrid, arc: Arc, gamma: float, max_panels: int = 256) -> ArcPairRule:
    """Arc-pair rule with about one panel per grid cell."""
    panels = min(max(nodes_in_arc(phi, arc), MIN_NODES_PER_ARC), max_panels)
    return ArcPairRule(gamma=gamma, panels=panels, order=3)


def thm1_functional(phi: BoundaryGrid, arc: Arc, gamma: float, s: float,
                    pair_rule: ArcPairRule | None = None) -> ArcPairResult:
    """``|I|^-(1+s-gamma) int_I int_I |phi(x) - phi(y)| / |e^{ix} - e^{iy}|^gamma``.

    The error budget is scaled by the same power of ``|I|``.
    """
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must lie in [0, 1), got {gamma}")
    if not 0.0 < s:
        raise ValueError("s must be positive")
    check_resolution(phi, arc)
    if pair_rule is None:
        pair_rule = grid_pair_rule(phi, arc, gamma)
    elif pair_rule.gamma != gamma:
        raise ValueError("pair rule was built for a different gamma")
    res = integrate_arc_pair(lambda x, y: np.abs(phi(x) - phi(y)), arc, pair_rule)
    scale = arc.length ** (1.0 + s - gamma)
    return ArcPairResult(res.value / scale, res.error_budget / scale)


def samples_to_csv(samples: Iterable[OscillationSample], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scale_index", "arc_center", "arc_length", "value"])
        for smp in samples:
            writer.writerow([smp.scale_index, repr(float(smp.arc.center)),
                             repr(float(smp.arc.length)), repr(float(smp.value))])
