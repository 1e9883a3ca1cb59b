"""Acceptance gate: one test per criterion, each printed as a PASS/FAIL line
in the terminal summary."""

import json
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from balayage.cli import main
from balayage.geometry import poisson_kernel
from balayage.measures import (Atomic, DiskCap, Mixture, RadialSegment, WeightedArea,
                               carleson_constant, fit_mass_slope, weight_transform)
from balayage.numerics import integrate_circle, integrate_disk
from balayage.operators import b_balayage, balayage, balayage_at, bergman_projection, besov_norm
from balayage.verify import (DEFAULT_RULE, DOMINATION_TOL, Verdict, verify_bbalayage_lipschitz,
                             verify_besov_lipschitz, verify_campanato_membership,
                             verify_embedding, verify_square_disk_equivalence, verify_thm1,
                             verify_weight_shift)

RESULTS: list[str] = []


@contextmanager
def criterion(number, title, limit=None):
    """Time the block, record a PASS/FAIL line, re-raise failures."""
    detail = {}
    start = time.perf_counter()
    try:
        yield detail
        elapsed = time.perf_counter() - start
        if limit is not None:
            detail["runtime"] = f"{elapsed:.2f}s < {limit}s"
            assert elapsed < limit, f"runtime {elapsed:.2f}s exceeds {limit}s"
    except BaseException as exc:
        info = "; ".join(f"{k}={v}" for k, v in detail.items())
        RESULTS.append(f"FAIL  {number:>2}. {title}: {info} ({type(exc).__name__}: {exc})")
        raise
    info = "; ".join(f"{k}={v}" for k, v in detail.items())
    RESULTS.append(f"PASS  {number:>2}. {title}: {info}")


def test_01_quadrature_identities():
    with criterion(1, "unit mass of dA_alpha and circle integral of P_z", 1.0) as d:
        mass_err = max(abs(integrate_disk(lambda z: np.ones_like(z.real), a, DEFAULT_RULE) - 1)
                       for a in (0.0, 2 / 3, 2.0))
        pts = [r * np.exp(1j * t) for r in (0.0, 0.3, 0.7, 0.9, 0.95, 0.99)
               for t in (0.0, 1.0, 2.5, 4.0)]
        pk_err = max(abs(integrate_circle(lambda t: poisson_kernel(z, t), 4096) - 2 * np.pi)
                     for z in pts)
        d["mass_err"], d["poisson_err"] = f"{mass_err:.1e}", f"{pk_err:.1e}"
        assert mass_err < 1e-8 and pk_err < 1e-8


def test_02_closed_form_operators():
    with criterion(2, "closed-form balayage and B-balayage values") as d:
        t = np.linspace(0, 2 * np.pi, 97)
        z = 0.9 * np.exp(1j * t[:48])
        delta0 = Atomic.dirac(0)
        s0 = balayage_at(delta0, t)
        g0 = b_balayage(delta0, z)
        assert np.all(s0 == 1.0) and np.all(g0 == 1.0)
        assert np.all(balayage(delta0, 1024).values == 1.0)
        half = balayage_at(Atomic.dirac(0.5), np.array([0.0, np.pi]))
        err_half = max(abs(half[0] - 3.0), abs(half[1] - 1 / 3))
        # int (1-r^2)^2 dA = int_0^1 (1-t)^2 dt with t = r^2
        ring_path = b_balayage(WeightedArea(0.0), 0.0, DEFAULT_RULE)
        node_path = b_balayage(Mixture(((1.0, WeightedArea(0.0)),)), 0.0, DEFAULT_RULE)
        err_area = max(abs(ring_path - 1 / 3), abs(node_path - 1 / 3))
        d["S_delta0"] = d["G_delta0"] = "exactly 1"
        d["S_delta_half_err"], d["G_dA_0_err"] = f"{err_half:.1e}", f"{err_area:.1e}"
        assert err_half < 1e-12 and err_area < 1e-6


FAMILIES = {
    "atomic": Atomic((0.5, 0.9j, -0.3 - 0.3j), (1.0, 0.5, 2.0)),
    "radial_segment": RadialSegment(1.0),
    "weighted_area": WeightedArea(0.5),
    "weight_transform": weight_transform(WeightedArea(0.0), 2.0),
}


def test_03_fubini_mass():
    with criterion(3, "mean of the balayage grid equals total mass") as d:
        worst = 0.0
        for name, mu in FAMILIES.items():
            grid = balayage(mu, 4096, DEFAULT_RULE)
            err = abs(grid.mean() - mu.total_mass())
            worst = max(worst, err)
        d["families"], d["max_err"] = len(FAMILIES), f"{worst:.1e}"
        assert worst < 1e-6


def test_04_slope_recovery():
    with criterion(4, "Carleson slope of dA and of weighted dA", 10.0) as d:
        # fit over the small-scale window, where box masses follow a power law
        window = range(4, 11)
        base = fit_mass_slope(carleson_constant(WeightedArea(0.0), 2.0, 10), window)
        d["dA_slope"] = f"{base:.4f}"
        assert abs(base - 2.0) <= 0.05
        for sigma in (0.5, 1.0, 2.0):
            slope = fit_mass_slope(carleson_constant(
                weight_transform(WeightedArea(0.0), sigma), 2.0 + sigma, 10), window)
            d[f"sigma={sigma}"] = f"{slope:.4f}"
            assert abs(slope - (2.0 + sigma)) <= 0.1


def test_05_boundary_suites():
    with criterion(5, "double-oscillation and Campanato suites bounded", 60.0) as d:
        for name, mu in (("delta_0.9", Atomic.dirac(0.9)), ("ray", RadialSegment(0.0))):
            for gamma in (0.0, 0.5):
                rep = verify_thm1(mu, 1.0, gamma, depths=(2, 8))
                d[f"{name}/gamma={gamma}"] = rep.verdict.value
                assert rep.verdict is Verdict.BOUNDED
            rep = verify_campanato_membership(mu, 1.0, depths=(2, 8))
            excess = rep.extras["domination_max_excess"]
            d[f"{name}/campanato"] = f"{rep.verdict.value} excess {excess:.1e}"
            assert rep.verdict is Verdict.BOUNDED and excess <= DOMINATION_TOL


def test_06_lipschitz_suites():
    with criterion(6, "B-balayage and Besov Lipschitz suites", 30.0) as d:
        rep = verify_bbalayage_lipschitz(weight_transform(WeightedArea(0.0), 2.0), 2.0, seed=0)
        d["bbal"] = rep.verdict.value
        d["bbal_tier_rule"] = rep.extras["tier_rule"]
        assert rep.verdict is Verdict.BOUNDED
        besov = verify_besov_lipschitz(Polynomial([0.0, 1.0]), 2.0, seed=0)
        spot = verify_besov_lipschitz(Polynomial([0.0, 1.0]), 2.0, pairs=[(0, 0.5)])
        value = spot.samples[0][1]
        d["besov"], d["spot"] = besov.verdict.value, f"{value:.6f}"
        assert besov.verdict is Verdict.BOUNDED
        assert abs(value - 0.5 / math.sqrt(0.5 * math.log(3))) < 1e-4


def test_07_reproducing_property():
    with criterion(7, "Bergman projection reproduces polynomials") as d:
        rng = np.random.default_rng(2024)
        pts = 0.9 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
        worst = 0.0
        for alpha in (0.0, 1.0, 2.5):
            for deg in range(7):
                p = Polynomial(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))
                for z in pts:
                    worst = max(worst, abs(bergman_projection(p, alpha, z, DEFAULT_RULE) - p(z)))
        d["points"], d["max_err"] = len(pts), f"{worst:.1e}"
        assert worst < 1e-6


def test_08_besov_closed_forms():
    with criterion(8, "Besov norm of z") as d:
        for p in (2.0, 3.0):
            err = abs(besov_norm(Polynomial([0.0, 1.0]), p, DEFAULT_RULE) - (1 / (p - 1)) ** (1 / p))
            d[f"p={p:g}"] = f"{err:.1e}"
            assert err < 1e-5


DETERMINISM_CONFIGS = {
    "bbal": ({"type": "weighted_area", "alpha": 0.0}, {"p": 2.0}),
    "thm1": ({"type": "radial_segment", "angle": 0.0}, {"s": 1.0, "gamma": 0.5, "depths": [2, 6]}),
    "campanato": ({"type": "atomic", "atoms": [{"re": 0.9, "mass": 1.0}]},
                  {"s": 1.0, "depths": [2, 6]}),
    "besov": (None, {"p": 3.0, "coefficients": [0, 1, [0, 0.5]]}),
    "weight_shift": ({"type": "weighted_area", "alpha": 0.0}, {"sigma": 1.0, "s": 2.0}),
    "embedding": ({"type": "weighted_area", "alpha": 1.0}, {"alpha": 1.0, "p": 2.0}),
    "square_disk": ({"type": "weighted_area", "alpha": 0.0}, {"s": 2.0}),
    "projection_besov": (None, {"alpha": 0.5, "p": 2.0}),
}


def test_09_determinism(tmp_path):
    with criterion(9, "byte-identical JSON on repeated runs") as d:
        for suite, (measure, params) in DETERMINISM_CONFIGS.items():
            raw = {"schema_version": 1, "suite": suite, "parameters": params, "seed": 3}
            if measure is not None:
                raw["measure"] = measure
            cfg = tmp_path / f"{suite}.json"
            cfg.write_text(json.dumps(raw))
            codes = [main(["run", "--config", str(cfg), "--out", str(tmp_path / run),
                           "--format", "json"]) for run in ("a", "b")]
            assert codes[0] == codes[1] and codes[0] in (0, 3, 4)
            a = (tmp_path / "a" / f"{suite}.json").read_bytes()
            b = (tmp_path / "b" / f"{suite}.json").read_bytes()
            assert a == b, suite
        d["suites"] = len(DETERMINISM_CONFIGS)


def _cross_check(atom_rep, cap_rep):
    atom, cap = dict(atom_rep.samples), dict(cap_rep.samples)
    assert atom.keys() == cap.keys()
    worst = 0.0
    for label, ra in atom.items():
        rc = cap[label]
        if ra == rc:
            continue
        worst = max(worst, abs(ra - rc) / max(abs(ra), abs(rc)))
    return worst


def test_10_atom_vs_mollified_atom():
    with criterion(10, "atomic and mollified-atom paths agree") as d:
        worst = {}
        # generic positions: off dyadic box edges and off zeros of the test polynomials
        for a in (0.45 * np.exp(0.3j), 0.7 * np.exp(2.2j), 0.9 * np.exp(1j)):
            atom = Atomic.dirac(a)
            cap = DiskCap(a, 1e-3 * (1 - abs(a)))
            runs = {
                "thm1": lambda m: verify_thm1(m, 1.0, 0.5, depths=(2, 6)),
                "campanato": lambda m: verify_campanato_membership(m, 1.0, depths=(2, 6)),
                "bbal": lambda m: verify_bbalayage_lipschitz(m, 2.0, seed=0),
                "weight_shift": lambda m: verify_weight_shift(m, 1.0, 1.0),
                "embedding": lambda m: verify_embedding(m, 0.0, 2.0),
                "square_disk": lambda m: verify_square_disk_equivalence(m, 2.0),
            }
            for name, fn in runs.items():
                worst[name] = max(worst.get(name, 0.0), _cross_check(fn(atom), fn(cap)))
        d.update({k: f"{v:.1e}" for k, v in worst.items()})
        assert max(worst.values()) <= 0.05


@pytest.fixture(scope="module", autouse=True)
def _reset():
    RESULTS.clear()
    yield
