"""Command-line front end for the verification suites.

Configs are JSON objects::

    {
      "schema_version": 1,
      "suite": "thm1",
      "measure": {"type": "radial_segment", "angle": 0.0},
      "parameters": {"s": 1.0, "gamma": 0.5, "depths": [2, 8]},
      "quadrature": {"radial_count": 24, "angular_count": 512,
                     "refinement_levels": 10, "grid_n": 2048},
      "seed": 0
    }

Every suite precondition is checked before any computation starts.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from . import verify as V
from .measures import Measure, carleson_constant, measure_from_spec
from .numerics import NumericalFailure, QuadratureRule
from .operators import b_balayage, balayage

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_CONFIG = 2
EXIT_CODES = {V.Verdict.BOUNDED: 0, V.Verdict.TREND_VIOLATION: 3,
              V.Verdict.RESOLUTION_LIMITED: 4}

FORMATS = ("json", "csv", "svg")


@dataclass(frozen=True)
class SuiteInfo:
    name: str
    theorem_id: V.TheoremId
    parameters: str
    claim: str


SUITES = (
    SuiteInfo("bbal", V.TheoremId.BBAL_LIP, "p, pairs, seed",
              "B-balayage of a 2p-Carleson measure is 1/p-Lipschitz in the hyperbolic metric"),
    SuiteInfo("thm1", V.TheoremId.THM1, "s, gamma, depths, grid_n",
              "weighted double oscillation of the balayage of an s-Carleson measure"),
    SuiteInfo("campanato", V.TheoremId.CAMPANATO, "s, depths, grid_n",
              "balayage of an s-Carleson measure lies in the Campanato space of order s"),
    SuiteInfo("besov", V.TheoremId.BESOV_LIP, "coefficients, p, pairs, seed",
              "Besov functions are 1/q-Lipschitz in the hyperbolic metric"),
    SuiteInfo("weight_shift", V.TheoremId.WEIGHT_SHIFT, "sigma, s, depths",
              "weighting by (1-|z|)^sigma raises the Carleson exponent by sigma"),
    SuiteInfo("embedding", V.TheoremId.EMBEDDING, "alpha, p",
              "weighted Bergman embedding for (alpha+2)-Carleson measures"),
    SuiteInfo("square_disk", V.TheoremId.SQUARE_DISK, "s, depth, r, centers",
              "box and hyperbolic-disk Carleson conditions agree for s > 1"),
    SuiteInfo("projection_besov", V.TheoremId.PROJECTION_BESOV, "alpha, p, max_degree",
              "the weighted Bergman projection maps L^p(d tau) into B_p"),
)
SUITE_NAMES = tuple(info.name for info in SUITES)


class ConfigError(ValueError):
    """Raised for any schema or precondition violation."""


@dataclass
class RunConfig:
    suite: str
    measure: Measure | None
    parameters: dict[str, Any]
    rule: QuadratureRule
    grid_n: int
    seed: int | None = None
    out_dir: Path = Path("out")
    formats: tuple[str, ...] = ("json", "csv")
    raw: dict = field(default_factory=dict, repr=False)


def list_suites() -> str:
    """Fixed-width table of suite ids, their parameters and what they check."""
    rows = [("suite", "report id", "parameters", "checks")]
    rows += [(i.name, i.theorem_id.value, i.parameters, i.claim) for i in SUITES]
    widths = [max(len(r[c]) for r in rows) for c in range(3)]
    lines = ["  ".join(r[c].ljust(widths[c]) for c in range(3)) + "  " + r[3] for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


# -- config parsing ----------------------------------------------------------

def _number(params: dict, key: str, default=None) -> float:
    value = params.get(key, default)
    if value is None:
        raise ConfigError(f"missing parameter {key!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"parameter {key!r} must be a number")
    if not np.isfinite(value):
        raise ConfigError(f"parameter {key!r} must be finite")
    return float(value)


def _integer(params: dict, key: str, default=None) -> int:
    value = params.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"parameter {key!r} must be an integer")
    return value


def _depths(params: dict, default: tuple[int, int]) -> tuple[int, int]:
    value = params.get("depths", list(default))
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)):
        raise ConfigError("depths must be a pair of integers [lo, hi]")
    lo, hi = value
    if not 0 <= lo <= hi <= 24:
        raise ConfigError("depths must satisfy 0 <= lo <= hi <= 24")
    return lo, hi


def _point(value) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        z = complex(value)
    elif isinstance(value, list) and len(value) == 2:
        z = complex(float(value[0]), float(value[1]))
    elif isinstance(value, dict) and "re" in value:
        z = complex(float(value["re"]), float(value.get("im", 0.0)))
    else:
        raise ConfigError(f"cannot read a disk point from {value!r}")
    if not abs(z) < 1.0:
        raise ConfigError(f"point {z} lies outside the disk")
    return z


def _rule(raw: dict) -> tuple[QuadratureRule, int]:
    quad = raw.get("quadrature", {})
    if not isinstance(quad, dict):
        raise ConfigError("quadrature must be an object")
    unknown = set(quad) - {"radial_count", "angular_count", "refinement_levels", "grid_n"}
    if unknown:
        raise ConfigError(f"unknown quadrature keys {sorted(unknown)}")
    d = V.DEFAULT_RULE
    try:
        rule = QuadratureRule(_integer(quad, "radial_count", d.radial_count),
                              _integer(quad, "angular_count", d.angular_count),
                              _integer(quad, "refinement_levels", d.refinement_levels))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    n = _integer(quad, "grid_n", V.DEFAULT_GRID_N)
    if n < 8:
        raise ConfigError("grid_n must be at least 8")
    return rule, n


def _pairs(params: dict, seed: int | None):
    if "pair_list" in params:
        items = params["pair_list"]
        if not isinstance(items, list) or not items:
            raise ConfigError("pair_list must be a non-empty list of [z, w]")
        pairs = []
        for item in items:
            if not isinstance(item, list) or len(item) != 2:
                raise ConfigError("each pair must be [z, w]")
            z, w = _point(item[0]), _point(item[1])
            if z == w:
                raise ConfigError(f"coincident pair {z}")
            pairs.append(V.classify_pair(z, w))
        return pairs
    if seed is None:
        raise ConfigError("random pair sampling needs a seed")
    tiers = params.get("pairs", {})
    if not isinstance(tiers, dict):
        raise ConfigError("pairs must be an object of tier sizes")
    unknown = set(tiers) - {"interior", "near_diagonal", "boundary_levels", "per_level",
                            "boundary_distance"}
    if unknown:
        raise ConfigError(f"unknown pair keys {sorted(unknown)}")
    kwargs = {k: _integer(tiers, k) for k in ("interior", "near_diagonal", "boundary_levels",
                                              "per_level") if k in tiers}
    if any(v < 0 for v in kwargs.values()):
        raise ConfigError("tier sizes must be nonnegative")
    if kwargs.get("boundary_levels", 10) > 30:
        raise ConfigError("boundary_levels must be at most 30")
    if "boundary_distance" in tiers:
        kwargs["boundary_distance"] = _number(tiers, "boundary_distance")
        if kwargs["boundary_distance"] <= 0:
            raise ConfigError("boundary_distance must be positive")
    pairs = V.sample_pairs(seed, **kwargs)
    if not pairs:
        raise ConfigError("pair tiers are all empty")
    return pairs


def _polynomial(params: dict) -> Polynomial:
    coef = params.get("coefficients")
    if not isinstance(coef, list) or not coef:
        raise ConfigError("besov needs a non-empty 'coefficients' list")
    values = []
    for c in coef:
        if isinstance(c, (int, float)) and not isinstance(c, bool):
            values.append(complex(c))
        elif isinstance(c, list) and len(c) == 2:
            values.append(complex(float(c[0]), float(c[1])))
        else:
            raise ConfigError(f"bad coefficient {c!r}")
    if not any(values[1:]):
        raise ConfigError("constant polynomial: the Besov seminorm vanishes")
    arr = np.array(values)
    return Polynomial(arr.real if not np.any(arr.imag) else arr)


def _suite_parameters(suite: str, params: dict, seed: int | None) -> dict:
    """Validate suite parameters and return keyword arguments for the suite."""
    out: dict[str, Any] = {}
    if suite in ("thm1", "campanato"):
        s = _number(params, "s", 1.0)
        if not 0.0 < s < 2.0:
            raise ConfigError("s must lie in (0, 2); values above 1 are exploratory")
        out.update(s=s, depths=_depths(params, (2, 8)), exploratory=s > 1.0)
        if suite == "thm1":
            gamma = _number(params, "gamma", 0.0)
            if not 0.0 <= gamma < 1.0:
                raise ConfigError("gamma must lie in [0, 1)")
            out["gamma"] = gamma
    elif suite == "bbal":
        p = _number(params, "p")
        if not p > 1.0:
            raise ConfigError("p must exceed 1")
        out.update(p=p, pairs=_pairs(params, seed))
    elif suite == "besov":
        p = _number(params, "p")
        if not p > 1.0:
            raise ConfigError("p must exceed 1")
        out.update(f=_polynomial(params), p=p, pairs=_pairs(params, seed))
    elif suite == "weight_shift":
        sigma, s = _number(params, "sigma"), _number(params, "s")
        if not sigma > 0:
            raise ConfigError("sigma must be positive")
        if not s > 0:
            raise ConfigError("s must be positive")
        depths = _depths(params, (4, 10))
        if depths[1] - depths[0] + 1 < 4:
            raise ConfigError("weight_shift needs at least four scales")
        out.update(sigma=sigma, s=s, depths=depths)
    elif suite == "embedding":
        alpha, p = _number(params, "alpha", 0.0), _number(params, "p", 2.0)
        if not alpha > -1:
            raise ConfigError("alpha must exceed -1")
        if not p > 1:
            raise ConfigError("p must exceed 1")
        out.update(alpha=alpha, p=p)
    elif suite == "square_disk":
        s, r = _number(params, "s"), _number(params, "r", 1.0)
        if not s > 1:
            raise ConfigError("square_disk needs s > 1")
        if not r > 0:
            raise ConfigError("r must be positive")
        depth = _integer(params, "depth", 10)
        if not 0 <= depth <= 24:
            raise ConfigError("depth must lie in [0, 24]")
        out.update(s=s, r=r, depth=depth)
        if "centers" in params:
            if not isinstance(params["centers"], list) or not params["centers"]:
                raise ConfigError("centers must be a non-empty list")
            out["centers"] = [_point(c) for c in params["centers"]]
    elif suite == "projection_besov":
        alpha, p = _number(params, "alpha", 0.0), _number(params, "p", 2.0)
        if not alpha > -1:
            raise ConfigError("alpha must exceed -1")
        if not p > 1:
            raise ConfigError("p must exceed 1")
        hi = _integer(params, "max_degree", 12)
        if not 4 <= hi <= 64:
            raise ConfigError("max_degree must lie in [4, 64]")
        out.update(alpha=alpha, p=p, degrees=list(range(1, hi + 1)))
    else:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    return out


def parse_config(raw: dict, *, seed: int | None = None, out_dir: str | None = None,
                 formats: Sequence[str] | None = None, need_suite: bool = True) -> RunConfig:
    """Validate a raw config object; command-line overrides win over the file."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version must be {SCHEMA_VERSION}, got {version!r}")
    unknown = set(raw) - {"schema_version", "suite", "measure", "parameters", "quadrature",
                          "seed", "output"}
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    if seed is None and raw.get("seed") is not None:
        seed = _integer(raw, "seed")
    output = raw.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError("output must be an object")
    out_dir = out_dir or output.get("dir", "out")
    formats = tuple(formats or output.get("formats", ("json", "csv")))
    bad = [f for f in formats if f not in FORMATS]
    if bad:
        raise ConfigError(f"unknown output formats {bad}")

    suite = raw.get("suite")
    if need_suite and suite not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    rule, n = _rule(raw)
    params = raw.get("parameters", {})
    if not isinstance(params, dict):
        raise ConfigError("parameters must be an object")

    measure = None
    if suite not in ("besov", "projection_besov") or not need_suite:
        if "measure" not in raw:
            raise ConfigError("config needs a 'measure'")
        try:
            measure = measure_from_spec(raw["measure"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad measure spec: {exc}") from exc
    kwargs = _suite_parameters(suite, params, seed) if need_suite else dict(params)
    return RunConfig(suite or "", measure, kwargs, rule, n, seed, Path(out_dir), formats, raw)


def load_config(path, **overrides) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return parse_config(raw, **overrides)


def _prepare_out_dir(path: Path) -> None:
    try:
        path.mkdir(parents=True, exist_ok=True)
        probe = path / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output directory {path} is not writable: {exc}") from exc


# -- execution ----------------------------------------------------------------

def execute(cfg: RunConfig) -> V.VerificationReport:
    """Run the configured suite."""
    kw = dict(cfg.parameters)
    mu, rule = cfg.measure, cfg.rule
    if cfg.suite == "thm1":
        return V.verify_thm1(mu, kw["s"], kw["gamma"], kw["depths"], cfg.grid_n, rule,
                             kw["exploratory"])
    if cfg.suite == "campanato":
        return V.verify_campanato_membership(mu, kw["s"], kw["depths"], cfg.grid_n, rule,
                                             kw["exploratory"])
    if cfg.suite == "bbal":
        return V.verify_bbalayage_lipschitz(mu, kw["p"], kw["pairs"], rule)
    if cfg.suite == "besov":
        return V.verify_besov_lipschitz(kw["f"], kw["p"], kw["pairs"], rule)
    if cfg.suite == "weight_shift":
        return V.verify_weight_shift(mu, kw["sigma"], kw["s"], kw["depths"])
    if cfg.suite == "embedding":
        return V.verify_embedding(mu, kw["alpha"], kw["p"], rule=rule)
    if cfg.suite == "square_disk":
        return V.verify_square_disk_equivalence(mu, kw["s"], kw["depth"], kw["r"],
                                                kw.get("centers"))
    if cfg.suite == "projection_besov":
        return V.verify_projection_besov_bound(kw["alpha"], kw["p"], kw["degrees"], rule=rule)
    raise ConfigError(f"unknown suite {cfg.suite!r}")


def write_report(report: V.VerificationReport, cfg: RunConfig) -> list[Path]:
    stem = cfg.suite
    written = []
    if "json" in cfg.formats:
        path = cfg.out_dir / f"{stem}.json"
        path.write_text(report.to_json(), encoding="utf-8")
        written.append(path)
    if "csv" in cfg.formats:
        path = cfg.out_dir / f"{stem}.csv"
        path.write_text(report.samples_csv(), encoding="utf-8")
        written.append(path)
    if "svg" in cfg.formats:
        from .plots import plot_report
        path = cfg.out_dir / f"{stem}.svg"
        plot_report(report, path)
        written.append(path)
    return written


def run(cfg: RunConfig) -> int:
    _prepare_out_dir(cfg.out_dir)
    report = execute(cfg)
    for path in write_report(report, cfg):
        print(path)
    print(f"{report.theorem_id.value}: {report.verdict.value} "
          f"(sup {report.empirical_sup:.6g}, {len(report.samples)} samples)")
    return EXIT_CODES[report.verdict]


# -- subcommands --------------------------------------------------------------

def _cmd_run(args) -> int:
    cfg = load_config(args.config, seed=args.seed, out_dir=args.out, formats=args.format)
    return run(cfg)


def _cmd_list(args) -> int:
    sys.stdout.write(list_suites())
    return EXIT_OK


def _cmd_eval_balayage(args) -> int:
    cfg = load_config(args.config, out_dir=args.out, need_suite=False)
    n = args.n or cfg.grid_n
    if n < 8:
        raise ConfigError("n must be at least 8")
    _prepare_out_dir(cfg.out_dir)
    grid = balayage(cfg.measure, n, cfg.rule, mode=args.mode)
    path = cfg.out_dir / "balayage.csv"
    grid.to_csv(path)
    for w in grid.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(path)
    return EXIT_OK


def _cmd_eval_bbalayage(args) -> int:
    cfg = load_config(args.config, out_dir=args.out, need_suite=False)
    if args.levels < 1 or args.angles < 1:
        raise ConfigError("levels and angles must be positive")
    _prepare_out_dir(cfg.out_dir)
    radii = np.concatenate([[0.0], 1.0 - 0.5 ** np.arange(1, args.levels + 1)])
    theta = 2.0 * np.pi * np.arange(args.angles) / args.angles
    z = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
    g = b_balayage(cfg.measure, z, cfg.rule)
    path = cfg.out_dir / "bbalayage.csv"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("re,im,value\n")
        for zi, gi in zip(z, g):
            fh.write(f"{float(zi.real)!r},{float(zi.imag)!r},{float(gi)!r}\n")
    print(path)
    return EXIT_OK


def _cmd_carleson(args) -> int:
    cfg = load_config(args.config, out_dir=args.out, need_suite=False)
    params = cfg.raw.get("parameters", {})
    s = args.s if args.s is not None else _number(params, "s", 1.0)
    depth = args.depth if args.depth is not None else _integer(params, "depth", 10)
    if not s > 0:
        raise ConfigError("s must be positive")
    if not 0 <= depth <= 24:
        raise ConfigError("depth must lie in [0, 24]")
    _prepare_out_dir(cfg.out_dir)
    rep = carleson_constant(cfg.measure, s, depth)
    arc = rep.argmax_region
    payload = {
        "s": rep.s,
        "empirical_constant": rep.empirical_constant,
        "argmax_arc": None if arc is None else {"center": arc.center, "length": arc.length},
        "samples": [{"level": k, "ratio": r} for k, r in rep.samples],
        "scale_lengths": rep.scale_lengths,
        "scale_masses": rep.scale_masses,
        "notes": rep.notes,
    }
    path = cfg.out_dir / "carleson.json"
    path.write_text(json.dumps(V._plain(payload), indent=2) + "\n", encoding="utf-8")
    print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balayage", description="Empirical boundedness checks for balayage operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one verification suite from a config")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", default=None, help="output directory (overrides the config)")
    p.add_argument("--seed", type=int, default=None, help="pair-sampling seed")
    p.add_argument("--format", action="append", choices=FORMATS,
                   help="output format; repeat for several (default json and csv)")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("list-suites", help="print the available suites")
    p.set_defaults(func=_cmd_list)

    p = sub.add_parser("eval-balayage", help="write S_mu on a boundary grid as CSV")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", default=None)
    p.add_argument("--n", type=int, default=None, help="grid size (default from config)")
    p.add_argument("--mode", choices=("cell", "point"), default="cell")
    p.set_defaults(func=_cmd_eval_balayage)

    p = sub.add_parser("eval-bbalayage", help="write G_mu on a polar grid as CSV")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", default=None)
    p.add_argument("--levels", type=int, default=10, help="radii 1 - 2^-k for k = 1..levels")
    p.add_argument("--angles", type=int, default=32)
    p.set_defaults(func=_cmd_eval_bbalayage)

    p = sub.add_parser("carleson", help="write the dyadic Carleson report as JSON")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.set_defaults(func=_cmd_carleson)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalFailure, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
