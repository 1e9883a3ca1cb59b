"""Static SVG plots of verification reports."""

from __future__ import annotations

import re
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .verify import TheoremId, VerificationReport  # noqa: E402

_SCALE_LABEL = re.compile(r"k=(\d+)")


def _grouped_by_scale(report: VerificationReport):
    groups: dict[str, dict[int, float]] = defaultdict(dict)
    for label, ratio in report.samples:
        m = _SCALE_LABEL.search(label)
        if m is None:
            continue
        prefix = label.split(":")[0] if label.count(":") and not label.startswith("k=") else "ratio"
        k = int(m.group(1))
        groups[prefix][k] = max(groups[prefix].get(k, 0.0), ratio)
    return groups


def plot_report(report: VerificationReport, path) -> None:
    """Ratio-vs-scale curves, or log-log mass fits for the weight-shift suite."""
    plt.rcParams["svg.hashsalt"] = "balayage"
    fig, ax = plt.subplots(figsize=(6, 4))
    tid = report.theorem_id
    if tid is TheoremId.WEIGHT_SHIFT and "base_slope" in report.extras:
        lengths = np.asarray(report.extras["lengths"])
        for key, name in (("base_masses", "base"), ("transform_masses", "weighted")):
            masses = np.asarray(report.extras[key])
            ok = masses > 0
            ax.loglog(lengths[ok], masses[ok], "o", label=name)
            slope, icpt = np.polyfit(np.log(lengths[ok]), np.log(masses[ok]), 1)
            ax.loglog(lengths[ok], np.exp(icpt) * lengths[ok] ** slope, "-",
                      label=f"{name} slope {slope:.3f}")
        ax.set_xlabel("|I|")
        ax.set_ylabel("max box mass")
    elif tid in (TheoremId.BBAL_LIP, TheoremId.BESOV_LIP, TheoremId.EMBEDDING):
        tiers: dict[str, list[float]] = defaultdict(list)
        for label, ratio in report.samples:
            tiers[label.split(":")[0]].append(ratio)
        start = 0
        for tier, values in tiers.items():
            idx = np.arange(start, start + len(values))
            ax.plot(idx, values, "o", ms=3, label=tier)
            start += len(values)
        ax.set_xlabel("sample")
        ax.set_ylabel("ratio")
    else:
        for prefix, per_scale in _grouped_by_scale(report).items():
            ks = sorted(per_scale)
            ax.plot(ks, [per_scale[k] for k in ks], "o-", label=prefix)
        ax.set_xlabel("dyadic level k")
        ax.set_ylabel("max ratio at level")
    ax.set_title(f"{tid.value}: {report.verdict.value}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
