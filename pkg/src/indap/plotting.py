"""Figures for the report command.  Everything renders to files via Agg."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 120,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "legend.frameon": False,
    "savefig.bbox": "tight",
    # fixed metadata keeps repeated renders byte-stable
    "svg.hashsalt": "indap",
}


def write_csv(path: str | Path, header: Sequence[str], rows) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return path


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    fig.savefig(path, metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def plot_lemma1(curves: dict[int, tuple], eta: float, path: str | Path) -> Path:
    """curves maps k -> (ns, ratios) for Phi(n, k) log k / n."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        for k, (ns, ratios) in sorted(curves.items()):
            ax.plot(ns, ratios, lw=1.2, label=f"k = {k}")
        ax.axhline(eta, color="k", ls="--", lw=1, label=f"eta = {eta:g}")
        ax.set_xscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel(r"$\Phi(n,k)\,\log k\,/\,n$")
        ax.set_title("integers in [n] with no prime factor <= k")
        ax.legend(fontsize=8)
        return _save(fig, path)


def plot_budgets(profiles: dict[int, tuple], epsilon: float, path: str | Path) -> Path:
    """profiles maps k -> (ns, budgets); the epsilon curve is drawn per k."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        for k, (ns, budgets) in sorted(profiles.items()):
            (line,) = ax.plot(ns, budgets, lw=1.2, label=f"budget, k = {k}")
            scale = k * k * math.log(k)
            ax.plot(ns, [epsilon * n * n / scale for n in ns], lw=0.8, ls=":", color=line.get_color())
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("edges")
        ax.set_title(f"certified edge budget vs eps n^2/(k^2 log k), eps = {epsilon:.4f}")
        ax.legend(fontsize=8)
        return _save(fig, path)


def plot_probe(edges: Sequence[int], fractions: Sequence[float], budget: int, n: int, k: int, path: str | Path) -> Path:
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.plot(edges, fractions, marker="o", ms=3, lw=1)
        ax.axvline(budget, color="C3", ls="--", lw=1, label=f"certified budget = {budget}")
        ax.set_ylim(-0.05, 1.05)
        ax.set_xlabel("edges e")
        ax.set_ylabel("fraction with an independent k-AP")
        ax.set_title(f"uniform random graphs, n = {n}, k = {k}")
        ax.legend(fontsize=8)
        return _save(fig, path)
