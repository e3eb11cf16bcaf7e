"""Report path: CSV tables plus matching figures written into one directory."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import plotting
from .finder import (
    FinderConfig,
    budget_profile,
    certified_edge_budget,
    empirical_probe,
    regime_family,
)
from .sieve import SieveTable, build_sieve, phi_count


def lemma1_curves(table: SieveTable, ks, n_max: int) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    curves = {}
    for k in ks:
        lo = math.ceil(k * math.log(k))
        ns = np.unique(np.geomspace(lo, n_max, 200).astype(int))
        ratios = np.array([phi_count(table, int(n), k) * math.log(k) / n for n in ns])
        curves[k] = (ns, ratios)
    return curves


def build_report(
    outdir: str | Path,
    ks=(3, 4, 5),
    probe_n: int = 60,
    probe_k: int = 3,
    trials: int = 20,
    seed: int = 0,
    cfg: FinderConfig | None = None,
) -> dict:
    cfg = cfg or FinderConfig()
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    files: list[str] = []

    lemma_n = 20_000
    table = build_sieve(lemma_n)
    curves = lemma1_curves(table, ks, lemma_n)
    rows = [(k, int(n), f"{r:.6f}") for k, (ns, rs) in curves.items() for n, r in zip(ns, rs)]
    files.append(plotting.write_csv(out / "lemma1.csv", ("k", "n", "ratio"), rows).name)
    files.append(plotting.plot_lemma1(curves, cfg.eta, out / "lemma1.png").name)
    lemma_min = min(float(rs.min()) for _, rs in curves.values())

    profiles = {}
    for k in ks:
        scale = k * k * math.log(k)
        profiles[k] = budget_profile(k, math.ceil(2 * scale), math.ceil(16 * scale), cfg)
    rows = [
        (k, int(n), regime_family(int(n), k, cfg).label(), int(b))
        for k, (ns, bs) in profiles.items()
        for n, b in zip(ns, bs)
    ]
    files.append(plotting.write_csv(out / "budget.csv", ("k", "n", "family", "budget"), rows).name)
    files.append(plotting.plot_budgets(profiles, cfg.epsilon, out / "budget.png").name)

    budget = certified_edge_budget(probe_n, probe_k, regime_family(probe_n, probe_k, cfg))
    top = probe_n * (probe_n - 1) // 2
    edges = sorted({int(e) for e in np.linspace(0, top, 25)} | {budget})
    fractions = [empirical_probe(probe_n, probe_k, e, trials, seed) for e in edges]
    files.append(
        plotting.write_csv(out / "probe.csv", ("e", "fraction"), [(e, f"{f:.4f}") for e, f in zip(edges, fractions)]).name
    )
    files.append(plotting.plot_probe(edges, fractions, budget, probe_n, probe_k, out / "probe.png").name)

    return {
        "outdir": str(out),
        "files": files,
        "lemma1_min_ratio": round(lemma_min, 6),
        "probe_budget": budget,
        "probe_fraction_at_budget": fractions[edges.index(budget)],
    }
