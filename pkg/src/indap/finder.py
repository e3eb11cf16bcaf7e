"""Independent k-APs in sparse graphs on [n], with exact union-bound certificates.

The search follows the two regimes of the density argument: for large n
(relative to k^2 log k) progressions whose difference has no prime factor
<= k are scanned first, otherwise progressions with prime difference.  Each
pair of vertices lies in few progressions of either family, so a graph with
at most ``certified_edge_budget`` edges cannot touch all of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .apfamily import (
    DifferenceFamily,
    FamilyKind,
    PairHitCounter,
    Progression,
    _max_diff,
    aps_containing_pair,
    count_aps,
)
from .graphcore import (
    Coloring,
    FixedPointMode,
    IntGraph,
    PermutationMap,
    from_coloring,
    from_edge_list,
    from_permutation,
)
from .sieve import SieveTable, build_sieve

DEFAULT_ETA = 0.1

# Every n in [2, 64] * k^2 log k for these k; see derive_epsilon().
EPSILON_GRID_K = (3, 4, 5)
EPSILON_GRID_SPAN = (2, 64)

# derive_epsilon() on the grid above with eta = 0.1; a test re-derives it.
DEFAULT_EPSILON = 0.2499111690166612

N0_HORIZON = 20_000


@dataclass(frozen=True)
class FinderConfig:
    eta: float = DEFAULT_ETA
    epsilon: float = DEFAULT_EPSILON
    regime_threshold_factor: float | None = None

    def __post_init__(self) -> None:
        if not 0 < self.eta <= 1:
            raise ValueError(f"eta must lie in (0, 1], got {self.eta}")
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.regime_threshold_factor is None:
            object.__setattr__(self, "regime_threshold_factor", 2 / self.eta)

    def regime_threshold(self, k: int) -> float:
        """n at and above which the coprime family is scanned first."""
        return self.regime_threshold_factor * k * k * math.log(k) if k >= 2 else 0.0

    def to_dict(self) -> dict:
        return {
            "eta": self.eta,
            "epsilon": self.epsilon,
            "regime_threshold_factor": self.regime_threshold_factor,
        }


@dataclass(frozen=True)
class Witness:
    progression: Progression
    family_used: DifferenceFamily
    aps_scanned: int
    certified: bool

    def elements(self) -> list[int]:
        return self.progression.elements()

    def to_dict(self) -> dict:
        p = self.progression
        return {
            "start": p.start,
            "diff": p.diff,
            "length": p.length,
            "elements": p.elements(),
            "family": self.family_used.label(),
            "certified": self.certified,
            "aps_scanned": self.aps_scanned,
        }


# ------------------------------------------------------------------ budgets

_COUNTERS: dict[tuple, PairHitCounter] = {}


def _table_for(n: int, table: SieveTable | None) -> SieveTable:
    if table is not None and table.limit >= n:
        return table
    return build_sieve(max(n, 2))


def _counter(n: int, k: int, family: DifferenceFamily, table: SieveTable) -> PairHitCounter:
    # counters only grow, so one per (k, family) serves every n <= its current size
    key = (k, family)
    c = _COUNTERS.get(key)
    if c is None or c.n > n:
        c = PairHitCounter(k, family, table)
        if len(_COUNTERS) > 64:
            _COUNTERS.clear()
        _COUNTERS[key] = c
    c.table = table
    return c.grow_to(n)


def max_pair_hits(n: int, k: int, family: DifferenceFamily, table: SieveTable | None = None) -> int:
    """Largest number of family k-APs in [n] through a single pair."""
    if n < 2 or k < 2:
        return 0
    return _counter(n, k, family, _table_for(n, table)).h_max


def budget_from_counts(total: int, h_max: int) -> int:
    """Largest B with B * h_max < total (0 when total is 0)."""
    if total <= 0:
        return 0
    if h_max <= 0:
        raise ValueError("a non-empty family must have a pair hit")
    return (total - 1) // h_max


def certified_edge_budget(n: int, k: int, family: DifferenceFamily, table: SieveTable | None = None) -> int:
    """Edges a graph on [n] may have while still forcing an independent family k-AP."""
    if k < 2 or n < k:
        raise ValueError(f"budget needs n >= k >= 2, got n={n}, k={k}")
    table = _table_for(n, table)
    total = count_aps(n, k, family, table)
    if total == 0:
        return 0
    return budget_from_counts(total, max_pair_hits(n, k, family, table))


def regime_family(n: int, k: int, cfg: FinderConfig) -> DifferenceFamily:
    if n >= cfg.regime_threshold(k):
        return DifferenceFamily.coprime(k)
    return DifferenceFamily.prime()


def scan_order(n: int, k: int, cfg: FinderConfig) -> list[DifferenceFamily]:
    first = regime_family(n, k, cfg)
    if first.kind is FamilyKind.COPRIME_TO_K:
        second = DifferenceFamily.prime()
    else:
        second = DifferenceFamily.coprime(k)
    return [first, second, DifferenceFamily.all()]


# ------------------------------------------------------------------- search


def _scan(g: IntGraph, k: int, diffs: Iterable[int]) -> tuple[Progression | None, int]:
    n = g.n
    scanned = 0
    for d in diffs:
        pattern = sum(1 << (i * d) for i in range(k))
        for a in range(1, n - (k - 1) * d + 1):
            scanned += 1
            if g.is_independent_mask(pattern << a):
                return Progression(d, a, k), scanned
    return None, scanned


def _scan_singletons(g: IntGraph) -> tuple[Progression | None, int]:
    for a in range(1, g.n + 1):
        if not g.is_forbidden(a):
            return Progression(1, a, 1), a
    return None, g.n


def find_independent_ap(
    g: IntGraph,
    k: int,
    cfg: FinderConfig | None = None,
    table: SieveTable | None = None,
    families: list[DifferenceFamily] | None = None,
    certify: bool = True,
) -> Witness | None:
    """First independent k-AP of ``g`` in regime scan order, or None.

    ``families`` overrides the regime order (coprime/prime first, then the
    other, then all differences).  Differences already scanned by an earlier
    family are skipped, which does not change the first hit.
    """
    cfg = cfg or FinderConfig()
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = g.n
    if n < k:
        return None
    table = _table_for(n, table)
    order = families if families is not None else scan_order(n, k, cfg)
    if k == 1:
        found, scanned = _scan_singletons(g)
        if found is None:
            return None
        return Witness(found, order[0], scanned, certified=False)
    seen: set[int] = set()
    scanned = 0
    for family in order:
        diffs = [d for d in family.differences(_max_diff(n, k), table) if d not in seen]
        found, count = _scan(g, k, diffs)
        scanned += count
        if found is not None:
            certified = certify and g.edge_count <= certified_edge_budget(n, k, family, table)
            return Witness(found, family, scanned, certified)
        seen.update(diffs)
    return None


def find_rainbow_ap(c: Coloring, k: int, cfg: FinderConfig | None = None, table: SieveTable | None = None) -> Witness | None:
    w = find_independent_ap(from_coloring(c), k, cfg, table)
    if w is not None and not c.is_rainbow(w.progression):
        raise AssertionError(f"non-rainbow witness {w.elements()}")
    return w


def find_unmapped_ap(
    p: PermutationMap,
    k: int,
    mode: FixedPointMode = FixedPointMode.STRICT,
    cfg: FinderConfig | None = None,
    table: SieveTable | None = None,
) -> Witness | None:
    w = find_independent_ap(from_permutation(p, mode), k, cfg, table)
    if w is not None and FixedPointMode(mode) is FixedPointMode.STRICT:
        elems = set(w.elements())
        if any(p(i) in elems for i in elems):
            raise AssertionError(f"witness {sorted(elems)} meets its own image")
    return w


# ------------------------------------------------------------------- bounds


def _require_k3(k: int) -> None:
    if k < 3:
        raise ValueError(f"application bounds need k >= 3, got {k}")


def sr_upper_bound(m: int, k: int, cfg: FinderConfig | None = None) -> int:
    """ceil(m k^2 log k / epsilon): every coloring of that many integers with
    color multiplicities <= m has a rainbow k-AP."""
    cfg = cfg or FinderConfig()
    _require_k3(k)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return math.ceil(m * k * k * math.log(k) / cfg.epsilon)


def tk_upper_bound(k: int, cfg: FinderConfig | None = None) -> int:
    cfg = cfg or FinderConfig()
    _require_k3(k)
    return math.ceil(k * k * math.log(k) / cfg.epsilon)


def n0_upper_bound(k: int, cfg: FinderConfig | None = None, horizon: int = N0_HORIZON) -> int:
    """Least n with n <= certified_edge_budget(n, k, regime family).

    A permutation graph on [n] has at most n edges, so at that n every
    permutation leaves some k-AP free of its own images (fixed points aside).
    """
    cfg = cfg or FinderConfig()
    _require_k3(k)
    table = build_sieve(max(horizon, 2))
    counters: dict[DifferenceFamily, PairHitCounter] = {}
    for n in range(k, horizon + 1):
        family = regime_family(n, k, cfg)
        c = counters.get(family)
        if c is None:
            c = counters[family] = PairHitCounter(k, family, table)
        c.grow_to(n)
        if c.total and n <= budget_from_counts(c.total, c.h_max):
            return n
    raise RuntimeError(f"n0 bound not reached for k={k} within horizon {horizon}")


# -------------------------------------------------------------------- probes


def random_graph(n: int, e: int, rng: np.random.Generator) -> IntGraph:
    """Uniform graph on [n] with exactly e edges."""
    total = n * (n - 1) // 2
    if not 0 <= e <= total:
        raise ValueError(f"edge count {e} outside [0, {total}]")
    us, vs = np.triu_indices(n, 1)
    pick = np.sort(rng.choice(total, size=e, replace=False))
    return from_edge_list(n, zip((us[pick] + 1).tolist(), (vs[pick] + 1).tolist()))


def has_independent_ap(g: IntGraph, k: int) -> bool:
    """Exhaustive scan over every k-AP in [n]."""
    if g.n < k:
        return False
    if k == 1:
        return _scan_singletons(g)[0] is not None
    return _scan(g, k, range(1, _max_diff(g.n, k) + 1))[0] is not None


def empirical_probe(n: int, k: int, e: int, trials: int, seed: int) -> float:
    """Fraction of seeded uniform e-edge graphs on [n] holding an independent k-AP."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    hits = sum(has_independent_ap(random_graph(n, e, rng), k) for _ in range(trials))
    return hits / trials


def greedy_adversarial_graph(
    n: int, k: int, family: DifferenceFamily, edges: int, table: SieveTable | None = None
) -> IntGraph:
    """Place ``edges`` edges one at a time, each killing the most surviving family APs.

    Ties go to the lexicographically least pair.  Stops early once nothing
    survives (impossible within the certified budget).
    """
    table = _table_for(n, table)
    hits = PairHitCounter(k, family, table).grow_to(n).matrix().astype(np.int64)
    placed = []
    dead: set[Progression] = set()
    for _ in range(edges):
        flat = int(np.argmax(hits))
        u, v = divmod(flat, n + 1)
        if hits[u, v] <= 0:
            # nothing left to kill: spend remaining edges on unused pairs
            break
        placed.append((u, v))
        for p in aps_containing_pair(u, v, n, k, family, table):
            if p in dead:
                continue
            dead.add(p)
            el = p.elements()
            for i in range(k):
                for j in range(i + 1, k):
                    hits[el[i], el[j]] -= 1
        hits[u, v] = -1
    if len(placed) < edges:
        used = set(placed)
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                if len(placed) == edges:
                    break
                if (u, v) not in used:
                    placed.append((u, v))
    return from_edge_list(n, placed)


# ------------------------------------------------------------ epsilon pinning


def budget_profile(
    k: int, n_lo: int, n_hi: int, cfg: FinderConfig | None = None, table: SieveTable | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Regime-family budgets for every n in [n_lo, n_hi].

    Returns (ns, budgets).  Counters grow incrementally, so the whole range
    costs about as much as its largest n.
    """
    cfg = cfg or FinderConfig()
    table = _table_for(n_hi, table)
    counters: dict[DifferenceFamily, PairHitCounter] = {}
    ns = np.arange(n_lo, n_hi + 1)
    budgets = np.zeros(ns.size, dtype=np.int64)
    for idx, n in enumerate(ns.tolist()):
        family = regime_family(n, k, cfg)
        c = counters.get(family)
        if c is None:
            c = counters[family] = PairHitCounter(k, family, table)
        c.grow_to(n)
        budgets[idx] = budget_from_counts(c.total, c.h_max)
    return ns, budgets


def epsilon_grid(ks=EPSILON_GRID_K, span=EPSILON_GRID_SPAN) -> list[tuple[int, int, int]]:
    """(k, n_lo, n_hi) with n running over span[0..1] times k^2 log k."""
    lo, hi = span
    return [(k, math.ceil(lo * k * k * math.log(k)), math.ceil(hi * k * k * math.log(k))) for k in ks]


def derive_epsilon(grid=None, eta: float = DEFAULT_ETA) -> float:
    """Largest epsilon with epsilon n^2 / (k^2 log k) <= budget at every grid point.

    The budget is for the regime family at each (n, k), selected with ``eta``.
    """
    grid = grid if grid is not None else epsilon_grid()
    cfg = FinderConfig(eta=eta, epsilon=0.5)
    table = build_sieve(max(hi for _, _, hi in grid))
    best = math.inf
    for k, lo, hi in grid:
        ns, budgets = budget_profile(k, lo, hi, cfg, table)
        best = min(best, float(np.min(budgets * (k * k * math.log(k)) / ns.astype(float) ** 2)))
    return best
