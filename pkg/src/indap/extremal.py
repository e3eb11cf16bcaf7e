"""Exhaustive oracles for tiny instances: bad colorings, bad permutations, sr, T_k, n0.

Every search is budgeted.  A verdict is only reported as COMPLETE when the
whole (canonicalized) search space was covered; otherwise the outcome is
EXHAUSTED and no absence claim is made.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Iterator

from .apfamily import Progression
from .graphcore import Coloring, FixedPointMode, PermutationMap


class Outcome(str, enum.Enum):
    COMPLETE = "COMPLETE"
    EXHAUSTED = "EXHAUSTED"


class BudgetExhausted(Exception):
    pass


@dataclass
class SearchBudget:
    node_limit: int = 10_000_000
    time_limit: float = 60.0
    nodes: int = field(default=0, init=False)
    _deadline: float = field(default=0.0, init=False, repr=False)

    def start(self) -> "SearchBudget":
        self.nodes = 0
        self._deadline = time.monotonic() + self.time_limit
        return self

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise BudgetExhausted
        if not self.nodes & 1023 and time.monotonic() > self._deadline:
            raise BudgetExhausted

    def fresh(self) -> "SearchBudget":
        return SearchBudget(self.node_limit, self.time_limit)


@dataclass
class SearchResult:
    witness: object | None
    outcome: Outcome
    nodes: int

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        if isinstance(self.witness, Coloring):
            wit = list(self.witness.color_of)
        elif isinstance(self.witness, PermutationMap):
            wit = list(self.witness.image)
        else:
            wit = None
        if self.witness is not None:
            verdict = "witness"
        elif self.outcome is Outcome.COMPLETE:
            verdict = "none"
        else:
            verdict = "unknown"
        return {"verdict": verdict, "witness": wit, "outcome": self.outcome.value, "nodes": self.nodes}


# ---------------------------------------------------------------- checkers


def all_aps(n: int, k: int) -> list[Progression]:
    if k == 1:
        return [Progression(1, a, 1) for a in range(1, n + 1)]
    return [Progression(d, a, k) for d in range(1, (n - 1) // (k - 1) + 1) for a in range(1, n - (k - 1) * d + 1)]


def rainbow_aps(c: Coloring, k: int) -> list[Progression]:
    return [p for p in all_aps(c.n, k) if c.is_rainbow(p)]


def is_free(p: PermutationMap, ap: Progression, mode: FixedPointMode) -> bool:
    """True when no i in the progression maps into it (fixed points per mode)."""
    elems = set(ap.elements())
    for i in elems:
        j = p(i)
        if j in elems and (j != i or FixedPointMode(mode) is FixedPointMode.STRICT):
            return False
    return True


def free_aps(p: PermutationMap, k: int, mode: FixedPointMode) -> list[Progression]:
    return [ap for ap in all_aps(p.n, k) if is_free(p, ap, mode)]


# ------------------------------------------------------- canonical colorings


def _rainbow_ending_at(colors: list[int], i: int, k: int) -> bool:
    # colors is 1-indexed; only progressions whose last term is i
    if k == 1:
        return True
    ci = colors[i]
    for d in range(1, (i - 1) // (k - 1) + 1):
        seen = {ci}
        for x in range(i - d, i - (k - 1) * d - 1, -d):
            c = colors[x]
            if c in seen:
                break
            seen.add(c)
        else:
            return True
    return False


def _growth_search(
    n: int,
    max_block: int | None,
    max_blocks: int | None,
    avoid_rainbow_k: int | None,
    budget: SearchBudget | None,
) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n (colors 0, 1, ... by first use).

    Blocks are capped at ``max_block`` elements and ``max_blocks`` in number.
    With ``avoid_rainbow_k`` a branch dies as soon as its colored prefix
    contains a rainbow progression of that length.
    """
    colors = [0] * (n + 1)
    sizes: list[int] = []
    cap = max_block if max_block is not None else n
    blocks_cap = max_blocks if max_blocks is not None else n

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if budget is not None:
            budget.tick()
        if i > n:
            yield tuple(colors[1:])
            return
        used = len(sizes)
        for c in range(used + 1):
            if c == used:
                if used >= blocks_cap:
                    continue
                sizes.append(0)
            if sizes[c] >= cap:
                continue
            sizes[c] += 1
            colors[i] = c
            if avoid_rainbow_k is None or not _rainbow_ending_at(colors, i, avoid_rainbow_k):
                yield from rec(i + 1)
            sizes[c] -= 1
            if c == used:
                sizes.pop()

    return rec(1)


def enumerate_partitions(n: int, max_block: int | None = None, num_blocks: int | None = None) -> Iterator[tuple[int, ...]]:
    """Canonical set partitions of [n] as restricted growth strings.

    ``num_blocks`` requires exactly that many blocks.
    """
    for rgs in _growth_search(n, max_block, num_blocks, None, None):
        if num_blocks is None or max(rgs) + 1 == num_blocks:
            yield rgs


def _coloring_from_rgs(rgs: tuple[int, ...]) -> Coloring:
    return Coloring(tuple(c + 1 for c in rgs))


def _first(n, max_block, max_blocks, k, budget, exact_blocks=None) -> SearchResult:
    budget = (budget or SearchBudget()).start()
    try:
        for rgs in _growth_search(n, max_block, max_blocks, k, budget):
            if exact_blocks is not None and max(rgs) + 1 != exact_blocks:
                continue
            return SearchResult(_coloring_from_rgs(rgs), Outcome.COMPLETE, budget.nodes)
    except BudgetExhausted:
        return SearchResult(None, Outcome.EXHAUSTED, budget.nodes)
    return SearchResult(None, Outcome.COMPLETE, budget.nodes)


def exists_coloring_without_rainbow(n: int, m: int, k: int, budget: SearchBudget | None = None) -> SearchResult:
    """A coloring of [n] with multiplicities <= m and no rainbow k-AP, if any."""
    if min(n, m, k) < 1:
        raise ValueError("n, m, k must be >= 1")
    return _first(n, m, None, k, budget)


@dataclass
class ExactResult:
    value: int | None
    outcome: Outcome
    per_n: list[dict]

    def to_dict(self) -> dict:
        return {"value": self.value, "outcome": self.outcome.value, "per_n": self.per_n}


def sr_exact(m: int, k: int, n_max: int, budget: SearchBudget | None = None) -> ExactResult:
    """Least n <= n_max at which every coloring with multiplicities <= m has a rainbow k-AP.

    Every n up to n_max is searched; a bad coloring above the first
    guaranteed n would contradict restriction to a prefix and raises.
    """
    if min(m, k) < 1:
        raise ValueError("m, k must be >= 1")
    budget = budget or SearchBudget()
    first = None
    per_n = []
    for n in range(1, n_max + 1):
        r = exists_coloring_without_rainbow(n, m, k, budget.fresh())
        per_n.append({"n": n, **r.to_dict()})
        if r.outcome is Outcome.EXHAUSTED:
            return ExactResult(None, Outcome.EXHAUSTED, per_n)
        if r.found:
            if rainbow_aps(r.witness, k):
                raise AssertionError(f"bad coloring of [{n}] fails re-verification")
            if first is not None:
                raise AssertionError(f"bad coloring at n={n} above guaranteed n={first}")
        elif first is None:
            first = n
    if first is None:
        return ExactResult(None, Outcome.EXHAUSTED, per_n)
    return ExactResult(first, Outcome.COMPLETE, per_n)


# ---------------------------------------------------------------- permutations


def exists_permutation_without_free_ap(
    n: int, k: int, mode: FixedPointMode = FixedPointMode.STRICT, budget: SearchBudget | None = None
) -> SearchResult:
    """A permutation of [n] under which every k-AP meets its own image.

    Images are assigned to 1, 2, ... in increasing order.  A branch is cut
    when some progression can no longer be hit: it is unhit and none of its
    unassigned members has an unused value inside it left to map to.
    """
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    strict = FixedPointMode(mode) is FixedPointMode.STRICT
    budget = (budget or SearchBudget()).start()
    aps = [frozenset(p.elements()) for p in all_aps(n, k)]
    by_elem: dict[int, list[int]] = {i: [] for i in range(1, n + 1)}
    for idx, ap in enumerate(aps):
        for x in ap:
            by_elem[x].append(idx)
    hit = [0] * len(aps)
    image = [0] * (n + 1)
    used = [False] * (n + 2)

    def doomed() -> bool:
        for idx, ap in enumerate(aps):
            if hit[idx]:
                continue
            for i in ap:
                if image[i]:
                    continue
                if any(not used[v] and (strict or v != i) for v in ap):
                    break
            else:
                return True
        return False

    def complete() -> tuple[int, ...]:
        rest = [v for v in range(1, n + 1) if not used[v]]
        out = image[1:]
        it = iter(rest)
        return tuple(v if v else next(it) for v in out)

    def rec(i: int) -> tuple[int, ...] | None:
        budget.tick()
        if all(hit):
            return complete()
        if i > n or doomed():
            return None
        for v in range(1, n + 1):
            if used[v]:
                continue
            image[i] = v
            used[v] = True
            touched = [idx for idx in by_elem[i] if v in aps[idx] and (strict or v != i)]
            for idx in touched:
                hit[idx] += 1
            found = rec(i + 1)
            for idx in touched:
                hit[idx] -= 1
            used[v] = False
            image[i] = 0
            if found is not None:
                return found
        return None

    try:
        found = rec(1)
    except BudgetExhausted:
        return SearchResult(None, Outcome.EXHAUSTED, budget.nodes)
    if found is None:
        return SearchResult(None, Outcome.COMPLETE, budget.nodes)
    perm = PermutationMap(found)
    if free_aps(perm, k, mode):
        raise AssertionError(f"bad permutation {found} fails re-verification")
    return SearchResult(perm, Outcome.COMPLETE, budget.nodes)


def n0_probe(
    k: int,
    mode: FixedPointMode,
    n_max: int,
    budget: SearchBudget | None = None,
    n0_bound: int | None = None,
) -> dict:
    """Per-n search for permutations of [n] with no free k-AP.

    ``n0_bound`` is an upper bound for n0 known from elsewhere (the
    certificate bound); an exact n0 is only claimed when n_max reaches it and
    every n above the largest bad one was searched to completion.
    """
    if k < 3:
        raise ValueError(f"n0 probe needs k >= 3, got {k}")
    mode = FixedPointMode(mode)
    budget = budget or SearchBudget()
    per_n = []
    largest_bad = None
    for n in range(1, n_max + 1):
        r = exists_permutation_without_free_ap(n, k, mode, budget.fresh())
        per_n.append({"n": n, **r.to_dict()})
        if r.found:
            largest_bad = n
    above = [row for row in per_n if largest_bad is None or row["n"] > largest_bad]
    settled = all(row["outcome"] == Outcome.COMPLETE.value and row["verdict"] == "none" for row in above)
    exact = None
    if mode is FixedPointMode.STRICT:
        note = "strict mode: the identity has no free progression for any n, so n0 does not exist"
    elif settled and n0_bound is not None and n_max >= n0_bound:
        exact = (largest_bad or 0) + 1
        note = f"n0 = {exact}: every n in ({largest_bad or 0}, {n_max}] searched completely and n_max reaches the certified bound"
    else:
        note = (
            f"horizon-limited search: n0 >= {(largest_bad or 0) + 1}; "
            "no exact value is claimed"
        )
    return {
        "k": k,
        "mode": mode.value,
        "n_max": n_max,
        "n0_bound": n0_bound,
        "largest_bad": largest_bad,
        "n0_lower_bound": (largest_bad or 0) + 1,
        "n0_exact": exact,
        "note": note,
        "per_n": per_n,
    }


def exists_equinumerous_without_rainbow(t: int, m: int, k: int, budget: SearchBudget | None = None) -> SearchResult:
    """A coloring of [tm] with t colors used exactly m times each and no rainbow k-AP."""
    if min(t, m, k) < 1:
        raise ValueError("t, m, k must be >= 1")
    return _first(t * m, m, t, k, budget, exact_blocks=t)


def tk_probe(t: int, k: int, m_max: int, budget: SearchBudget | None = None) -> dict:
    """Whether each equinumerous t-coloring of [tm], m <= m_max, forces a rainbow k-AP."""
    if min(t, k, m_max) < 1:
        raise ValueError("t, k, m_max must be >= 1")
    budget = budget or SearchBudget()
    per_m = []
    for m in range(1, m_max + 1):
        r = exists_equinumerous_without_rainbow(t, m, k, budget.fresh())
        if r.found and rainbow_aps(r.witness, k):
            raise AssertionError(f"equinumerous witness for m={m} fails re-verification")
        row = {"m": m, "n": t * m, **r.to_dict()}
        row["forced"] = None if r.outcome is Outcome.EXHAUSTED else not r.found
        per_m.append(row)
    return {
        "t": t,
        "k": k,
        "m_max": m_max,
        "per_m": per_m,
        "note": "verdicts cover m <= m_max only; whether t works for every m is not decided",
    }
