"""k-term arithmetic progressions in [n] under restrictions on the difference."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .sieve import SieveTable, coprime_differences


@dataclass(frozen=True, order=True)
class Progression:
    # field order gives the (diff, start) enumeration order under sorting
    diff: int
    start: int
    length: int

    def __post_init__(self) -> None:
        if self.start < 1 or self.diff < 1 or self.length < 1:
            raise ValueError(f"invalid progression {self!r}")

    @property
    def last(self) -> int:
        return self.start + (self.length - 1) * self.diff

    def elements(self) -> list[int]:
        return list(range(self.start, self.last + 1, self.diff))

    def fits(self, n: int) -> bool:
        return self.last <= n

    def to_dict(self) -> dict:
        return {"start": self.start, "diff": self.diff, "length": self.length}


def elements(p: Progression) -> list[int]:
    return p.elements()


class FamilyKind(str, enum.Enum):
    ALL = "all"
    COPRIME_TO_K = "coprime"
    PRIME = "prime"


@dataclass(frozen=True)
class DifferenceFamily:
    kind: FamilyKind
    k: int = 0  # only meaningful for COPRIME_TO_K

    @classmethod
    def all(cls) -> "DifferenceFamily":
        return cls(FamilyKind.ALL)

    @classmethod
    def coprime(cls, k: int) -> "DifferenceFamily":
        return cls(FamilyKind.COPRIME_TO_K, k)

    @classmethod
    def prime(cls) -> "DifferenceFamily":
        return cls(FamilyKind.PRIME)

    @property
    def needs_table(self) -> bool:
        return self.kind is not FamilyKind.ALL

    def admits(self, d: int, table: SieveTable | None = None) -> bool:
        if d < 1:
            return False
        if self.kind is FamilyKind.ALL:
            return True
        if table is None or d > table.limit:
            raise ValueError(f"difference {d} needs a sieve table covering it")
        if self.kind is FamilyKind.PRIME:
            return table.is_prime(d)
        return d == 1 or int(table.spf[d]) > self.k

    def differences(self, dmax: int, table: SieveTable | None = None) -> list[int]:
        """Admitted differences in [1, dmax], ascending."""
        if dmax < 1:
            return []
        if self.kind is FamilyKind.ALL:
            return list(range(1, dmax + 1))
        if table is None or dmax > table.limit:
            raise ValueError(f"difference bound {dmax} needs a sieve table covering it")
        if self.kind is FamilyKind.PRIME:
            hi = int(np.searchsorted(table.primes, dmax, side="right"))
            return table.primes[:hi].tolist()
        return coprime_differences(table, dmax, self.k)

    def label(self) -> str:
        if self.kind is FamilyKind.COPRIME_TO_K:
            return f"coprime_to_{self.k}"
        return self.kind.value

    def __str__(self) -> str:
        return self.label()


def _max_diff(n: int, k: int) -> int:
    return (n - 1) // (k - 1) if k >= 2 else 0


def enumerate_aps(
    n: int, k: int, family: DifferenceFamily, table: SieveTable | None = None
) -> Iterator[Progression]:
    """Yield every k-AP in [n] with an admitted difference, ordered by (diff, start).

    For k = 1 the n singletons are yielded once each, with diff 1.
    """
    if n < 1 or k < 1 or n < k:
        return
    if k == 1:
        for a in range(1, n + 1):
            yield Progression(1, a, 1)
        return
    for d in family.differences(_max_diff(n, k), table):
        for a in range(1, n - (k - 1) * d + 1):
            yield Progression(d, a, k)


def count_aps(n: int, k: int, family: DifferenceFamily, table: SieveTable | None = None) -> int:
    if n < 1 or k < 1 or n < k:
        return 0
    if k == 1:
        return n
    ds = np.asarray(family.differences(_max_diff(n, k), table), dtype=np.int64)
    return int(np.sum(n - (k - 1) * ds))


def restricted_family_size(n: int, k: int, table: SieveTable) -> int:
    """Size of the sub-family with start in [n/2] and coprime difference in [n/2k]."""
    if n < 2 * k:
        raise ValueError(f"restricted family needs n >= 2k, got n={n}, k={k}")
    dmax = n // (2 * k)
    return (n // 2) * len(coprime_differences(table, dmax, k))


def aps_containing_pair(
    u: int, v: int, n: int, k: int, family: DifferenceFamily, table: SieveTable | None = None
) -> list[Progression]:
    """All k-APs in [n] from ``family`` containing both u and v, in (diff, start) order."""
    if u == v:
        raise ValueError("pair endpoints must differ")
    if u > v:
        u, v = v, u
    if not 1 <= u < v <= n:
        raise ValueError(f"pair ({u}, {v}) outside [1, {n}]")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    gap = v - u
    out = []
    # the pair sits j = gap/d steps apart inside the progression
    for j in range(k - 1, 0, -1):
        if gap % j:
            continue
        d = gap // j
        if not family.admits(d, table):
            continue
        # u is term i of the progression, i in [0, k-1-j]
        for i in range(k - 1 - j, -1, -1):
            a = u - i * d
            if a >= 1 and a + (k - 1) * d <= n:
                out.append(Progression(d, a, k))
    return out


def pair_hit_count(u: int, v: int, n: int, k: int, family, table=None) -> int:
    return len(aps_containing_pair(u, v, n, k, family, table))


class PairHitCounter:
    """Running per-pair incidence counts for the k-APs of one family in [n].

    ``grow_to(n)`` adds every progression whose last term lies in the new
    range, so ``h_max`` is exact for the current n and only ever increases.
    Each pair lies in at most k(k-1)/2 progressions, which bounds the counts.
    """

    def __init__(self, k: int, family: DifferenceFamily, table: SieveTable | None = None):
        if k < 2:
            raise ValueError(f"k must be >= 2, got {k}")
        self.k = k
        self.family = family
        self.table = table
        self.n = 0
        self.total = 0
        self.h_max = 0
        self._cap = 0
        self._hits = np.zeros((0, 0), dtype=np.int32)
        self._pos = [(i, j) for i in range(k) for j in range(i + 1, k)]

    def _reserve(self, n: int) -> None:
        if n + 1 <= self._cap:
            return
        cap = max(n + 1, 2 * self._cap, 64)
        grown = np.zeros((cap, cap), dtype=self._hits.dtype)
        grown[: self._cap, : self._cap] = self._hits
        self._hits, self._cap = grown, cap

    def grow_to(self, n: int) -> "PairHitCounter":
        if n <= self.n:
            return self
        self._reserve(n)
        k = self.k
        ds = np.asarray(self.family.differences(_max_diff(n, k), self.table), dtype=np.int64)
        if ds.size:
            # starts a with last term in (self.n, n]
            lo = np.maximum(1, self.n + 1 - (k - 1) * ds)
            hi = n - (k - 1) * ds
            sizes = np.maximum(hi - lo + 1, 0)
            keep = sizes > 0
            ds, lo, sizes = ds[keep], lo[keep], sizes[keep]
            if sizes.size:
                d_rep = np.repeat(ds, sizes)
                offsets = np.arange(int(sizes.sum())) - np.repeat(np.cumsum(sizes) - sizes, sizes)
                starts = np.repeat(lo, sizes) + offsets
                self.total += int(starts.size)
                for i, j in self._pos:
                    us = starts + i * d_rep
                    vs = starts + j * d_rep
                    np.add.at(self._hits, (us, vs), 1)
                    self.h_max = max(self.h_max, int(self._hits[us, vs].max()))
        self.n = n
        return self

    def hits(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        if v > self.n:
            raise ValueError(f"pair ({u}, {v}) outside [1, {self.n}]")
        return int(self._hits[u, v])

    def matrix(self) -> np.ndarray:
        """Upper-triangular hit counts indexed by 1-based vertices."""
        return self._hits[: self.n + 1, : self.n + 1].copy()
