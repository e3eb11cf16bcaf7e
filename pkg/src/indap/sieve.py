"""Exact sieve counting: smallest prime factors, pi(x), and the rough-number count.

``phi_count(T, x, y)`` is the number of integers in [1, x] all of whose prime
factors exceed y (1 always counts).  Everything here is exact; there is no
asymptotic evaluation anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

MEMORY_GUARD = 10**8


@dataclass(frozen=True)
class SieveTable:
    """Smallest-prime-factor and prime tables for [0, limit].

    ``spf[m]`` is the least prime dividing m for m >= 2; entries 0 and 1 are 0.
    """

    limit: int
    spf: np.ndarray
    primes: np.ndarray

    def __post_init__(self) -> None:
        self.spf.setflags(write=False)
        self.primes.setflags(write=False)

    def is_prime(self, m: int) -> bool:
        return 2 <= m <= self.limit and int(self.spf[m]) == m

    def _check(self, x: int, lo: int = 0) -> None:
        if not lo <= x <= self.limit:
            raise ValueError(f"argument {x} outside sieve range [{lo}, {self.limit}]")


def build_sieve(limit: int, memory_guard: int = MEMORY_GUARD) -> SieveTable:
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    if limit > memory_guard:
        raise ValueError(f"sieve limit {limit} exceeds memory guard {memory_guard}")
    dtype = np.int32 if limit < 2**31 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p]:
            continue
        block = spf[p * p :: p]
        block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    primes = np.flatnonzero(spf[2:] == np.arange(2, limit + 1)) + 2
    return SieveTable(limit=limit, spf=spf, primes=primes.astype(np.int64))


def prime_count(table: SieveTable, x: int) -> int:
    """pi(x), the number of primes <= x."""
    table._check(x)
    return int(np.searchsorted(table.primes, x, side="right"))


def _rough_mask(table: SieveTable, x: int, y: int) -> np.ndarray:
    # index i of the mask corresponds to the integer i + 1
    mask = table.spf[1 : x + 1] > y
    mask[0] = True
    return mask


def phi_count(table: SieveTable, x: int, y: int) -> int:
    """Count m in [1, x] whose prime factors all exceed y."""
    table._check(x, lo=1)
    if y < 1:
        raise ValueError(f"y must be >= 1, got {y}")
    return int(np.count_nonzero(_rough_mask(table, x, y)))


def coprime_differences(table: SieveTable, n: int, k: int) -> list[int]:
    """Integers d in [1, n] with gcd(d, j) = 1 for every 2 <= j <= k."""
    table._check(n, lo=1)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return (np.flatnonzero(_rough_mask(table, n, k)) + 1).tolist()


class Lemma1Ratio(NamedTuple):
    """Phi(n, k) * log(k) / n, kept as an exact count over a float scale."""

    count: int
    scale: float  # n / log(k)

    @property
    def value(self) -> float:
        return self.count / self.scale

    def __float__(self) -> float:
        return self.value


def lemma1_ratio(table: SieveTable, n: int, k: int) -> Lemma1Ratio:
    if k < 2:
        raise ValueError(f"lemma1_ratio needs k >= 2, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Lemma1Ratio(phi_count(table, n, k), n / math.log(k))


def lemma1_min_ratio(table: SieveTable, ks, n_of_k=None) -> tuple[float, int, int]:
    """Minimum of ``lemma1_ratio`` over ``ks`` with n = n_of_k(k).

    The default n is ceil(k log k), the smallest n the sieve estimate is
    stated for.  Returns (ratio, k, n) at the minimum; ties keep the first k.
    """
    if n_of_k is None:
        n_of_k = lambda k: math.ceil(k * math.log(k))  # noqa: E731
    best = None
    for k in ks:
        n = n_of_k(k)
        r = lemma1_ratio(table, n, k).value
        if best is None or r < best[0]:
            best = (r, k, n)
    if best is None:
        raise ValueError("empty k grid")
    return best


def empirical_eta(table: SieveTable, ks, n_max: int) -> float:
    """Largest eta with Phi(n, k) >= eta n / log k on the whole grid.

    The grid is every k in ``ks`` and every n in [ceil(k log k), n_max].
    """
    table._check(n_max, lo=1)
    eta = math.inf
    for k in ks:
        lo = max(1, math.ceil(k * math.log(k)))
        if lo > n_max:
            continue
        counts = np.cumsum(_rough_mask(table, n_max, k))[lo - 1 :]
        ns = np.arange(lo, n_max + 1)
        eta = min(eta, float(np.min(counts * math.log(k) / ns)))
    return eta
