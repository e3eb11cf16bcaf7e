"""Graphs on [n] with int bitsets, and the coloring / permutation reductions.

Vertices are 1-indexed.  Bit i of ``adjacency[v]`` is set when v ~ i; bit 0
is never used.  Self-relations never become edges: they mark the vertex as
forbidden, which excludes it from every independent set.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .apfamily import Progression


class InputError(ValueError):
    """Malformed input file or out-of-range data."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def make_bitset(indexes: Iterable[int]) -> int:
    value = 0
    for idx in indexes:
        value |= 1 << idx
    return value


def iter_bits(value: int) -> Iterable[int]:
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


@dataclass(frozen=True)
class IntGraph:
    n: int
    adjacency: tuple[int, ...]  # length n + 1, entry 0 unused
    edge_count: int
    forbidden: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"graph needs n >= 1, got {self.n}")
        if len(self.adjacency) != self.n + 1:
            raise ValueError("adjacency must have n + 1 entries")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def is_forbidden(self, v: int) -> bool:
        return bool(self.forbidden >> v & 1)

    def forbidden_vertices(self) -> list[int]:
        return list(iter_bits(self.forbidden))

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adjacency[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(1, self.n + 1) for v in iter_bits(self.adjacency[u]) if u < v]

    def is_independent_mask(self, mask: int) -> bool:
        if mask & self.forbidden:
            return False
        adj = self.adjacency
        for v in iter_bits(mask):
            if adj[v] & mask:
                return False
        return True


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> IntGraph:
    if n < 1:
        raise ValueError(f"graph needs n >= 1, got {n}")
    adj = [0] * (n + 1)
    forbidden = 0
    count = 0
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge ({u}, {v}) outside [1, {n}]")
        if u == v:
            forbidden |= 1 << u
            continue
        if adj[u] >> v & 1:
            continue
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        count += 1
    return IntGraph(n, tuple(adj), count, forbidden)


def empty_graph(n: int) -> IntGraph:
    return IntGraph(n, (0,) * (n + 1), 0, 0)


def complete_graph(n: int) -> IntGraph:
    full = make_bitset(range(1, n + 1))
    adj = (0,) + tuple(full & ~(1 << v) for v in range(1, n + 1))
    return IntGraph(n, adj, n * (n - 1) // 2, 0)


@dataclass(frozen=True)
class Coloring:
    """A coloring of [n]; ``color_of[i - 1]`` is the color of i."""

    color_of: tuple
    multiplicity: Counter = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.color_of) < 1:
            raise ValueError("a coloring needs n >= 1")
        object.__setattr__(self, "color_of", tuple(self.color_of))
        object.__setattr__(self, "multiplicity", Counter(self.color_of))

    @property
    def n(self) -> int:
        return len(self.color_of)

    @property
    def max_multiplicity(self) -> int:
        return max(self.multiplicity.values())

    def color(self, i: int) -> object:
        return self.color_of[i - 1]

    def classes(self) -> list[list[int]]:
        """Color classes as sorted vertex lists, ordered by least element."""
        groups: dict = {}
        for i, c in enumerate(self.color_of, start=1):
            groups.setdefault(c, []).append(i)
        return list(groups.values())

    def is_rainbow(self, p: Progression) -> bool:
        colors = [self.color(x) for x in p.elements()]
        return len(set(colors)) == len(colors)


@dataclass(frozen=True)
class PermutationMap:
    """A bijection of [n]; ``image[i - 1]`` is pi(i)."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(x) for x in self.image)
        n = len(image)
        if n < 1:
            raise ValueError("a permutation needs n >= 1")
        if sorted(image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [1, {n}]")
        object.__setattr__(self, "image", image)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    @classmethod
    def identity(cls, n: int) -> "PermutationMap":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def reversal(cls, n: int) -> "PermutationMap":
        return cls(tuple(range(n, 0, -1)))


class FixedPointMode(str, enum.Enum):
    STRICT = "strict"
    WEAK = "weak"


def from_coloring(c: Coloring) -> IntGraph:
    """Disjoint union of cliques, one per color class."""
    n = c.n
    adj = [0] * (n + 1)
    count = 0
    for block in c.classes():
        mask = make_bitset(block)
        for v in block:
            adj[v] = mask & ~(1 << v)
        count += len(block) * (len(block) - 1) // 2
    return IntGraph(n, tuple(adj), count, 0)


def from_permutation(p: PermutationMap, mode: FixedPointMode = FixedPointMode.STRICT) -> IntGraph:
    mode = FixedPointMode(mode)
    edges = []
    for i in range(1, p.n + 1):
        j = p(i)
        if i != j:
            edges.append((i, j))
        elif mode is FixedPointMode.STRICT:
            edges.append((i, i))
    return from_edge_list(p.n, edges)


def is_independent(g: IntGraph, p: Progression) -> bool:
    if p.last > g.n:
        raise ValueError(f"progression {p.elements()} leaves [1, {g.n}]")
    mask = (1 << p.start) * sum(1 << (i * p.diff) for i in range(p.length))
    return g.is_independent_mask(mask)


# ---------------------------------------------------------------- file formats


def _content_lines(path: str | Path) -> list[tuple[int, list[str]]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if text:
                rows.append((lineno, text.split()))
    return rows


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"expected an integer, got {token!r}", lineno) from None


def read_edge_list(path: str | Path, n: int | None = None) -> IntGraph:
    """Parse "u v" lines.  Without ``n`` the largest vertex seen is used."""
    edges = []
    for lineno, tokens in _content_lines(path):
        if len(tokens) != 2:
            raise InputError(f"expected 'u v', got {len(tokens)} fields", lineno)
        u, v = _int(tokens[0], lineno), _int(tokens[1], lineno)
        if u < 1 or v < 1 or (n is not None and max(u, v) > n):
            raise InputError(f"vertex out of range in edge ({u}, {v})", lineno)
        edges.append((u, v))
    if n is None:
        n = max((max(e) for e in edges), default=0)
        if n < 1:
            raise InputError("empty edge list needs an explicit n")
    return from_edge_list(n, edges)


def read_coloring(path: str | Path) -> Coloring:
    """Parse "i c" lines; every i in [1, n] must appear exactly once."""
    colors: dict[int, str] = {}
    for lineno, tokens in _content_lines(path):
        if len(tokens) != 2:
            raise InputError(f"expected 'i c', got {len(tokens)} fields", lineno)
        i = _int(tokens[0], lineno)
        if i < 1:
            raise InputError(f"index {i} must be >= 1", lineno)
        if i in colors:
            raise InputError(f"index {i} colored twice", lineno)
        colors[i] = tokens[1]
    if not colors:
        raise InputError("empty coloring")
    n = max(colors)
    missing = [i for i in range(1, n + 1) if i not in colors]
    if missing:
        raise InputError(f"index {missing[0]} has no color")
    return Coloring(tuple(colors[i] for i in range(1, n + 1)))


def read_permutation(path: str | Path) -> PermutationMap:
    """Parse a single line of images, or "i pi(i)" lines."""
    rows = _content_lines(path)
    if not rows:
        raise InputError("empty permutation")
    if len(rows) == 1:
        lineno, tokens = rows[0]
        image = [_int(t, lineno) for t in tokens]
    else:
        pairs: dict[int, int] = {}
        for lineno, tokens in rows:
            if len(tokens) != 2:
                raise InputError(f"expected 'i pi(i)', got {len(tokens)} fields", lineno)
            i, j = _int(tokens[0], lineno), _int(tokens[1], lineno)
            if i in pairs:
                raise InputError(f"index {i} mapped twice", lineno)
            pairs[i] = j
        n = len(pairs)
        if sorted(pairs) != list(range(1, n + 1)):
            raise InputError(f"domain is not [1, {n}]")
        image = [pairs[i] for i in range(1, n + 1)]
    try:
        return PermutationMap(tuple(image))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def write_edge_list(g: IntGraph, path: str | Path) -> None:
    lines = [f"{u} {v}" for u, v in g.edges()]
    lines += [f"{v} {v}" for v in g.forbidden_vertices()]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def write_coloring(c: Coloring, path: str | Path) -> None:
    Path(path).write_text("".join(f"{i} {col}\n" for i, col in enumerate(c.color_of, 1)), encoding="utf-8")


def write_permutation(p: PermutationMap, path: str | Path) -> None:
    Path(path).write_text(" ".join(map(str, p.image)) + "\n", encoding="utf-8")


def direct_independent(g: IntGraph, elems: Sequence[int]) -> bool:
    """Naive pairwise check, kept separate from the bitset path."""
    for x in elems:
        if g.is_forbidden(x):
            return False
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            if g.has_edge(elems[a], elems[b]):
                return False
    return True
