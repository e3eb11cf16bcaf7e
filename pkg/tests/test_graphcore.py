import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indap.apfamily import Progression
from indap.graphcore import (
    Coloring,
    FixedPointMode,
    InputError,
    PermutationMap,
    complete_graph,
    direct_independent,
    empty_graph,
    from_coloring,
    from_edge_list,
    from_permutation,
    is_independent,
    read_coloring,
    read_edge_list,
    read_permutation,
    write_coloring,
    write_edge_list,
    write_permutation,
)


def test_edge_list_basics():
    assert from_edge_list(3, [(1, 2)]).edge_count == 1
    assert from_edge_list(3, [(1, 2), (2, 1), (1, 2)]).edge_count == 1
    g = from_edge_list(3, [(2, 2)])
    assert g.forbidden_vertices() == [2]
    assert g.edge_count == 0
    with pytest.raises(ValueError):
        from_edge_list(3, [(1, 4)])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 25).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=60))))
def test_graph_invariants(data):
    n, edges = data
    g = from_edge_list(n, edges)
    bits = 0
    for v in range(1, n + 1):
        assert not g.has_edge(v, v)
        for u in g.neighbors(v):
            assert g.has_edge(u, v)
        bits += bin(g.adjacency[v]).count("1")
    assert bits == 2 * g.edge_count
    assert g.edge_count == len({frozenset(e) for e in edges if e[0] != e[1]})


def test_coloring_graphs():
    assert from_coloring(Coloring((1, 2, 3, 4, 5))).edge_count == 0
    assert from_coloring(Coloring((1, 1, 2, 2))).edge_count == 2
    g = from_coloring(Coloring(("a", "a", "a", "b", "b", "c")))
    assert g.edge_count == 4


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=60))
def test_coloring_cliques(colors):
    c = Coloring(tuple(colors))
    g = from_coloring(c)
    n = c.n
    for u, v in itertools.combinations(range(1, n + 1), 2):
        assert g.has_edge(u, v) == (colors[u - 1] == colors[v - 1])
    m = c.max_multiplicity
    assert sum(c.multiplicity.values()) == n
    if m >= 2:
        assert g.edge_count * m <= n * m * (m - 1) // 2  # edges <= (n/m) * C(m, 2)


def test_permutation_graphs():
    g = from_permutation(PermutationMap.identity(5), FixedPointMode.STRICT)
    assert g.edge_count == 0 and g.forbidden_vertices() == [1, 2, 3, 4, 5]
    g = from_permutation(PermutationMap.identity(5), FixedPointMode.WEAK)
    assert g.edge_count == 0 and g.forbidden == 0
    g = from_permutation(PermutationMap((2, 1, 4, 3)))
    assert g.edge_count == 2 and g.forbidden == 0
    for n in (3, 4, 9):
        cyc = PermutationMap(tuple(list(range(2, n + 1)) + [1]))
        assert from_permutation(cyc).edge_count == n
    with pytest.raises(ValueError):
        PermutationMap((1, 1, 3))


@settings(max_examples=60, deadline=None)
@given(st.permutations(list(range(1, 31))))
def test_permutation_edge_count(image):
    p = PermutationMap(tuple(image))
    g = from_permutation(p, FixedPointMode.WEAK)
    pairs = {frozenset((i, p(i))) for i in range(1, 31) if p(i) != i}
    assert g.edge_count == len(pairs) <= 30


def test_is_independent():
    assert is_independent(empty_graph(10), Progression(3, 1, 3))
    assert not is_independent(from_edge_list(10, [(2, 8)]), Progression(3, 2, 3))
    assert not is_independent(from_edge_list(10, [(5, 5)]), Progression(2, 1, 3))
    assert not is_independent(complete_graph(4), Progression(1, 1, 2))
    with pytest.raises(ValueError):
        is_independent(empty_graph(5), Progression(3, 1, 3))


def test_is_independent_matches_pairwise():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(3, 30)
        edges = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, 40))]
        g = from_edge_list(n, edges)
        d = rng.randint(1, (n - 1) // 2)
        a = rng.randint(1, n - 2 * d)
        p = Progression(d, a, 3)
        assert is_independent(g, p) == direct_independent(g, p.elements())


def test_edge_list_file(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("# comment\n1 2\n\n2 3  # trailing\n3 3\n")
    g = read_edge_list(f)
    assert g.n == 3 and g.edge_count == 2 and g.forbidden_vertices() == [3]
    assert read_edge_list(f, n=7).n == 7
    f.write_text("1 2\n1 x\n")
    with pytest.raises(InputError) as exc:
        read_edge_list(f)
    assert exc.value.line == 2
    f.write_text("1 2\n1 9\n")
    with pytest.raises(InputError, match="line 2"):
        read_edge_list(f, n=5)
    f.write_text("")
    with pytest.raises(InputError):
        read_edge_list(f)
    assert read_edge_list(f, n=4).edge_count == 0


def test_round_trips(tmp_path):
    g = from_edge_list(6, [(1, 2), (3, 6), (4, 4)])
    write_edge_list(g, tmp_path / "g")
    assert read_edge_list(tmp_path / "g", n=6) == g
    c = Coloring(("r", "g", "r", "b"))
    write_coloring(c, tmp_path / "c")
    assert read_coloring(tmp_path / "c") == c
    p = PermutationMap((3, 1, 2, 4))
    write_permutation(p, tmp_path / "p")
    assert read_permutation(tmp_path / "p") == p


def test_coloring_file_errors(tmp_path):
    f = tmp_path / "c"
    f.write_text("1 a\n3 b\n")
    with pytest.raises(InputError, match="index 2"):
        read_coloring(f)
    f.write_text("1 a\n1 b\n")
    with pytest.raises(InputError, match="line 2"):
        read_coloring(f)


def test_permutation_file_forms(tmp_path):
    f = tmp_path / "p"
    f.write_text("2 1\n1 2\n")
    assert read_permutation(f).image == (2, 1)
    f.write_text("3 1 2\n")
    assert read_permutation(f).image == (3, 1, 2)
    f.write_text("1 1 2\n")
    with pytest.raises(InputError):
        read_permutation(f)
    f.write_text("1 2\n3 1\n")
    with pytest.raises(InputError):
        read_permutation(f)
