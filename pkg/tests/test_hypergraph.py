from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagrangia.constructions import complete, family_F
from lagrangia.hypergraph import (Hypergraph, HypergraphError, add_isolated, blowup, build, compress,
                                  covers_pair, covers_pairs, delete_vertices, dumps, induced, is_left_compressed,
                                  is_subgraph, link, link_diff, loads, read_hg, relabel, remove_isolated, s_value,
                                  twin_classes)


def test_build_normalizes():
    G = build(3, 4, [{1, 2, 3}, {2, 3, 4}])
    assert G.r == 3 and len(G) == 2
    assert len(build(3, 4, [{3, 2, 1}, {1, 2, 3}])) == 1


@pytest.mark.parametrize("r,n,edges", [
    (2, 3, [{1, 4}]),
    (3, 4, [{1, 2}]),
    (2, 3, [{0, 1}]),
    (0, 3, []),
])
def test_build_rejects(r, n, edges):
    with pytest.raises(HypergraphError):
        build(r, n, edges)


def test_out_of_range_message():
    with pytest.raises(HypergraphError, match="out of range"):
        build(2, 3, [{1, 4}])


def test_induced():
    assert induced(complete(3, 5), [1, 2, 3, 4]) == complete(3, 4)
    G = build(3, 5, [(1, 2, 3), (3, 4, 5)])
    assert induced(G, [1, 2, 3]).edges == ((1, 2, 3),)
    empty = induced(G, [])
    assert empty.n == 0 and not empty.edges


def test_delete_vertices_relabels():
    G = build(3, 5, [(1, 2, 3), (3, 4, 5)])
    H = delete_vertices(G, [1])
    assert H.n == 4 and H.edges == ((2, 3, 4),)


def test_link():
    assert link(complete(3, 4), [1]) == complete(2, 3)
    L = link(build(3, 5, [(1, 2, 3), (1, 4, 5)]), [1])
    # vertex 1 is dropped and 2..5 become 1..4
    assert L.r == 2 and L.n == 4 and set(L.edges) == {(1, 2), (3, 4)}
    assert not link(build(3, 5, [(1, 2, 3)]), [4]).edges


def test_link_diff():
    assert link_diff(build(3, 4, [(2, 3, 4)]), 4, 1) == {(2, 3)}
    assert link_diff(build(3, 4, [(1, 2, 3), (2, 3, 4)]), 4, 1) == set()
    assert link_diff(complete(3, 5), 5, 1) == set()


def test_compress_examples():
    assert compress(build(3, 4, [(2, 3, 4)]), 1, 4).edges == ((1, 2, 3),)
    G = build(3, 4, [(1, 2, 3), (2, 3, 4)])
    assert compress(G, 1, 4) == G
    G = build(3, 4, [(1, 3, 4), (2, 3, 4)])
    assert compress(G, 1, 2) == G


def test_covers():
    assert covers_pairs(complete(3, 5))
    M = build(3, 6, [(1, 2, 3), (4, 5, 6)])
    assert not covers_pair(M, 1, 4)
    star = build(3, 5, [(1, i, j) for i in range(2, 6) for j in range(i + 1, 6)])
    assert covers_pairs(star)


def test_left_compressed():
    assert is_left_compressed(build(3, 4, [(1, 2, 3)]))
    assert not is_left_compressed(build(3, 4, [(2, 3, 4)]))
    assert is_left_compressed(family_F(2, 1, 6))
    # a different order can make {234} compressed
    assert is_left_compressed(build(3, 4, [(2, 3, 4)]), [2, 3, 4, 1])


def test_blowup_examples():
    assert len(blowup(complete(2, 2), [2, 2])) == 4
    assert len(blowup(build(3, 3, [(1, 2, 3)]), [1, 1, 2])) == 2
    T = blowup(complete(3, 5), [2, 2, 2, 3, 3])
    assert T.n == 12 and len(T) == 134


def test_blowup_zero_parts():
    B = blowup(complete(3, 4), [0, 1, 1, 1])
    assert B.n == 3 and len(B) == 1


def test_s_value():
    assert s_value(build(3, 3, [(1, 2, 3)])) == 6
    G = build(3, 4, [(2, 3, 4)])
    assert s_value(compress(G, 1, 4)) == 6 < s_value(G) == 9


def test_remove_isolated_and_pad():
    G = build(3, 5, [(1, 2, 4)])
    H = remove_isolated(G)
    assert H.n == 3 and H.edges == ((1, 2, 3),)
    assert add_isolated(H, 2).n == 5


def test_relabel_and_subgraph():
    G = build(2, 3, [(1, 2)])
    H = relabel(G, {1: 3, 2: 1, 3: 2})
    assert H.edges == ((1, 3),)
    assert is_subgraph(G, complete(2, 3))
    assert not is_subgraph(complete(2, 3), G)


def test_twin_classes():
    M = build(3, 6, [(1, 2, 3), (4, 5, 6)])
    assert sorted(map(sorted, twin_classes(M))) == [[1, 2, 3], [4, 5, 6]]


def test_hg_roundtrip(tmp_path):
    G = build(3, 6, [(1, 2, 3), (2, 5, 6)])
    assert loads(dumps(G)) == G
    path = tmp_path / "g.hg"
    path.write_text(dumps(G))
    assert read_hg(path) == G


def test_loads_rejects_garbage():
    with pytest.raises(HypergraphError):
        loads("3 4\n1 2\n")
    with pytest.raises(HypergraphError):
        loads("")


# ---- properties


@st.composite
def graphs(draw, max_n=7):
    r = draw(st.integers(2, 3))
    n = draw(st.integers(r, max_n))
    from itertools import combinations
    cells = list(combinations(range(1, n + 1), r))
    mask = draw(st.lists(st.booleans(), min_size=len(cells), max_size=len(cells)))
    return Hypergraph(r, n, tuple(e for e, keep in zip(cells, mask) if keep))


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_compress_properties(G, data):
    i, j = data.draw(st.lists(st.integers(1, G.n), min_size=2, max_size=2, unique=True))
    H = compress(G, i, j)
    assert len(H) == len(G)
    assert compress(H, i, j) == H
    moved = len(set(G.edges) - set(H.edges))
    assert s_value(H) - s_value(G) == (i - j) * moved


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_identity_operations(G):
    assert induced(G, G.vertices) == G
    assert link(G, []) == G
    assert blowup(G, [1] * G.n) == G


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=5))
def test_left_compressed_means_closed_under_shifts(G):
    fixed = all(compress(G, i, j) == G for i in G.vertices for j in G.vertices if i < j)
    assert is_left_compressed(G) == fixed


def test_relabel_rejects_non_permutation():
    with pytest.raises(HypergraphError):
        relabel(build(2, 3, [(1, 2)]), {1: 1, 2: 1, 3: 2})


def test_all_relabelings_preserve_edge_count():
    G = build(3, 4, [(1, 2, 3), (2, 3, 4)])
    for p in permutations(range(1, 5)):
        assert len(relabel(G, list(p))) == 2
