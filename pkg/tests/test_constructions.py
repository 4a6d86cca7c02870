from math import comb

import pytest

from lagrangia.constructions import (FamilySpec, complete, construct, extension, falling, family_F, family_G,
                                     linear_star, matching, turan_blowup, turan_count)
from lagrangia.detection import matching_number
from lagrangia.hypergraph import HypergraphError, covers_pairs, is_left_compressed


def test_matching_and_star():
    assert matching(3, 2).edges == ((1, 2, 3), (4, 5, 6))
    assert linear_star(3, 2).edges == ((1, 2, 3), (1, 4, 5))


def test_turan_count():
    assert turan_count(3, 5, 12) == 134
    assert turan_count(3, 5, 5) == comb(5, 3)
    for n in range(5, 17):
        assert len(turan_blowup(3, 5, n)) == turan_count(3, 5, n)


def test_extension_examples():
    M2 = matching(3, 2)
    H = extension(M2, 6)
    assert (H.n, len(H)) == (15, 11)
    H = extension(linear_star(3, 2), 5)
    assert (H.n, len(H)) == (9, 6)
    assert extension(complete(3, 5), 5) == complete(3, 5)
    assert covers_pairs(H) is False  # new vertices are not covered among themselves


def test_extension_core_too_small():
    with pytest.raises(HypergraphError):
        extension(linear_star(4, 2), 6)


def test_extension_of_2graph_adds_pair_edges():
    H = extension(matching(2, 2), 4)
    assert (H.n, len(H)) == (4, 6)


def test_family_F_matching_free_exhaustive():
    for t in range(2, 5):
        for ell in range(t):
            for n in range(2 * t, 11):
                F = family_F(t, ell, n)
                assert matching_number(F) <= t - 1
                assert is_left_compressed(F)


def test_family_F_star():
    assert set(family_F(2, 1, 6).edges) == {(1, i) for i in range(2, 7)}
    # l = 0 is a clique on 2t-1 vertices
    assert set(family_F(3, 0, 7).edges) == set(complete(2, 5).edges)


def test_family_G_examples():
    assert len(family_G(0, 6)) == 10
    assert len(family_G(1, 6)) == 10
    assert matching_number(family_G(4, 7)) == 1
    for k in range(5):
        for n in (6, 7, 8):
            G = family_G(k, n)
            assert matching_number(G) <= 1 and is_left_compressed(G)


@pytest.mark.parametrize("text", ["complete:3:5", "matching:3:2", "linear-star:4:2", "turan-blowup:3:5:12",
                                  "F-family:2:1:6", "G3:7", "extension:6:matching:3:2"])
def test_spec_roundtrip(text):
    spec = FamilySpec.parse(text)
    assert str(spec) == text
    assert construct(text) == construct(spec) == spec.realize()


@pytest.mark.parametrize("text", ["complete:3", "hexagon:1", "extension:matching:3:2", "complete:x:5", ""])
def test_spec_errors(text):
    with pytest.raises(HypergraphError):
        construct(text)


def test_falling():
    assert falling(5, 3) == 60
    assert falling(5, 0) == 1
    assert falling(2, 3) == 0
