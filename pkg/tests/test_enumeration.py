import json
from itertools import combinations

import pytest

from lagrangia.canon import canonical
from lagrangia.constructions import complete, family_F, matching
from lagrangia.enumeration import (LEFT_COMPRESSED, NO_ISOLATED, ScaleError, check_scale, clique_free,
                                   enumerate_classes, enumerate_free, enumerate_left_compressed, matching_free,
                                   max_lagrangian_over_free, parse_predicate, turan_bruteforce)
from lagrangia.hypergraph import Hypergraph, is_left_compressed, is_subgraph


def oracle_classes(r, n):
    cells = list(combinations(range(1, n + 1), r))
    return {canonical(Hypergraph(r, n, tuple(c for k, c in enumerate(cells) if mask >> k & 1)))
            for mask in range(1 << len(cells))}


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_graph_counts(n, count):
    got = list(enumerate_classes(2, n))
    assert len(got) == count
    assert len({canonical(G) for G in got}) == count
    if n <= 4:
        assert {canonical(G) for G in got} == oracle_classes(2, n)


def test_graph_count_six():
    assert sum(1 for _ in enumerate_classes(2, 6)) == 156


def test_matching_free_example():
    assert len(list(enumerate_free(2, 3, [matching_free(2)]))) == 4


def test_left_compressed_structure_example():
    fams = [family_F(2, ell, 8) for ell in (0, 1)]
    out = list(enumerate_free(2, 8, [matching_free(2), LEFT_COMPRESSED, NO_ISOLATED]))
    assert out
    for G in out:
        assert any(is_subgraph(G, F) for F in fams)


def test_left_compressed_matches_bruteforce():
    for r, n in ((2, 4), (2, 5), (3, 5)):
        cells = list(combinations(range(1, n + 1), r))
        brute = {Hypergraph(r, n, tuple(c for k, c in enumerate(cells) if mask >> k & 1))
                 for mask in range(1 << len(cells))}
        brute = {G.edges for G in brute if is_left_compressed(G)}
        ours = [G.edges for G in enumerate_left_compressed(r, n)]
        assert len(ours) == len(set(ours)) and set(ours) == brute


def test_extremal_examples(cfg):
    best = max_lagrangian_over_free(3, 6, matching(3, 2), config=cfg)
    assert abs(best.value - 0.08) < 1e-8 and best.witness == complete(3, 5)
    best = max_lagrangian_over_free(2, 6, complete(2, 3), config=cfg)
    assert best.value == 0.25


def test_exclusions(cfg):
    best = max_lagrangian_over_free(3, 6, matching(3, 2), exclusions=[complete(3, 5)], config=cfg)
    assert best.value <= 0.08 - 1e-3


def test_turan_examples():
    assert turan_bruteforce(2, 5, complete(2, 3)) == 6
    assert turan_bruteforce(3, 5, matching(3, 2)) == 10
    assert turan_bruteforce(2, 4, matching(2, 2)) == 3


def test_scale_guard(monkeypatch):
    with pytest.raises(ScaleError):
        check_scale(3, 9, 35)
    check_scale(3, 9, 35, force=True)
    monkeypatch.setenv("LAGRANGIA_MAX_CELLS", "100")
    check_scale(3, 9, 35)
    monkeypatch.setenv("LAGRANGIA_MAX_CELLS", "many")
    with pytest.raises(ScaleError):
        check_scale(3, 9, 35)


def test_turan_guard():
    with pytest.raises(ScaleError):
        turan_bruteforce(3, 8, matching(3, 2))


def test_parse_predicate():
    assert parse_predicate("matching-free:2").name == "matching-free:2"
    assert parse_predicate("clique-free:3").monotone
    assert parse_predicate("no-isolated") is NO_ISOLATED
    assert parse_predicate("left-compressed") is LEFT_COMPRESSED
    assert parse_predicate("free:complete:2:3")(complete(2, 2))
    assert not parse_predicate("weak-free:matching:3:2:6")(complete(3, 6))
    for bad in ("bogus", "matching-free:x", "free:nothing:1"):
        with pytest.raises(ValueError):
            parse_predicate(bad)


def test_limit_and_filters():
    assert len(list(enumerate_classes(2, 5, limit=7))) == 7
    out = list(enumerate_free(2, 5, [clique_free(3), NO_ISOLATED]))
    assert all(all(G.degrees[1:]) for G in out)


def test_checkpoint_resume(tmp_path):
    ck = tmp_path / "state.json"
    first = list(enumerate_classes(2, 5, [matching_free(2)], checkpoint=ck, limit=None))
    state = json.loads(ck.read_text())
    assert state["r"] == 2 and state["n"] == 5
    # interrupt in the middle of level 1; the level 0 checkpoint survives
    ck2 = tmp_path / "partial.json"
    partial = []
    for G in enumerate_classes(2, 5, [matching_free(2)], checkpoint=ck2):
        partial.append(G)
        if len(partial) == 2:
            break
    assert json.loads(ck2.read_text())["level"] == 0
    rest = list(enumerate_classes(2, 5, [matching_free(2)], resume=ck2))
    assert {canonical(G) for G in partial + rest} == {canonical(G) for G in first}


def test_resume_mismatch(tmp_path):
    ck = tmp_path / "state.json"
    list(enumerate_classes(2, 4, [matching_free(2)], checkpoint=ck))
    with pytest.raises(ValueError):
        list(enumerate_classes(2, 5, [matching_free(2)], resume=ck))


def test_labeled_predicate_needs_downsets():
    with pytest.raises(ValueError):
        list(enumerate_classes(2, 4, [LEFT_COMPRESSED]))
