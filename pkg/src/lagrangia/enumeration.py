"""Exhaustive enumeration of small r-graphs up to isomorphism, with predicate pruning.

Isomorphism classes are generated level by level (by edge count): every class
with k+1 edges arises from some class with k edges by adding one edge, and
duplicates are removed by canonical form. Predicates that survive edge deletion
("monotone", e.g. matching-freeness) prune whole subtrees; the others only
filter the output. Left-compressed families are a labeled notion, so they are
enumerated directly as down-sets of the shift order.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .canon import canonical, from_canonical, is_isomorphic
from .constructions import FamilySpec, construct
from .detection import (clique_number, contains_weak_extension, has_subgraph, matching_number)
from .hypergraph import Hypergraph, HypergraphError, is_left_compressed, remove_isolated
from .lagrangian import OptimizerConfig, lagrangian_value

log = logging.getLogger(__name__)

ENUMERATION_LIMIT = 35
TURAN_LIMIT = 21
ENV_LIMIT = "LAGRANGIA_MAX_CELLS"


class ScaleError(RuntimeError):
    """The requested search exceeds the configured number of candidate edges."""


def scale_limit(default: int) -> int:
    raw = os.environ.get(ENV_LIMIT)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ScaleError(f"{ENV_LIMIT} must be an integer, got {raw!r}") from None
    return default


def check_scale(r: int, n: int, default: int, force: bool = False) -> None:
    cells = comb(n, r)
    limit = scale_limit(default)
    if cells > limit and not force:
        raise ScaleError(f"C({n},{r}) = {cells} candidate edges exceeds the limit {limit}; "
                         f"pass force or set {ENV_LIMIT}")


# ------------------------------------------------------------- predicates


@dataclass(frozen=True)
class Predicate:
    """A named test on r-graphs.

    ``monotone``: preserved under deleting edges, so a failing graph can be pruned
    together with all its supergraphs. ``labeled``: depends on vertex labels (only
    left-compressed so far).
    """

    name: str
    test: Callable[[Hypergraph], bool]
    monotone: bool = False
    labeled: bool = False
    drop_isolated: bool = False

    def __call__(self, G: Hypergraph) -> bool:
        return self.test(G)


def matching_free(t: int) -> Predicate:
    return Predicate(f"matching-free:{t}", lambda G: matching_number(G) <= t - 1, monotone=True)


def clique_free(p: int) -> Predicate:
    return Predicate(f"clique-free:{p}", lambda G: clique_number(G) < p, monotone=True)


def subgraph_free(F: Hypergraph, name: str | None = None) -> Predicate:
    if _is_matching(F):
        t = len(F)
        return Predicate(name or f"matching-free:{t}", lambda G: matching_number(G) <= t - 1, monotone=True)
    return Predicate(name or f"free:{F!r}", lambda G: not has_subgraph(G, F), monotone=True)


def weak_extension_free(F: Hypergraph, p: int, name: str | None = None) -> Predicate:
    return Predicate(name or f"weak-free:{F!r}:{p}", lambda G: not contains_weak_extension(G, F, p), monotone=True)


NO_ISOLATED = Predicate("no-isolated", lambda G: all(G.degrees[1:]), drop_isolated=True)
LEFT_COMPRESSED = Predicate("left-compressed", is_left_compressed, monotone=False, labeled=True)


def _is_matching(F: Hypergraph) -> bool:
    seen: set[int] = set()
    for e in F.edges:
        if seen.intersection(e):
            return False
        seen.update(e)
    return len(seen) == F.n and len(F) > 0


def parse_predicate(text: str) -> Predicate:
    """``matching-free:t``, ``clique-free:p``, ``no-isolated``, ``left-compressed``,
    ``free:<construction>`` or ``weak-free:<construction>:p``."""
    head, _, rest = text.partition(":")
    try:
        if head == "matching-free":
            return matching_free(int(rest))
        if head == "clique-free":
            return clique_free(int(rest))
        if head == "no-isolated" and not rest:
            return NO_ISOLATED
        if head == "left-compressed" and not rest:
            return LEFT_COMPRESSED
        if head == "free":
            return subgraph_free(construct(rest), name=text)
        if head == "weak-free":
            spec, _, p = rest.rpartition(":")
            return weak_extension_free(construct(spec), int(p), name=text)
    except (ValueError, HypergraphError) as exc:
        raise ValueError(f"bad predicate {text!r}: {exc}") from None
    raise ValueError(f"unknown predicate {text!r}")


# ------------------------------------------------------- iso enumeration


def _children(G: Hypergraph, cells: Sequence[tuple[int, ...]]) -> Iterator[Hypergraph]:
    have = G.edge_set
    for e in cells:
        if e not in have:
            yield Hypergraph(G.r, G.n, G.edges + (e,))


def _save_checkpoint(path: Path, state: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(state, sort_keys=True))
    tmp.replace(path)


def enumerate_classes(r: int, n: int, predicates: Iterable[Predicate] = (), *, force: bool = False,
                      limit: int | None = None, checkpoint: str | os.PathLike | None = None,
                      resume: str | os.PathLike | None = None) -> Iterator[Hypergraph]:
    """Every isomorphism class of r-graphs on exactly n vertices passing all predicates.

    Yields canonical representatives. Monotone predicates prune; the rest filter.
    With ``checkpoint`` the frontier of each finished level is written as JSON;
    ``resume`` continues from such a file (classes emitted before it was written
    are not emitted again).
    """
    preds = list(predicates)
    if any(p.labeled for p in preds):
        raise ValueError("labeled predicates need enumerate_left_compressed")
    check_scale(r, n, ENUMERATION_LIMIT, force)
    prune = [p for p in preds if p.monotone]
    keep = [p for p in preds if not p.monotone]
    cells = list(combinations(range(1, n + 1), r))
    names = sorted(p.name for p in preds)
    if resume is not None:
        state = json.loads(Path(resume).read_text())
        if (state["r"], state["n"], state["predicates"]) != (r, n, names):
            raise ValueError("checkpoint does not match the requested enumeration")
        frontier = [from_canonical(k) for k in state["frontier"]]
        level, emitted = state["level"], state["emitted"]
    else:
        empty = Hypergraph(r, n, ())
        frontier = [empty] if all(p(empty) for p in prune) else []
        level, emitted = 0, 0
        for G in frontier:
            if all(p(G) for p in keep):
                emitted += 1
                yield G
                if limit is not None and emitted >= limit:
                    return
        if checkpoint is not None:
            _save_checkpoint(Path(checkpoint), {
                "r": r, "n": n, "predicates": names, "level": 0, "emitted": emitted,
                "frontier": [canonical(G).decode() for G in frontier]})
    while frontier:
        seen: dict[bytes, Hypergraph] = {}
        for G in frontier:
            for H in _children(G, cells):
                key = canonical(H)
                if key in seen:
                    continue
                if all(p(H) for p in prune):
                    seen[key] = from_canonical(key)
        level += 1
        frontier = [seen[k] for k in sorted(seen)]
        for G in frontier:
            if all(p(G) for p in keep):
                emitted += 1
                yield G
                if limit is not None and emitted >= limit:
                    return
        if checkpoint is not None:
            _save_checkpoint(Path(checkpoint), {
                "r": r, "n": n, "predicates": names, "level": level, "emitted": emitted,
                "frontier": [k.decode() for k in sorted(seen)]})
        log.debug("level %d: %d classes", level, len(frontier))


def enumerate_left_compressed(r: int, n: int, predicates: Iterable[Predicate] = (), *,
                              force: bool = False, limit: int | None = None) -> Iterator[Hypergraph]:
    """Every r-graph on [n] that is left-compressed for the natural order and passes the predicates.

    Left-compressed families are exactly the down-sets of the shift order
    (A below B when a_k <= b_k for all k). The r-sets are scanned in order of
    label sum, and a set may be added only once its immediate predecessors are
    in, so each down-set is produced exactly once.
    """
    preds = [p for p in predicates if p is not LEFT_COMPRESSED and p.name != "left-compressed"]
    check_scale(r, n, ENUMERATION_LIMIT, force)
    prune = [p for p in preds if p.monotone]
    keep = [p for p in preds if not p.monotone]
    cells = sorted(combinations(range(1, n + 1), r), key=lambda e: (sum(e), e))
    index = {e: k for k, e in enumerate(cells)}
    preds_of = []
    for e in cells:
        below = []
        for k in range(r):
            lower = e[k] - 1
            if lower >= 1 and (k == 0 or lower > e[k - 1]):
                below.append(index[e[:k] + (lower,) + e[k + 1:]])
        preds_of.append(below)
    chosen: list[int] = []
    inside = [False] * len(cells)
    count = 0

    def rec(pos: int) -> Iterator[Hypergraph]:
        nonlocal count
        if pos == len(cells):
            G = Hypergraph(r, n, tuple(cells[k] for k in chosen))
            if all(p(G) for p in keep):
                count += 1
                yield G
            return
        if all(inside[k] for k in preds_of[pos]):
            chosen.append(pos)
            inside[pos] = True
            G = Hypergraph(r, n, tuple(cells[k] for k in chosen))
            if all(p(G) for p in prune):
                yield from rec(pos + 1)
            chosen.pop()
            inside[pos] = False
        yield from rec(pos + 1)

    for G in rec(0):
        yield G
        if limit is not None and count >= limit:
            return


def enumerate_free(r: int, n: int, predicates: Iterable[Predicate | str] = (), **kw) -> Iterator[Hypergraph]:
    """All classes of r-graphs on at most n vertices satisfying every predicate.

    Without a no-isolated predicate, classes are reported on exactly n vertices
    (padding with isolated vertices identifies both readings). With it, each
    class is reported without its isolated vertices. A left-compressed
    predicate switches to labeled output: every qualifying graph on [n].
    """
    preds = [parse_predicate(p) if isinstance(p, str) else p for p in predicates]
    if any(p.labeled for p in preds):
        yield from enumerate_left_compressed(r, n, preds, **kw)
        return
    drop = any(p.drop_isolated for p in preds)
    base = [p for p in preds if not p.drop_isolated]
    for G in enumerate_classes(r, n, base, **kw):
        if drop:
            H = remove_isolated(G)
            if H.edges:
                yield H
        else:
            yield G


# --------------------------------------------------------------- extremal


class Extremum(NamedTuple):
    value: float
    witness: Hypergraph
    table: list[tuple[Hypergraph, float]]


def max_lagrangian_over_free(r: int, n_max: int, F: Hypergraph | Predicate,
                             exclusions: Iterable[Hypergraph] = (), config: OptimizerConfig | None = None,
                             force: bool = False) -> Extremum:
    """Largest Lagrangian over F-free r-graphs on at most n_max vertices without isolated vertices.

    Graphs isomorphic to one of ``exclusions`` are skipped. ``table`` lists every
    examined class with its value, largest first (ties by canonical form).
    """
    pred = F if isinstance(F, Predicate) else subgraph_free(F)
    excl = list(exclusions)
    table = []
    for G in enumerate_free(r, n_max, [pred, NO_ISOLATED], force=force):
        if any(E.r == G.r and is_isomorphic(G, E) for E in excl if E.n == G.n):
            continue
        table.append((G, lagrangian_value(G, config)))
    if not table:
        raise ValueError("no graph satisfies the constraints")
    table.sort(key=lambda gv: (-gv[1], canonical(gv[0])))
    return Extremum(table[0][1], table[0][0], table)


def turan_bruteforce(r: int, n: int, F: Hypergraph | Predicate, force: bool = False) -> int:
    """ex(n, F): the most edges in an F-free r-graph on n vertices, by exhaustive search."""
    check_scale(r, n, TURAN_LIMIT, force)
    pred = F if isinstance(F, Predicate) else subgraph_free(F)
    if not pred.monotone:
        raise ValueError("the forbidden property must be preserved under edge deletion")
    best = 0
    for G in enumerate_classes(r, n, [pred], force=True):
        best = max(best, len(G))
    return best


def construct_predicate(spec: str | FamilySpec) -> Predicate:
    return subgraph_free(construct(spec), name=f"free:{spec}")
