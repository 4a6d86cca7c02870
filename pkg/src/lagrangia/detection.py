"""Exact decision procedures: matchings, cliques, embeddings, weak extensions, density."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .hypergraph import Hypergraph, HypergraphError, delete_vertices

# ------------------------------------------------------------------ matchings


def _greedy_matching(edges: list[int]) -> int:
    used, k = 0, 0
    for m in edges:
        if not m & used:
            used |= m
            k += 1
    return k


def matching_number(G: Hypergraph) -> int:
    """Maximum number of pairwise disjoint edges (exact branch and bound).

    Branches on the lowest remaining vertex v: either v stays unmatched, or it is
    matched by one of its edges.
    """
    masks = [sum(1 << v for v in e) for e in G.edges]
    if not masks:
        return 0
    r = G.r
    best = _greedy_matching(sorted(masks, key=lambda m: bin(m).count("1")))
    cap = min(len(masks), G.n // r)

    def rec(avail: list[int], count: int):
        nonlocal best
        if best == cap:
            return
        if not avail:
            best = max(best, count)
            return
        covered = 0
        for m in avail:
            covered |= m
        if count + min(len(avail), bin(covered).count("1") // r) <= best:
            return
        low = covered & -covered
        with_v = [m for m in avail if m & low]
        without_v = [m for m in avail if not m & low]
        for m in with_v:
            rec([x for x in without_v if not x & m], count + 1)
        rec(without_v, count)

    rec(masks, 0)
    return best


def has_matching(G: Hypergraph, t: int) -> bool:
    return matching_number(G) >= t


def is_matching_free(G: Hypergraph, t: int) -> bool:
    """True iff G contains no t pairwise disjoint edges."""
    return matching_number(G) <= t - 1


# -------------------------------------------------------------------- cliques


def clique_number(G: Hypergraph) -> int:
    """Largest p such that some p-set spans a complete r-graph; r-1 for an edgeless G."""
    r = G.r
    if not G.edges:
        return r - 1
    E = G.edge_set
    best = r

    def rec(S: tuple[int, ...], cand: list[int]):
        nonlocal best
        if len(S) > best:
            best = len(S)
        if len(S) + len(cand) <= best:
            return
        for idx, v in enumerate(cand):
            if len(S) + len(cand) - idx <= best:
                return
            S2 = S + (v,)
            rest = cand[idx + 1:]
            if len(S2) >= r - 1:
                subs = [T for T in combinations(S2, r - 1) if v in T] if len(S2) > r - 1 else [S2]
                rest = [w for w in rest if all(tuple(sorted(T + (w,))) in E for T in subs)]
            rec(S2, rest)

    rec((), [v for v in G.vertices if G.degrees[v]])
    return best


def has_clique(G: Hypergraph, p: int) -> bool:
    if p < G.r:
        return G.n >= p
    return clique_number(G) >= p


# ---------------------------------------------------------------- embeddings


def _embedding_order(F: Hypergraph) -> list[int]:
    """F-vertices ordered so each next vertex shares as many edges as possible with the placed ones."""
    remaining = set(F.vertices)
    order: list[int] = []
    nbrs = {v: set() for v in F.vertices}
    for a, b in F.shadow:
        nbrs[a].add(b)
        nbrs[b].add(a)
    while remaining:
        placed = set(order)
        v = max(remaining, key=lambda u: (len(nbrs[u] & placed), F.degrees[u], -u))
        order.append(v)
        remaining.discard(v)
    return order


def find_embedding(G: Hypergraph, F: Hypergraph, *, clique_image: bool = False,
                   extra: int = 0) -> dict[int, int] | None:
    """Injective map V(F) -> V(G) carrying every edge of F onto an edge of G, or None.

    With ``clique_image`` the image must also be pairwise covered in G. ``extra``
    asks for that many additional image vertices (only meaningful with
    ``clique_image``), reported under keys F.n+1, F.n+2, ...
    """
    if F.r != G.r:
        raise HypergraphError(f"uniformity mismatch: F is {F.r}-uniform, G is {G.r}-uniform")
    if F.n + extra > G.n or len(F) > len(G):
        return None
    r = G.r
    Fx = Hypergraph(r, F.n + extra, F.edges)
    order = _embedding_order(Fx)
    pos = {v: k for k, v in enumerate(order)}

    gn = {v: set() for v in G.vertices}
    for a, b in G.shadow:
        gn[a].add(b)
        gn[b].add(a)
    partial = [set() for _ in range(r + 1)]
    for e in G.edges:
        for k in range(2, r):
            partial[k].update(combinations(e, k))
    E = G.edge_set

    fn = {v: set() for v in Fx.vertices}
    for a, b in Fx.shadow:
        fn[a].add(b)
        fn[b].add(a)
    # edges of F whose last-placed vertex is u, and their partially placed traces
    closes = {v: [] for v in Fx.vertices}
    touches = {v: [] for v in Fx.vertices}
    for e in Fx.edges:
        last = max(e, key=pos.__getitem__)
        closes[last].append(e)
        for u in e:
            if u != last:
                touches[u].append(e)
    back = {u: [w for w in fn[u] if pos[w] < pos[u]] for u in Fx.vertices}
    earlier = {u: order[:pos[u]] for u in Fx.vertices}

    fdeg = Fx.degrees
    fsh = {v: len(fn[v]) for v in Fx.vertices}
    gdeg = G.degrees
    gsh = {v: len(gn[v]) for v in G.vertices}
    phi: dict[int, int] = {}
    used: set[int] = set()

    def ok(u: int, g: int) -> bool:
        for e in closes[u]:
            if tuple(sorted(phi[w] if w != u else g for w in e)) not in E:
                return False
        for e in touches[u]:
            placed = [phi[w] for w in e if w in phi] + [g]
            k = len(placed)
            if 2 < k < r and tuple(sorted(placed)) not in partial[k]:
                return False
        return True

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        if clique_image:
            anchors = earlier[u]
        else:
            anchors = back[u]
        if anchors:
            cand = set(gn[phi[anchors[0]]])
            for w in anchors[1:]:
                cand &= gn[phi[w]]
            cand -= used
            cand = sorted(cand)
        else:
            cand = [g for g in G.vertices if g not in used]
        for g in cand:
            if gdeg[g] < fdeg[u] or gsh[g] < fsh[u]:
                continue
            if not ok(u, g):
                continue
            phi[u] = g
            used.add(g)
            if rec(k + 1):
                return True
            del phi[u]
            used.discard(g)
        return False

    return dict(phi) if rec(0) else None


def has_subgraph(G: Hypergraph, F: Hypergraph, witness: bool = False):
    """Whether G contains a copy of F; with ``witness`` return the embedding (or None)."""
    emb = find_embedding(G, F)
    return emb if witness else emb is not None


def contains_weak_extension(G: Hypergraph, F: Hypergraph, p: int, witness: bool = False):
    """Whether G has a p-set C, pairwise covered in G, with G[C] containing a copy of F.

    Every pair of C not covered by the copy of F must be covered by an edge of G,
    and pairs covered by the copy are covered by its (G-)edges, so the condition
    is exactly a pairwise covered core hosting F.
    """
    if p < F.n:
        raise HypergraphError(f"core size p={p} is smaller than |V(F)|={F.n}")
    emb = find_embedding(G, F, clique_image=True, extra=p - F.n)
    if witness:
        return emb
    return emb is not None


# ---------------------------------------------------------------- structure


def is_vertex_cover(G: Hypergraph, S: Iterable[int]) -> bool:
    S = set(S)
    return all(S.intersection(e) for e in G.edges)


class Density(enum.Enum):
    DENSE = "dense"
    NOT_DENSE = "not-dense"
    INCONCLUSIVE = "inconclusive"


@dataclass
class DensityCheck:
    """Outcome of a density test; truthy only when the graph is certified dense."""

    status: Density
    value: float
    gaps: dict[int, float] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status is Density.DENSE


def is_dense(G: Hypergraph, engine: Callable[[Hypergraph], float] | None = None,
             tol: float = 1e-7, zero_tol: float | None = None) -> DensityCheck:
    """Compare the Lagrangian of G with that of every one-vertex deletion.

    DENSE when every gap exceeds ``tol``; NOT_DENSE when some gap is at most
    ``zero_tol`` (default tol/1000), i.e. numerically zero; INCONCLUSIVE otherwise.
    """
    if engine is None:
        from .lagrangian import lagrangian_value
        engine = lagrangian_value
    zero_tol = tol * 1e-3 if zero_tol is None else zero_tol
    value = engine(G)
    gaps = {v: value - engine(delete_vertices(G, [v])) for v in G.vertices}
    if not gaps:
        return DensityCheck(Density.DENSE, value, gaps)
    worst = min(gaps.values())
    if worst > tol:
        status = Density.DENSE
    elif worst <= zero_tol:
        status = Density.NOT_DENSE
    else:
        status = Density.INCONCLUSIVE
    return DensityCheck(status, value, gaps)
