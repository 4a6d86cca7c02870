"""Exact canonical forms for r-graphs by colour refinement plus individualization.

The search explores every branch of the individualization tree except those
related by a vertex transposition that is an automorphism (twin vertices), so
the minimum leaf certificate is a true isomorphism invariant.
"""

from __future__ import annotations

from .hypergraph import Hypergraph, HypergraphError, twin_representatives


def _refine(n, inc, colors):
    """Split colour classes until stable. Colours are renumbered canonically."""
    k = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            around = sorted(tuple(sorted(colors[u] for u in e if u != v)) for e in inc[v])
            sigs.append((colors[v], tuple(around)))
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == k:
            return colors
        k = len(rank)


def canonical_labeling(G: Hypergraph) -> tuple[tuple[tuple[int, ...], ...], list[int]]:
    """Return (certificate, perm) where perm[v-1] is the canonical label of v.

    The certificate is the sorted edge list after relabeling and is identical for
    isomorphic graphs.
    """
    n = G.n
    edges0 = [tuple(v - 1 for v in e) for e in G.edges]
    inc = [[] for _ in range(n)]
    for e in edges0:
        for v in e:
            inc[v].append(e)
    twin = [v - 1 for v in twin_representatives(G)[1:]]
    best = [None, None]

    def leaf(colors):
        cert = tuple(sorted(tuple(sorted(colors[v] for v in e)) for e in edges0))
        if best[0] is None or cert < best[0]:
            best[0] = cert
            best[1] = [c + 1 for c in colors]

    def search(colors):
        colors = _refine(n, inc, colors)
        cells = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            leaf(colors)
            return
        seen = set()
        for v in target:
            if twin[v] in seen:
                continue
            seen.add(twin[v])
            search([2 * c + (1 if (c == colors[v] and u != v) else 0) for u, c in enumerate(colors)])

    if n == 0:
        return (), []
    search([0] * n)
    return best[0], best[1]


def canonical(G: Hypergraph) -> bytes:
    """Canonical byte string: invariant under relabeling, distinct for non-isomorphic graphs."""
    cert, _ = canonical_labeling(G)
    body = ";".join(",".join(str(v + 1) for v in e) for e in cert)
    return f"{G.r}|{G.n}|{body}".encode()


def canonical_form(G: Hypergraph) -> Hypergraph:
    """The canonical representative, as a labeled hypergraph."""
    cert, _ = canonical_labeling(G)
    return Hypergraph(G.r, G.n, tuple(tuple(v + 1 for v in e) for e in cert))


def from_canonical(key: bytes | str) -> Hypergraph:
    if isinstance(key, bytes):
        key = key.decode()
    r, n, body = key.split("|")
    edges = [tuple(int(v) for v in chunk.split(",")) for chunk in body.split(";") if chunk]
    return Hypergraph(int(r), int(n), tuple(edges))


def is_isomorphic(G: Hypergraph, H: Hypergraph) -> bool:
    if G.r != H.r:
        raise HypergraphError(f"uniformity mismatch: {G.r} vs {H.r}")
    if G.n != H.n or len(G) != len(H) or sorted(G.degrees[1:]) != sorted(H.degrees[1:]):
        return False
    return canonical(G) == canonical(H)
