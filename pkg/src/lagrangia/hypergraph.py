"""Immutable r-uniform hypergraphs on the vertex set 1..n and set-system operators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    """Raised for malformed hypergraph input or invalid operator arguments."""


@dataclass(frozen=True)
class Hypergraph:
    """An r-graph on vertices 1..n.

    ``edges`` is normalized on construction: every edge becomes a sorted tuple,
    duplicates are dropped and the edge list is sorted lexicographically, so two
    hypergraphs compare equal exactly when (r, n, edge set) agree.
    """

    r: int
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.r < 1:
            raise HypergraphError(f"uniformity must be positive, got {self.r}")
        if self.n < 0:
            raise HypergraphError(f"vertex count must be nonnegative, got {self.n}")
        norm = set()
        for raw in self.edges:
            e = tuple(sorted(int(v) for v in raw))
            if len(e) != self.r or len(set(e)) != self.r:
                raise HypergraphError(f"edge {tuple(raw)} does not have {self.r} distinct vertices")
            if e[0] < 1 or e[-1] > self.n:
                raise HypergraphError(f"edge {tuple(raw)}: vertex out of range 1..{self.n}")
            norm.add(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edge_set

    def __repr__(self) -> str:
        body = ", ".join("".join(map(str, e)) if self.n < 10 else "-".join(map(str, e)) for e in self.edges)
        return f"Hypergraph(r={self.r}, n={self.n}, {{{body}}})"

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        """Degree of every vertex; index 0 is unused so ``degrees[v]`` works."""
        deg = [0] * (self.n + 1)
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def shadow(self) -> frozenset[tuple[int, int]]:
        """All covered pairs (i, j) with i < j."""
        pairs = set()
        for e in self.edges:
            pairs.update(combinations(e, 2))
        return frozenset(pairs)

    @cached_property
    def links(self) -> tuple[frozenset[Edge], ...]:
        """``links[v]`` is the link of v as a set of sorted (r-1)-tuples."""
        out = [set() for _ in range(self.n + 1)]
        for e in self.edges:
            for k, v in enumerate(e):
                out[v].add(e[:k] + e[k + 1:])
        return tuple(frozenset(s) for s in out)

    def is_isolated(self, v: int) -> bool:
        return self.degrees[v] == 0


def build(r: int, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate and normalize an r-graph on 1..n."""
    if r < 2:
        raise HypergraphError(f"uniformity must be at least 2, got {r}")
    return Hypergraph(r, n, tuple(tuple(e) for e in edges))


def _check_vertices(G: Hypergraph, vs: Iterable[int]) -> list[int]:
    vs = sorted(set(vs))
    for v in vs:
        if not 1 <= v <= G.n:
            raise HypergraphError(f"vertex {v} out of range 1..{G.n}")
    return vs


def induced_map(G: Hypergraph, vertices: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Induced subgraph on ``vertices``, relabeled 1..k by increasing label.

    Returns the subgraph and the map old label -> new label.
    """
    keep = _check_vertices(G, vertices)
    relabel = {v: i + 1 for i, v in enumerate(keep)}
    edges = [tuple(relabel[v] for v in e) for e in G.edges if all(v in relabel for v in e)]
    return Hypergraph(G.r, len(keep), tuple(edges)), relabel


def induced(G: Hypergraph, vertices: Iterable[int]) -> Hypergraph:
    return induced_map(G, vertices)[0]


def delete_vertices(G: Hypergraph, vertices: Iterable[int]) -> Hypergraph:
    drop = set(vertices)
    return induced(G, [v for v in G.vertices if v not in drop])


def incident_edges(G: Hypergraph, v: int) -> tuple[Edge, ...]:
    return tuple(e for e in G.edges if v in e)


def link(G: Hypergraph, S: Iterable[int] = ()) -> Hypergraph:
    """Link of the vertex set S, as an (r-|S|)-graph on V(G) minus S (relabeled)."""
    S = set(_check_vertices(G, S))
    if len(S) >= G.r:
        raise HypergraphError(f"link set of size {len(S)} must be smaller than r={G.r}")
    if not S:
        return G
    rest = [v for v in G.vertices if v not in S]
    relabel = {v: i + 1 for i, v in enumerate(rest)}
    edges = [tuple(relabel[v] for v in e if v not in S) for e in G.edges if S.issubset(e)]
    return Hypergraph(G.r - len(S), len(rest), tuple(edges))


def link_diff(G: Hypergraph, j: int, i: int) -> frozenset[Edge]:
    """(r-1)-sets f avoiding {i, j} with f+j an edge and f+i not an edge."""
    if i == j:
        raise HypergraphError("link_diff needs two distinct vertices")
    _check_vertices(G, (i, j))
    Li, Lj = G.links[i], G.links[j]
    return frozenset(f for f in Lj if i not in f and f not in Li)


def compress(G: Hypergraph, i: int, j: int) -> Hypergraph:
    """Shift every edge of j's exclusive link from j onto i."""
    moved = link_diff(G, j, i)
    if not moved:
        return G
    gone = {tuple(sorted(f + (j,))) for f in moved}
    new = [tuple(sorted(f + (i,))) for f in moved]
    edges = [e for e in G.edges if e not in gone] + new
    return Hypergraph(G.r, G.n, tuple(edges))


def covers_pair(G: Hypergraph, i: int, j: int) -> bool:
    if i == j:
        raise HypergraphError("a pair needs two distinct vertices")
    return (min(i, j), max(i, j)) in G.shadow


def covers_pairs(G: Hypergraph) -> bool:
    return len(G.shadow) == G.n * (G.n - 1) // 2


def is_left_compressed(G: Hypergraph, order: Sequence[int] | None = None) -> bool:
    """True iff compress(G, i, j) == G for all i before j in ``order``.

    ``order`` lists the vertices from first to last; default is 1 < 2 < ... < n.
    """
    order = list(G.vertices) if order is None else list(order)
    if sorted(order) != list(G.vertices):
        raise HypergraphError("order must be a permutation of the vertex set")
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if link_diff(G, order[b], order[a]):
                return False
    return True


def blowup(L: Hypergraph, part_sizes: Sequence[int]) -> Hypergraph:
    """Replace vertex k of L by a class of ``part_sizes[k-1]`` vertices.

    Classes are consecutive label blocks in the order of L's vertices.
    """
    if len(part_sizes) != L.n:
        raise HypergraphError(f"need {L.n} part sizes, got {len(part_sizes)}")
    if any(s < 0 for s in part_sizes):
        raise HypergraphError("part sizes must be nonnegative")
    parts, start = [], 1
    for s in part_sizes:
        parts.append(range(start, start + s))
        start += s
    edges = []
    for e in L.edges:
        edges.extend(product(*(parts[v - 1] for v in e)))
    return Hypergraph(L.r, start - 1, tuple(edges))


def relabel(G: Hypergraph, perm: Mapping[int, int] | Sequence[int]) -> Hypergraph:
    """Apply a vertex bijection. A sequence ``perm`` maps vertex v to ``perm[v-1]``."""
    if not isinstance(perm, Mapping):
        perm = {v: perm[v - 1] for v in G.vertices}
    if sorted(perm[v] for v in G.vertices) != list(G.vertices):
        raise HypergraphError("relabeling must be a permutation of the vertex set")
    return Hypergraph(G.r, G.n, tuple(tuple(perm[v] for v in e) for e in G.edges))


def remove_isolated(G: Hypergraph) -> Hypergraph:
    return induced(G, [v for v in G.vertices if G.degrees[v]])


def s_value(G: Hypergraph) -> int:
    """Sum of all vertex labels over all edges; strictly drops under a nontrivial compress(i, j), i < j."""
    return sum(sum(e) for e in G.edges)


def is_twin_pair(G: Hypergraph, u: int, v: int) -> bool:
    """True iff swapping u and v is an automorphism, i.e. both exclusive links are empty."""
    Lu, Lv = G.links[u], G.links[v]
    return all(v in f or f in Lv for f in Lu) and all(u in f or f in Lu for f in Lv)


def twin_representatives(G: Hypergraph) -> list[int]:
    """``rep[v]`` is the smallest vertex u with swap(u, v) an automorphism (index 0 unused).

    Swap-twinness is an equivalence relation: (u w) = (u v)(v w)(u v).
    """
    rep = list(range(G.n + 1))
    for u in G.vertices:
        if rep[u] != u:
            continue
        for v in range(u + 1, G.n + 1):
            if rep[v] == v and is_twin_pair(G, u, v):
                rep[v] = u
    return rep


def twin_classes(G: Hypergraph) -> list[list[int]]:
    classes: dict[int, list[int]] = {}
    for v, u in enumerate(twin_representatives(G)[1:], 1):
        classes.setdefault(u, []).append(v)
    return list(classes.values())


def add_isolated(G: Hypergraph, k: int) -> Hypergraph:
    return Hypergraph(G.r, G.n + k, G.edges)


def is_subgraph(H: Hypergraph, G: Hypergraph) -> bool:
    """Labeled containment: same uniformity, V(H) within V(G), E(H) within E(G)."""
    return H.r == G.r and H.n <= G.n and H.edge_set <= G.edge_set


# ---------------------------------------------------------------- .hg format

def dumps(G: Hypergraph) -> str:
    lines = [f"{G.r} {G.n}"]
    lines.extend(" ".join(map(str, e)) for e in G.edges)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Hypergraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise HypergraphError(f"line {lineno}: expected integers, got {raw!r}") from None
        if header is None:
            if len(nums) != 2:
                raise HypergraphError(f"line {lineno}: header must be 'r n'")
            header = nums
        else:
            edges.append(nums)
    if header is None:
        raise HypergraphError("missing 'r n' header")
    return build(header[0], header[1], edges)


def read_hg(path) -> Hypergraph:
    with open(path) as fh:
        return loads(fh.read())


def write_hg(G: Hypergraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(G))
