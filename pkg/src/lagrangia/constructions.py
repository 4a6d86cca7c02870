"""Named r-graph constructions and a small string syntax for them.

Spec strings are colon separated, kind first::

    complete:3:5            K_5^3
    matching:3:2            M_2^3 (edges 123, 456)
    linear-star:3:2         L_2^3 (centre 1, edges 123, 145)
    turan-blowup:3:5:12     T_5^3(12)
    F-family:2:1:6          F_{2,1}(6), a 2-graph
    G4:7                    G_4(7), a 3-graph (G0..G4)
    extension:6:matching:3:2    H_6 of M_2^3 (p first, then the base spec)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, prod

from .hypergraph import Hypergraph, HypergraphError, blowup

KINDS = ("complete", "matching", "linear-star", "turan-blowup", "F-family", "G0", "G1", "G2", "G3", "G4", "extension")


def complete(r: int, p: int) -> Hypergraph:
    if r < 1 or p < 0:
        raise HypergraphError(f"invalid complete graph parameters r={r}, p={p}")
    return Hypergraph(r, p, tuple(combinations(range(1, p + 1), r)))


def matching(r: int, t: int) -> Hypergraph:
    if r < 2 or t < 0:
        raise HypergraphError(f"invalid matching parameters r={r}, t={t}")
    edges = [tuple(range(k * r + 1, (k + 1) * r + 1)) for k in range(t)]
    return Hypergraph(r, r * t, tuple(edges))


def linear_star(r: int, t: int) -> Hypergraph:
    """t edges through vertex 1, pairwise disjoint elsewhere."""
    if r < 2 or t < 1:
        raise HypergraphError(f"invalid linear star parameters r={r}, t={t}")
    edges = [(1,) + tuple(range(2 + k * (r - 1), 2 + (k + 1) * (r - 1))) for k in range(t)]
    return Hypergraph(r, 1 + t * (r - 1), tuple(edges))


def balanced_parts(m: int, n: int) -> list[int]:
    """Part sizes of a balanced m-partition of n, smaller parts first."""
    q, rem = divmod(n, m)
    return [q] * (m - rem) + [q + 1] * rem


def turan_blowup(r: int, m: int, n: int) -> Hypergraph:
    """T_m^r(n): balanced blowup of K_m^r on n vertices."""
    if not (r >= 2 and m >= r and n >= m):
        raise HypergraphError(f"turan blowup needs n >= m >= r >= 2, got r={r}, m={m}, n={n}")
    return blowup(complete(r, m), balanced_parts(m, n))


def turan_count(r: int, m: int, n: int) -> int:
    """Edge count of T_m^r(n): elementary symmetric polynomial of the part sizes."""
    if not (r >= 2 and m >= r and n >= m):
        raise HypergraphError(f"turan count needs n >= m >= r >= 2, got r={r}, m={m}, n={n}")
    return sum(prod(c) for c in combinations(balanced_parts(m, n), r))


def extension(F: Hypergraph, p: int) -> Hypergraph:
    """H_p^F: pad F to a core of p vertices, then cover each uncovered core pair.

    Each uncovered pair {a, b} (lexicographic order) receives r-2 fresh vertices
    B_ab, labeled after the core, and the edge {a, b} plus B_ab.
    """
    if p < F.n:
        raise HypergraphError(f"core size p={p} is smaller than |V(F)|={F.n}")
    r = F.r
    if r < 2:
        raise HypergraphError("extensions need r >= 2")
    edges = list(F.edges)
    nxt = p + 1
    for a, b in combinations(range(1, p + 1), 2):
        if (a, b) in F.shadow:
            continue
        fresh = tuple(range(nxt, nxt + r - 2))
        nxt += r - 2
        edges.append((a, b) + fresh)
    return Hypergraph(r, nxt - 1, tuple(edges))


def family_F(t: int, ell: int, n: int) -> Hypergraph:
    """The 2-graph K on [2t-1-ell] plus all pairs ab with a <= ell < 2t-ell <= b <= n."""
    if t < 2 or not 0 <= ell <= t - 1 or n < 2 * t:
        raise HypergraphError(f"F-family needs t >= 2, 0 <= ell <= t-1, n >= 2t; got t={t}, ell={ell}, n={n}")
    edges = list(combinations(range(1, 2 * t - ell), 2))
    edges += [(a, b) for a in range(1, ell + 1) for b in range(2 * t - ell, n + 1)]
    return Hypergraph(2, n, tuple(edges))


def family_G(k: int, n: int) -> Hypergraph:
    """The five left-compressed intersecting 3-graphs G_0(n)..G_4(n)."""
    if k not in range(5) or n < 5:
        raise HypergraphError(f"G-family needs k in 0..4 and n >= 5; got k={k}, n={n}")
    V = range(1, n + 1)
    if k == 0:
        edges = [(1, i, j) for i, j in combinations(range(2, n + 1), 2)]
    elif k == 1:
        edges = [(1, 2, i) for i in range(3, n + 1)]
        edges += [(1, 3, 4), (1, 3, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 4, 5)]
    elif k == 2:
        edges = list(combinations(range(1, 5), 3))
        edges += [(1, a, i) for a in (2, 3, 4) for i in V if i >= 5]
    elif k == 3:
        edges = [(1, 2, i) for i in range(3, n + 1)] + [(1, 3, i) for i in range(4, n + 1)]
        edges += [(2, 3, 4), (2, 3, 5), (1, 4, 5)]
    else:
        edges = [(1, 2, i) for i in range(3, n + 1)]
        edges += [(a, 3, i) for a in (1, 2) for i in range(4, n + 1)]
    return Hypergraph(3, n, tuple(edges))


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]
    base: FamilySpec | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise HypergraphError(f"unknown family kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        arity = {"complete": 2, "matching": 2, "linear-star": 2, "turan-blowup": 3, "F-family": 3, "extension": 1}
        want = arity.get(self.kind, 1)
        if len(self.params) != want:
            raise HypergraphError(f"{self.kind} takes {want} integer parameters, got {len(self.params)}")
        if (self.kind == "extension") != (self.base is not None):
            raise HypergraphError("extension specs (and only those) carry a base spec")

    def __str__(self) -> str:
        head = ":".join([self.kind, *map(str, self.params)])
        return f"{head}:{self.base}" if self.base else head

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        parts = text.strip().split(":")
        kind = parts[0]
        try:
            if kind == "extension":
                return cls(kind, (int(parts[1]),), cls.parse(":".join(parts[2:])))
            return cls(kind, tuple(int(p) for p in parts[1:]))
        except (IndexError, ValueError):
            raise HypergraphError(f"cannot parse family spec {text!r}") from None

    def realize(self) -> Hypergraph:
        return construct(self)


def construct(spec: FamilySpec | str) -> Hypergraph:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    k, p = spec.kind, spec.params
    if k == "complete":
        return complete(*p)
    if k == "matching":
        return matching(*p)
    if k == "linear-star":
        return linear_star(*p)
    if k == "turan-blowup":
        return turan_blowup(*p)
    if k == "F-family":
        return family_F(*p)
    if k == "extension":
        return extension(construct(spec.base), p[0])
    return family_G(int(k[1]), p[0])


def falling(m: int, r: int) -> int:
    """[m]_r = m (m-1) ... (m-r+1)."""
    return prod(range(m - r + 1, m + 1)) if r > 0 else 1


def complete_edge_count(r: int, p: int) -> int:
    return comb(p, r)
