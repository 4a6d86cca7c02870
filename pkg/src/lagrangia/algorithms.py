"""Compression to a fixpoint, dense-and-compressed reduction, symmetrization with cleaning.

Every procedure returns a trace that replays to the same output, so runs can be
audited step by step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Callable, NamedTuple, Sequence

from .detection import Density, contains_weak_extension, is_dense
from .hypergraph import Hypergraph, compress, induced, link_diff
from .lagrangian import OptimizerConfig, maximize

log = logging.getLogger(__name__)

SUPPORT_TOL = 1e-9


class AlgorithmError(RuntimeError):
    """A procedure hit its iteration cap or a trace failed to replay."""


# ------------------------------------------------------------ compression


@dataclass(frozen=True)
class Step:
    """One logged move. ``args`` holds the move's parameters in the graph's current labels."""

    op: str
    args: tuple
    before: int
    after: int

    def to_json(self) -> dict:
        return {"op": self.op, "args": [list(a) if isinstance(a, tuple) else a for a in self.args],
                "before": self.before, "after": self.after}


@dataclass
class CompressionTrace:
    """Ordered moves: ``compress`` (i, j), ``take-dense-subgraph`` (kept vertices) or ``recompute-optimum``.

    ``before``/``after`` hold the termination metric: the rank-weighted s-value
    for compressions, the vertex count for subgraph steps. ``labels`` maps the
    final vertices back to the input's labels.
    """

    steps: list[Step] = field(default_factory=list)
    labels: tuple[int, ...] = ()
    violations: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def moves(self, op: str | None = None) -> list[Step]:
        return [s for s in self.steps if op is None or s.op == op]

    def replay(self, G: Hypergraph) -> Hypergraph:
        for s in self.steps:
            if s.op == "compress":
                G = compress(G, *s.args)
            elif s.op == "take-dense-subgraph":
                G = induced(G, s.args[0])
        return G

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps], "labels": list(self.labels),
                "violations": list(self.violations)}


def weight_order(x: Sequence, tol: float = 0.0) -> list[int]:
    """Vertices by decreasing weight, ties (within ``tol``) broken by smaller label."""
    order = sorted(range(1, len(x) + 1), key=lambda v: (-x[v - 1], v))
    if tol <= 0:
        return order
    # merge near-equal weights into one block, then sort each block by label
    out, block = [], [order[0]] if order else []
    for v in order[1:]:
        if x[block[-1] - 1] - x[v - 1] <= tol:
            block.append(v)
        else:
            out.extend(sorted(block))
            block = [v]
    out.extend(sorted(block))
    return out


def _ranked_s(G: Hypergraph, rank: dict[int, int]) -> int:
    return sum(rank[v] for e in G.edges for v in e)


def _first_violation(G: Hypergraph, order: list[int], strict: Sequence | None = None):
    """A pair (i, j), i before j in ``order``, with a nonempty L(j minus i).

    i is the earliest such vertex in the order and j the latest partner of i.
    With ``strict`` (the weights) only pairs with x_i > x_j qualify.
    """
    for a, i in enumerate(order):
        for j in reversed(order[a + 1:]):
            if strict is not None and not strict[i - 1] > strict[j - 1]:
                continue
            if link_diff(G, j, i):
                return i, j
    return None


def left_compress_to_fixpoint(G: Hypergraph, x: Sequence, max_steps: int | None = None) -> tuple[Hypergraph, CompressionTrace]:
    """Compress every pair i, j with x_i > x_j and L(j minus i) nonempty until none is left.

    Each step takes the heaviest i that has a violating partner, paired with its
    lightest such partner j (weight ties by label). Each step strictly lowers the
    s-value computed with weight ranks.
    """
    if len(x) != G.n:
        raise ValueError(f"weight vector has length {len(x)}, graph has {G.n} vertices")
    order = weight_order(x)
    rank = {v: k + 1 for k, v in enumerate(order)}
    trace = CompressionTrace(labels=tuple(G.vertices))
    cap = max_steps if max_steps is not None else _ranked_s(G, rank) + 1
    for _ in range(cap):
        pair = _first_violation(G, order, strict=x)
        if pair is None:
            return G, trace
        before = _ranked_s(G, rank)
        G = compress(G, *pair)
        trace.steps.append(Step("compress", pair, before, _ranked_s(G, rank)))
    if _first_violation(G, order, strict=x) is None:
        return G, trace
    raise AlgorithmError(f"compression did not settle within {cap} steps")


# ---------------------------------------------------- dense compressed subgraph


class DenseResult(NamedTuple):
    graph: Hypergraph
    witness: tuple[float, ...]
    trace: CompressionTrace


def _shrink_to_dense(G: Hypergraph, labels: list[int], trace: CompressionTrace,
                     cfg: OptimizerConfig, tol: float) -> tuple[Hypergraph, list[int], tuple[float, ...]]:
    """Step 1: drop zero-weight vertices of an optimum, then vertices whose removal keeps the value."""
    while True:
        res = maximize(G, cfg)
        keep = [v for v in G.vertices if res.witness[v - 1] > SUPPORT_TOL]
        if keep and len(keep) < G.n:
            H = induced(G, keep)
            if maximize(H, cfg).value >= res.value - tol:
                trace.steps.append(Step("take-dense-subgraph", (tuple(keep),), G.n, len(keep)))
                labels = [labels[v - 1] for v in keep]
                G = H
                continue
        check = is_dense(G, engine=lambda g: maximize(g, cfg).value, tol=tol)
        if check.status is Density.DENSE or G.n <= G.r:
            return G, labels, res.witness
        # drop the vertex with the smallest loss (smallest label on ties)
        v = min(check.gaps, key=lambda u: (check.gaps[u], u))
        if check.gaps[v] > tol:
            return G, labels, res.witness
        keep = [u for u in G.vertices if u != v]
        trace.steps.append(Step("take-dense-subgraph", (tuple(keep),), G.n, len(keep)))
        labels = [labels[u - 1] for u in keep]
        G = induced(G, keep)


def dense_compressed_subgraph(G: Hypergraph, config: OptimizerConfig | None = None, tol: float = 1e-7,
                              family: Callable[[Hypergraph], bool] | None = None,
                              max_rounds: int = 1000) -> DenseResult:
    """Alternate between shrinking to a dense subgraph and one compression toward the optimum.

    The result is dense (up to ``tol``), carries an optimum witness ``y`` and is
    left-compressed relative to the weight order of ``y`` (near-equal weights form
    one block ordered by label). ``family`` is checked after every phase; any
    failure is recorded in ``trace.violations`` rather than assumed away.
    """
    cfg = config or OptimizerConfig()
    trace = CompressionTrace()
    labels = list(G.vertices)

    def audit(H: Hypergraph, where: str):
        if family is not None and not family(H):
            trace.violations.append(where)

    if not G.edges:
        empty = induced(G, [])
        if G.n:
            trace.steps.append(Step("take-dense-subgraph", ((),), G.n, 0))
        trace.labels = ()
        return DenseResult(empty, (), trace)

    for round_ in range(max_rounds):
        G, labels, y = _shrink_to_dense(G, labels, trace, cfg, tol)
        audit(G, f"round {round_}: after dense step")
        trace.steps.append(Step("recompute-optimum", (), G.n, G.n))
        order = weight_order(y, tol=SUPPORT_TOL)
        pair = _first_violation(G, order)
        if pair is None:
            trace.labels = tuple(labels)
            return DenseResult(G, tuple(y), trace)
        rank = {v: k + 1 for k, v in enumerate(order)}
        before = _ranked_s(G, rank)
        G = compress(G, *pair)
        trace.steps.append(Step("compress", pair, before, _ranked_s(G, rank)))
        audit(G, f"round {round_}: after compress{pair}")
    raise AlgorithmError(f"no dense compressed subgraph after {max_rounds} rounds")


# ------------------------------------------------- symmetrization / cleaning


@dataclass
class SymmetrizationTrace:
    """Ordered ``symmetrize`` and ``clean`` moves in the input's labels.

    symmetrize: args = (moved class, target u), before/after = edge counts.
    clean: args = (deleted vertex,), before/after = edge counts; ``min_degree``
    records the minimum degree seen when the vertex was chosen.
    """

    steps: list[dict] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, G: Hypergraph) -> "Hypergraph":
        state = _State.of(G)
        for s in self.steps:
            if s["op"] == "symmetrize":
                state.symmetrize(s["class"], s["target"])
            else:
                state.delete(s["vertex"])
        return state.graph()

    def to_json(self) -> dict:
        return {"steps": self.steps, "violations": self.violations}


@dataclass
class _State:
    r: int
    alive: list[int]
    edges: set[frozenset]

    @classmethod
    def of(cls, G: Hypergraph) -> "_State":
        return cls(G.r, list(G.vertices), {frozenset(e) for e in G.edges})

    def degree(self) -> dict[int, int]:
        d = dict.fromkeys(self.alive, 0)
        for e in self.edges:
            for v in e:
                d[v] += 1
        return d

    def link(self, v: int) -> frozenset:
        return frozenset(e - {v} for e in self.edges if v in e)

    def adjacent(self) -> set[frozenset]:
        pairs = set()
        for e in self.edges:
            for u in e:
                for w in e:
                    if u < w:
                        pairs.add(frozenset((u, w)))
        return pairs

    def classes(self) -> dict[int, tuple[int, ...]]:
        """Vertex -> its class of vertices with an identical link."""
        groups: dict[frozenset, list[int]] = {}
        for v in self.alive:
            groups.setdefault(self.link(v), []).append(v)
        out = {}
        for members in groups.values():
            for v in members:
                out[v] = tuple(members)
        return out

    def symmetrize(self, cls: Sequence[int], u: int) -> None:
        Lu = self.link(u)
        moved = set(cls)
        self.edges = {e for e in self.edges if not moved & e}
        for w in cls:
            self.edges.update(f | {w} for f in Lu)

    def delete(self, z: int) -> None:
        self.alive.remove(z)
        self.edges = {e for e in self.edges if z not in e}

    def is_alpha_dense(self, alpha) -> bool:
        if not self.edges:
            return False
        need = alpha * comb(len(self.alive) - 1, self.r - 1)
        return min(self.degree().values()) >= need

    def graph(self) -> Hypergraph:
        pos = {v: k + 1 for k, v in enumerate(self.alive)}
        return Hypergraph(self.r, len(self.alive), tuple(tuple(pos[v] for v in e) for e in self.edges))


class SymmetrizationResult(NamedTuple):
    graph: Hypergraph
    removed: list[tuple[int, ...]]
    trace: SymmetrizationTrace
    labels: tuple[int, ...] = ()


def is_alpha_dense(G: Hypergraph, alpha) -> bool:
    """Minimum degree at least alpha * C(n-1, r-1); a graph without edges never qualifies."""
    return _State.of(G).is_alpha_dense(alpha)


def _pick_pair(state: _State, cls: dict, adj: set, deg: dict):
    """Nonadjacent, nonequivalent (u, v) with d(u) >= d(v): larger degrees first, then smaller labels."""
    by_deg = sorted(state.alive, key=lambda v: (-deg[v], v))
    for a, u in enumerate(by_deg):
        for v in by_deg[a + 1:]:
            if v in cls[u] or frozenset((u, v)) in adj:
                continue
            return u, v
    return None


def symmetrize_and_clean(G: Hypergraph, alpha, forbidden: tuple[Hypergraph, int] | None = None,
                         max_rounds: int | None = None) -> SymmetrizationResult:
    """Symmetrization and cleaning with density threshold ``alpha``.

    Each round moves the class of v onto the link of a nonadjacent, nonequivalent
    u of at least the same degree, then deletes minimum-degree vertices until the
    graph is alpha-dense or has no vertices left. A graph without edges counts as
    empty, so it is cleaned away completely. When ``forbidden`` = (F, p) is given,
    every intermediate graph is tested for a weak extension of F with core size p
    and hits are recorded in ``trace.violations``.
    """
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    state = _State.of(G)
    trace = SymmetrizationTrace()
    removed: list[tuple[int, ...]] = []
    cap = max_rounds if max_rounds is not None else 4 * G.n * G.n + 4

    def audit(where: str):
        if forbidden is not None and state.edges:
            F, p = forbidden
            if contains_weak_extension(state.graph(), F, p):
                trace.violations.append(where)

    def clean(u_class=(), moved=()) -> None:
        Z = []
        while state.alive and not state.is_alpha_dense(alpha):
            deg = state.degree()
            z = min(state.alive, key=lambda w: (deg[w], w))
            low = deg[z]
            if z in u_class:
                pending = [w for w in moved if w in state.alive]
                if pending:
                    z = pending[0]
            before = len(state.edges)
            state.delete(z)
            Z.append(z)
            trace.steps.append({"op": "clean", "vertex": z, "min_degree": low,
                                "before": before, "after": len(state.edges)})
        if Z:
            removed.append(tuple(Z))

    audit("input")
    # the input itself may be below the threshold
    clean()
    for round_ in range(cap):
        if not state.edges:
            break
        cls = state.classes()
        adj = state.adjacent()
        deg = state.degree()
        pair = _pick_pair(state, cls, adj, deg)
        if pair is None:
            break
        u, v = pair
        moved = cls[v]
        before = len(state.edges)
        state.symmetrize(moved, u)
        trace.steps.append({"op": "symmetrize", "class": list(moved), "target": u,
                            "before": before, "after": len(state.edges)})
        clean(set(cls[u]), moved)
        audit(f"round {round_}")
    else:
        if state.edges and _pick_pair(state, state.classes(), state.adjacent(), state.degree()):
            raise AlgorithmError(f"symmetrization did not finish within {cap} rounds")
    if not state.edges and state.alive:
        Z = list(state.alive)
        for z in Z:
            trace.steps.append({"op": "clean", "vertex": z, "min_degree": 0, "before": 0, "after": 0})
            state.delete(z)
        removed.append(tuple(Z))
    return SymmetrizationResult(state.graph(), removed, trace, tuple(state.alive))


def class_representatives(G: Hypergraph) -> list[int]:
    """One vertex (the smallest) from every class of vertices with identical links."""
    seen, reps = set(), []
    for v in G.vertices:
        key = G.links[v]
        if key not in seen:
            seen.add(key)
            reps.append(v)
    return reps


__all__ = [
    "AlgorithmError", "CompressionTrace", "DenseResult", "Step", "SymmetrizationResult",
    "SymmetrizationTrace", "class_representatives", "dense_compressed_subgraph", "is_alpha_dense",
    "left_compress_to_fixpoint", "symmetrize_and_clean", "weight_order",
]
