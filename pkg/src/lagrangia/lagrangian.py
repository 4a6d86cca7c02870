"""Lagrangian of an r-graph: evaluation, gradient, KKT residual and maximization.

The Lagrangian polynomial is sum over edges of the product of edge weights. It is
maximized over the simplex (or the b-capped simplex) by multi-start projected
gradient ascent with Armijo backtracking; all starts advance together as rows of
one array. Results are lower bounds on the true maximum that come with a KKT
residual; for 2-graphs the exact value is available from the clique number.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Sequence

import numpy as np

from .detection import clique_number
from .hypergraph import Hypergraph, HypergraphError, twin_classes
from .projection import project_rows

log = logging.getLogger(__name__)

SUPPORT_EPS = 1e-10


# ------------------------------------------------------------- evaluation


def _is_exact(x) -> bool:
    return all(isinstance(v, Rational) for v in x)


def _check_length(G: Hypergraph, x) -> None:
    if len(x) != G.n:
        raise HypergraphError(f"weight vector has length {len(x)}, graph has {G.n} vertices")


def evaluate(G: Hypergraph, x: Sequence) -> Fraction | float:
    """Sum over edges of the product of their weights; exact for rational input."""
    _check_length(G, x)
    if _is_exact(x):
        total = Fraction(0)
        for e in G.edges:
            term = Fraction(1)
            for v in e:
                term *= x[v - 1]
            total += term
        return total
    return float(_Poly(G).values(np.asarray(x, dtype=float)[None, :])[0])


def gradient(G: Hypergraph, x: Sequence) -> list:
    """Partial derivatives: entry i sums, over edges through i, the product of the other weights."""
    _check_length(G, x)
    if _is_exact(x):
        g = [Fraction(0)] * G.n
        for e in G.edges:
            for v in e:
                term = Fraction(1)
                for w in e:
                    if w != v:
                        term *= x[w - 1]
                g[v - 1] += term
        return g
    return list(_Poly(G).grads(np.asarray(x, dtype=float)[None, :])[0])


class _Poly:
    """Vectorized evaluation over a batch of weight vectors (one per row)."""

    def __init__(self, G: Hypergraph):
        self.n, self.r = G.n, G.r
        self.E = np.array(G.edges, dtype=np.intp).reshape(-1, G.r) - 1
        flat = self.E.ravel()
        self.order = np.argsort(flat, kind="stable")
        verts, starts = np.unique(flat[self.order], return_index=True)
        self.verts, self.starts = verts, starts

    def values(self, X: np.ndarray) -> np.ndarray:
        if self.E.shape[0] == 0:
            return np.zeros(X.shape[0])
        return X[:, self.E].prod(axis=2).sum(axis=1)

    def grads(self, X: np.ndarray) -> np.ndarray:
        K = X.shape[0]
        out = np.zeros((K, self.n))
        if self.E.shape[0] == 0:
            return out
        P = X[:, self.E]
        C = np.empty_like(P)
        pre = np.ones(P.shape[:2])
        for k in range(self.r):
            C[:, :, k] = pre
            pre = pre * P[:, :, k]
        suf = np.ones(P.shape[:2])
        for k in range(self.r - 1, -1, -1):
            C[:, :, k] *= suf
            suf = suf * P[:, :, k]
        flat = C.reshape(K, -1)[:, self.order]
        out[:, self.verts] = np.add.reduceat(flat, self.starts, axis=1)
        return out


# ---------------------------------------------------------------- KKT


def _kkt_rows(X: np.ndarray, F: np.ndarray, Gr: np.ndarray, r: int, b: float | None) -> np.ndarray:
    zero = X <= SUPPORT_EPS
    if b is None or b >= 1.0:
        mu = r * F[:, None]
        free_dev = np.where(~zero, np.abs(Gr - mu), 0.0).max(axis=1, initial=0.0)
        zero_dev = np.where(zero, np.maximum(Gr - mu, 0.0), 0.0).max(axis=1, initial=0.0)
        return free_dev + zero_dev
    capped = (X >= b - SUPPORT_EPS) & ~zero
    free = ~zero & ~capped
    out = np.empty(X.shape[0])
    for k in range(X.shape[0]):
        g = Gr[k]
        hi_zero = g[zero[k]].max(initial=-np.inf)
        lo_cap = g[capped[k]].min(initial=np.inf)
        if free[k].any():
            mu = g[free[k]].mean()
            dev = np.abs(g[free[k]] - mu).max()
            out[k] = dev + max(0.0, hi_zero - mu) + max(0.0, mu - lo_cap)
        else:
            out[k] = max(0.0, hi_zero - lo_cap)
    return out


def _kkt_exact(G: Hypergraph, x: list, b: Fraction | None) -> Fraction:
    g = gradient(G, x)
    zero = [k for k, v in enumerate(x) if v == 0]
    if b is None or b >= 1:
        mu = G.r * evaluate(G, x)
        free_dev = max((abs(g[k] - mu) for k, v in enumerate(x) if v != 0), default=Fraction(0))
        zero_dev = max((max(g[k] - mu, Fraction(0)) for k in zero), default=Fraction(0))
        return free_dev + zero_dev
    capped = [k for k, v in enumerate(x) if v == b]
    free = [k for k, v in enumerate(x) if 0 < v < b]
    hi_zero = max((g[k] for k in zero), default=None)
    lo_cap = min((g[k] for k in capped), default=None)
    if free:
        mu = sum(g[k] for k in free) / len(free)
        dev = max(abs(g[k] - mu) for k in free)
        dev += max(Fraction(0), hi_zero - mu) if hi_zero is not None else 0
        dev += max(Fraction(0), mu - lo_cap) if lo_cap is not None else 0
        return dev
    if hi_zero is None or lo_cap is None:
        return Fraction(0)
    return max(Fraction(0), hi_zero - lo_cap)


def kkt_residual(G: Hypergraph, x: Sequence, b=None) -> float:
    """Violation of the first-order optimality conditions at a feasible x.

    Plain mode: max deviation of the partial derivative from r * lambda on the
    support, plus the largest excess over r * lambda off the support. Capped mode:
    the common multiplier is the mean derivative over free coordinates; capped
    coordinates must have derivative at least that value, zero coordinates at most.
    Rational input is evaluated exactly.
    """
    _check_length(G, x)
    if G.n == 0:
        return 0.0
    if _is_exact(x):
        return float(_kkt_exact(G, list(x), None if b is None else Fraction(b)))
    X = np.asarray([float(v) for v in x])[None, :]
    P = _Poly(G)
    bf = None if b is None else float(b)
    return float(_kkt_rows(X, P.values(X), P.grads(X), G.r, bf)[0])


# --------------------------------------------------------- symmetry moves


def symmetrize_uncovered(G: Hypergraph, x: Sequence) -> list:
    """Average the weights within every class of swap-twins (empty exclusive links).

    Repeated pairwise averaging of twins never lowers the Lagrangian and converges
    to the class means, so the means are taken directly. Caps are preserved since
    a mean of values at most b is at most b. Exact for rational input.
    """
    _check_length(G, x)
    exact = _is_exact(x)
    y = list(x)
    for cls in twin_classes(G):
        if len(cls) < 2:
            continue
        vals = [x[v - 1] for v in cls]
        if all(v == vals[0] for v in vals):
            continue
        mean = sum(vals, Fraction(0)) / len(vals) if exact else float(np.mean(vals))
        for v in cls:
            y[v - 1] = mean
    if not exact and evaluate(G, y) < evaluate(G, x):
        return list(x)
    return y


def saturate_caps(G: Hypergraph, x: Sequence, b) -> list:
    """Shift weight across uncovered pairs with both weights below b.

    For an uncovered pair the Lagrangian is linear along x_u + x_v = const, so
    moving all possible weight to the endpoint with the larger derivative does
    not decrease it. Repeats until every uncovered pair has an endpoint at the
    cap or at zero.
    """
    b = float(b)
    y = np.asarray([float(v) for v in x])
    P = _Poly(G)
    for _ in range(G.n * G.n):
        g = P.grads(y[None, :])[0]
        moved = False
        live = [v for v in range(G.n) if SUPPORT_EPS < y[v] < b - SUPPORT_EPS]
        for a in range(len(live)):
            for c in range(a + 1, len(live)):
                u, v = live[a], live[c]
                if (u + 1, v + 1) in G.shadow:
                    continue
                if g[u] < g[v]:
                    u, v = v, u
                shift = min(b - y[u], y[v])
                y[u] += shift
                y[v] -= shift
                moved = True
                break
            if moved:
                break
        if not moved:
            break
    return list(y)


# -------------------------------------------------------------- optimizer


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 50
    max_iterations: int = 10_000
    step: str = "armijo"
    tol: float = 1e-14
    kkt_tol: float = 1e-10
    seed: int = 0
    armijo: float = 1e-4
    stall: int = 8

    def __post_init__(self):
        if self.restarts < 0 or self.max_iterations <= 0 or self.tol <= 0 or self.kkt_tol <= 0:
            raise ValueError("optimizer settings must be positive")
        if self.step != "armijo":
            raise ValueError(f"unknown step rule {self.step!r}")


@dataclass(frozen=True)
class LagrangianResult:
    value: float
    witness: tuple[float, ...]
    kkt_residual: float
    restarts: int
    bounded_by: Fraction | None = None
    seed: int = 0
    infeasible: bool = False

    def to_json(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness)
        d["bounded_by"] = None if self.bounded_by is None else str(self.bounded_by)
        return d


def _starts(G: Hypergraph, cfg: OptimizerConfig) -> np.ndarray:
    n = G.n
    rows = [np.full(n, 1.0 / n)]
    for e in G.edges:
        x = np.full(n, 0.2 / n)
        x[np.asarray(e) - 1] += 0.8 / G.r
        rows.append(x)
    rng = np.random.default_rng(cfg.seed)
    if cfg.restarts:
        rows.extend(rng.dirichlet(np.full(n, 0.5), size=cfg.restarts))
    return np.vstack(rows)


def _drop_followers(X: np.ndarray, F: np.ndarray, active: np.ndarray, done: np.ndarray,
                    radius: float = 1e-2) -> None:
    """Deactivate rows that trail a converged row closely; they are creeping toward the same point."""
    conv = np.flatnonzero(done)
    idx = np.flatnonzero(active)
    if conv.size == 0 or idx.size == 0:
        return
    dist = np.abs(X[idx, None, :] - X[None, conv, :]).max(axis=2)
    below = F[idx, None] <= F[None, conv]
    active[idx[(below & (dist < radius)).any(axis=1)]] = False


def _ascend(P: _Poly, X: np.ndarray, b: float | None, cfg: OptimizerConfig) -> tuple[np.ndarray, np.ndarray]:
    K = X.shape[0]
    F = P.values(X)
    t = np.ones(K)
    active = np.ones(K, dtype=bool)
    quiet = np.zeros(K, dtype=int)
    done = np.zeros(K, dtype=bool)
    window = F.copy()
    for it in range(cfg.max_iterations):
        if it % 32 == 31:
            # creeping along a flat face: under 1e-12 gained over the whole window
            active &= F - window >= 1e-12
            window = F.copy()
            _drop_followers(X, F, active, done)
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Xa, Fa, ta = X[idx], F[idx], t[idx]
        Ga = P.grads(Xa)
        Xn, Fn = Xa.copy(), Fa.copy()
        pending = np.arange(idx.size)
        for _ in range(60):
            Y = project_rows(Xa[pending] + ta[pending, None] * Ga[pending], b)
            fy = P.values(Y)
            D = Y - Xa[pending]
            ascent = np.einsum("ij,ij->i", Ga[pending], D)
            still = np.abs(D).max(axis=1) <= 1e-15
            ok = (fy >= Fa[pending] + cfg.armijo * ascent) | still
            Xn[pending[ok]] = np.where(still[ok, None], Xa[pending[ok]], Y[ok])
            Fn[pending[ok]] = np.where(still[ok], Fa[pending[ok]], fy[ok])
            pending = pending[~ok]
            if pending.size == 0:
                break
            ta[pending] *= 0.5
        gain = Fn - Fa
        X[idx], F[idx] = Xn, Fn
        t[idx] = np.minimum(ta * 2.0, 1e3)
        small = gain < cfg.tol
        quiet[idx] = np.where(small, quiet[idx] + 1, 0)
        if np.any(small):
            sm = idx[small]
            res = _kkt_rows(X[sm], F[sm], P.grads(X[sm]), P.r, b)
            stop = (res < cfg.kkt_tol) | (quiet[sm] >= cfg.stall)
            active[sm[stop]] = False
            done[sm[res < cfg.kkt_tol]] = True
    return X, F


def _hessian(G: Hypergraph, x: np.ndarray) -> np.ndarray:
    n, r = G.n, G.r
    H = np.zeros((n, n))
    E = np.array(G.edges, dtype=np.intp).reshape(-1, r) - 1
    if E.shape[0] == 0 or r < 2:
        return H
    P = x[E]
    for a in range(r):
        for c in range(a + 1, r):
            rest = [k for k in range(r) if k not in (a, c)]
            w = P[:, rest].prod(axis=1) if rest else np.ones(E.shape[0])
            np.add.at(H, (E[:, a], E[:, c]), w)
            np.add.at(H, (E[:, c], E[:, a]), w)
    return H


def _newton_polish(G: Hypergraph, P: _Poly, x: np.ndarray, b: float | None, iters: int = 12) -> np.ndarray:
    """Newton steps on the stationarity system restricted to the free coordinates.

    Free coordinates (strictly between 0 and the cap) are moved so that their
    partial derivatives agree while their total weight is unchanged. Stops as soon
    as a step would leave the feasible set or lower the value.
    """
    x = x.copy()
    fx = P.values(x[None, :])[0]
    for _ in range(iters):
        free = x > SUPPORT_EPS
        if b is not None:
            free &= x < b - SUPPORT_EPS
        Fi = np.flatnonzero(free)
        if Fi.size < 2:
            break
        g = P.grads(x[None, :])[0][Fi]
        H = _hessian(G, x)[np.ix_(Fi, Fi)]
        k = Fi.size
        A = np.zeros((k + 1, k + 1))
        A[:k, :k] = H
        A[:k, k] = -1.0
        A[k, :k] = 1.0
        rhs = np.concatenate([-g, [0.0]])
        sol = np.linalg.lstsq(A, rhs, rcond=None)[0]
        step = sol[:k]
        if np.abs(step).max() <= 1e-17:
            break
        y = x.copy()
        y[Fi] += step
        hi = 1.0 if b is None else b
        if y[Fi].min() <= 0.0 or y[Fi].max() >= hi + 1e-15:
            break
        fy = P.values(y[None, :])[0]
        if fy < fx - 1e-15:
            break
        x, fx = y, fy
    return x


def _best_row(X: np.ndarray, F: np.ndarray) -> int:
    top = F.max()
    ties = np.flatnonzero(F == top)
    if ties.size == 1:
        return int(ties[0])
    return int(min(ties, key=lambda k: tuple(X[k])))


def _solve(G: Hypergraph, cfg: OptimizerConfig, b: float | None) -> tuple[np.ndarray, float, float, int]:
    P = _Poly(G)
    X0 = _starts(G, cfg)
    if b is not None:
        X0 = project_rows(X0, b)
    X, F = _ascend(P, X0.copy(), b, cfg)
    x = X[_best_row(X, F)]
    # polish: twin averaging (and cap saturation when bounded), re-ascent, Newton
    y = np.asarray(symmetrize_uncovered(G, list(x)))
    if b is not None:
        y = np.asarray(saturate_caps(G, y, b))
    Y, _ = _ascend(P, project_rows(y[None, :], b), b, cfg)
    cands = [x, _newton_polish(G, P, x, b), Y[0], _newton_polish(G, P, Y[0], b)]
    vals = [float(P.values(c[None, :])[0]) for c in cands]
    res = [float(_kkt_rows(c[None, :], np.array([v]), P.grads(c[None, :]), G.r, b)[0]) for c, v in zip(cands, vals)]
    top = max(vals)
    k = min((k for k in range(len(cands)) if vals[k] >= top - 1e-13), key=lambda k: (res[k], -vals[k], k))
    return cands[k], vals[k], res[k], X0.shape[0]


def maximize(G: Hypergraph, config: OptimizerConfig | None = None) -> LagrangianResult:
    """Numerically maximize the Lagrangian over the simplex.

    The value is a lower bound on the true maximum, certified by the reported KKT
    residual; it is exact up to solver tolerance whenever the best start lands in
    the basin of a global maximizer.
    """
    cfg = config or OptimizerConfig()
    if G.n == 0:
        return LagrangianResult(0.0, (), 0.0, 0, None, cfg.seed)
    if not G.edges:
        x = tuple([1.0 / G.n] * G.n)
        return LagrangianResult(0.0, x, 0.0, 0, None, cfg.seed)
    x, fx, res, starts = _solve(G, cfg, None)
    return LagrangianResult(fx, tuple(float(v) for v in x), res, starts, None, cfg.seed)


def _as_fraction(b) -> Fraction:
    return b if isinstance(b, Fraction) else Fraction(b)


def maximize_bounded(G: Hypergraph, b, config: OptimizerConfig | None = None) -> LagrangianResult:
    """Maximize over weight vectors with every coordinate at most b.

    Returns value 0 with ``infeasible=True`` when n * b < 1.
    """
    bq = _as_fraction(b)
    if not 0 < bq <= 1:
        raise ValueError(f"cap b must lie in (0, 1], got {b}")
    cfg = config or OptimizerConfig()
    if G.n * bq < 1:
        return LagrangianResult(0.0, (), 0.0, 0, bq, cfg.seed, infeasible=True)
    bf = float(bq)
    if not G.edges:
        x = tuple([1.0 / G.n] * G.n)
        return LagrangianResult(0.0, x, 0.0, 0, bq, cfg.seed)
    x, fx, res, starts = _solve(G, cfg, None if bq == 1 else bf)
    return LagrangianResult(fx, tuple(float(v) for v in x), res, starts, bq, cfg.seed)


def lagrangian_value(G: Hypergraph, config: OptimizerConfig | None = None) -> float:
    """Best available value: exact for 2-graphs, numerical otherwise."""
    if G.r == 2:
        return float(motzkin_straus(G))
    return maximize(G, config).value


def motzkin_straus(G: Hypergraph) -> Fraction:
    """Exact Lagrangian of a 2-graph: (1 - 1/omega)/2 with omega the clique number."""
    if G.r != 2:
        raise HypergraphError(f"the clique formula needs a 2-graph, got r={G.r}")
    if not G.edges:
        return Fraction(0)
    w = clique_number(G)
    return Fraction(w - 1, 2 * w)


def complete_lagrangian(r: int, m: int) -> Fraction:
    """Lagrangian of K_m^r: C(m, r) / m^r, attained at the uniform vector."""
    return Fraction(comb(m, r), m ** r)


def check_weights(x: Sequence, b=None, tol: float = 1e-12) -> None:
    """Raise ValueError unless x is feasible (and b-bounded when b is given)."""
    if _is_exact(x):
        ok = all(v >= 0 for v in x) and sum(x) == 1 and (b is None or all(v <= b for v in x))
    else:
        arr = np.asarray(x, dtype=float)
        ok = bool(np.all(arr >= -tol) and abs(arr.sum() - 1.0) <= tol
                  and (b is None or np.all(arr <= float(b) + tol)))
    if not ok:
        raise ValueError("weight vector is not feasible")
