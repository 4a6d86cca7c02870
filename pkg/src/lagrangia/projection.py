"""Euclidean projections onto the simplex and the capped simplex.

Both operate row-wise on 2-D arrays; the 1-D public wrappers accept and return
plain vectors.
"""

from __future__ import annotations

import numpy as np


class InfeasibleError(ValueError):
    """The capped simplex {x >= 0, sum x = 1, x <= b} is empty (n * b < 1)."""


def _simplex_rows(V: np.ndarray) -> np.ndarray:
    n = V.shape[1]
    U = -np.sort(-V, axis=1)
    css = np.cumsum(U, axis=1) - 1.0
    ind = np.arange(1, n + 1)
    rho = np.count_nonzero(U - css / ind > 0, axis=1)
    theta = css[np.arange(V.shape[0]), rho - 1] / rho
    return np.maximum(V - theta[:, None], 0.0)


def _box_rows(V: np.ndarray, b: float) -> np.ndarray:
    """Clip(v - tau, 0, b) with tau chosen so each row sums to one.

    The row sum is piecewise linear and non-increasing in tau with breakpoints
    at v_i and v_i - b; tau is interpolated on the bracketing segment, then
    recomputed exactly from the resulting free/capped split.
    """
    K = V.shape[0]
    T = np.sort(np.concatenate([V - b, V], axis=1), axis=1)
    S = np.clip(V[:, None, :] - T[:, :, None], 0.0, b).sum(axis=2)
    k = np.clip((S >= 1.0).sum(axis=1) - 1, 0, T.shape[1] - 2)
    rows = np.arange(K)
    lo, hi = T[rows, k], T[rows, k + 1]
    s_lo, s_hi = S[rows, k], S[rows, k + 1]
    drop = s_lo - s_hi
    frac = np.where(drop > 0, (s_lo - 1.0) / np.where(drop > 0, drop, 1.0), 0.0)
    tau = lo + frac * (hi - lo)
    Y = V - tau[:, None]
    free = (Y > 0.0) & (Y < b)
    capped = Y >= b
    nfree = free.sum(axis=1)
    # exact threshold for the detected active sets
    rows = nfree > 0
    if np.any(rows):
        ncap = capped.sum(axis=1)
        vsum = np.where(free, V, 0.0).sum(axis=1)
        exact = (vsum - (1.0 - b * ncap)) / np.maximum(nfree, 1)
        tau = np.where(rows, exact, tau)
    return np.clip(V - tau[:, None], 0.0, b)


def project_rows(V: np.ndarray, b: float | None = None) -> np.ndarray:
    if b is None or b >= 1.0:
        return _simplex_rows(V)
    return _box_rows(V, b)


def project_simplex(v) -> np.ndarray:
    """Nearest point of {x >= 0, sum x = 1} (sorted-threshold method)."""
    v = np.asarray(v, dtype=float)
    return _simplex_rows(v[None, :])[0]


def project_simplex_box(v, b) -> np.ndarray:
    """Nearest point of {0 <= x <= b, sum x = 1}; raises InfeasibleError if n * b < 1."""
    v = np.asarray(v, dtype=float)
    n = v.shape[0]
    if n * float(b) < 1.0 - 1e-12:
        raise InfeasibleError(f"no weight vector on {n} vertices is {b}-bounded")
    if float(b) >= 1.0:
        return project_simplex(v)
    return _box_rows(v[None, :], float(b))[0]
