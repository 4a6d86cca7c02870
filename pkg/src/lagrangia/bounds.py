"""Closed-form values and upper-bound formulas, evaluated in exact rationals.

Each formula is registered under a descriptive name together with its
parameter domain; ``closed_form(name, **params)`` validates the domain first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .constructions import falling, turan_count


class DomainError(ValueError):
    """Parameters outside the formula's domain."""


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] for quantities that are only known numerically."""

    lo: float
    hi: float

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class BoundFormula:
    name: str
    params: tuple[str, ...]
    check: Callable[..., str | None]
    evaluate: Callable[..., Fraction | Interval]
    about: str


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _int(**kw) -> str | None:
    for k, v in kw.items():
        if not isinstance(v, int):
            return f"{k} must be an integer"
    return None


# ---- domains


def _dom_complete(r, m):
    return _int(r=r, m=m) or (None if r >= 1 and m >= 1 else "need r >= 1 and m >= 1")


def _dom_ms(t):
    return _int(t=t) or (None if t >= 1 else "need t >= 1")


def _dom_turan(r, m, n):
    return _int(r=r, m=m, n=n) or (None if n >= m >= r >= 2 else "need n >= m >= r >= 2")


def _dom_falling(m, r):
    return _int(m=m, r=r) or (None if r >= 0 else "need r >= 0")


def _dom_t2(t):
    return _int(t=t) or (None if t >= 2 else "need t >= 2")


def _dom_f_family(t, ell, b):
    if err := _int(t=t, ell=ell):
        return err
    if t < 2 or not 1 <= ell <= t - 1:
        return "need t >= 2 and 1 <= ell <= t - 1"
    if not 0 < _q(b) <= Fraction(1, t):
        return "need 0 < b <= 1/t"
    return None


def _dom_star(b):
    return None if 0 < _q(b) <= Fraction(1, 3) else "need 0 < b <= 1/3"


def _dom_intersecting(b):
    return None if 0 < _q(b) <= Fraction(1, 5) else "need 0 < b <= 1/5"


def _dom_capped(t, b):
    if err := _int(t=t):
        return err
    if t < 3 or not 0 < _q(b) < Fraction(1, 3 * t - 1):
        return "need t >= 3 and 0 < b < 1/(3t-1)"
    return None


def _dom_matching_free(t, b):
    if err := _int(t=t):
        return err
    if t < 3 or not 0 < _q(b) <= Fraction(1, 3 * t - 1):
        return "need t >= 3 and 0 < b <= 1/(3t-1)"
    return None


def _dom_gap(t, near_complete):
    if err := _dom_t2(t):
        return err
    return None if near_complete is not None else "need the numerical value of K_{3t-1}^3 minus one edge"


# ---- formulas


def _complete(r, m):
    return Fraction(comb(m, r), m ** r)


def _ms(t):
    return Fraction(t - 1, 2 * t)


def _f_family(t, ell, b):
    b = _q(b)
    return comb(2 * t - 1 - 2 * ell, 2) * b * b + ell * b - Fraction(ell * ell + ell, 2) * b * b


def _star(b):
    b = _q(b)
    return b * (1 - b) ** 2 / 2


def _intersecting(b):
    b = _q(b)
    return max(b * (1 - b) ** 2 / 2, b * b + 4 * b ** 3)


def _capped(t, b):
    b = _q(b)
    return Fraction(t - 1, 2) * b * (1 - 3 * b + 4 * b * b)


def _matching_free(t, b):
    b = _q(b)
    return Fraction(t - 1, 2) * b * (1 - 3 * b + 6 * b * b)


def gap_term(t: int) -> Fraction:
    """The explicit second term of the matching-free stability gap, with s = 3t - 4."""
    s = 3 * t - 4
    return Fraction(9 * s**4 + 15 * s**3 - 30 * s**2 - 12 * s + 8,
                    6 * (2 * s * s + 3 * s - 2) ** 2 * (s + 3) ** 2)


def _gap(t, near_complete, tol=1e-9):
    """min{lambda(K) - lambda(K minus an edge), explicit term} as an interval.

    ``near_complete`` is the numerical Lagrangian of K_{3t-1}^3 minus one edge,
    trusted to within ``tol``.
    """
    full = float(_complete(3, 3 * t - 1))
    term = float(gap_term(t))
    lo = min(full - float(near_complete) - tol, term)
    hi = min(full - float(near_complete) + tol, term)
    return Interval(lo, hi)


FORMULAS: dict[str, BoundFormula] = {f.name: f for f in [
    BoundFormula("complete-lagrangian", ("r", "m"), _dom_complete, _complete,
                 "Lagrangian of K_m^r: C(m,r)/m^r"),
    BoundFormula("motzkin-straus", ("t",), _dom_ms, _ms,
                 "Lagrangian of K_t^2: (1 - 1/t)/2"),
    BoundFormula("turan-count", ("r", "m", "n"), _dom_turan, lambda r, m, n: Fraction(turan_count(r, m, n)),
                 "edge count of the balanced blowup T_m^r(n)"),
    BoundFormula("falling-factorial", ("m", "r"), _dom_falling, lambda m, r: Fraction(falling(m, r)),
                 "[m]_r = m(m-1)...(m-r+1)"),
    BoundFormula("density-matching-3", ("t",), _dom_t2,
                 lambda t: Fraction(falling(3 * t - 1, 3), (3 * t - 1) ** 3),
                 "Lagrangian density of M_t^3: [3t-1]_3/(3t-1)^3"),
    BoundFormula("density-linear-star-3", ("t",), _dom_t2,
                 lambda t: Fraction(falling(2 * t, 3), (2 * t) ** 3),
                 "Lagrangian density of L_t^3: [2t]_3/(2t)^3"),
    BoundFormula("density-linear-star-4", ("t",), _dom_t2,
                 lambda t: Fraction(falling(3 * t, 4), (3 * t) ** 4),
                 "Lagrangian density of L_t^4: 4! lambda(K_3t^4) = [3t]_4/(3t)^4"),
    BoundFormula("f-family-bounded", ("t", "ell", "b"), _dom_f_family, _f_family,
                 "b-bounded Lagrangian of F_{t,ell}(n) is at most C(2t-1-2ell,2)b^2 + ell*b - (ell^2+ell)b^2/2"),
    BoundFormula("star-bounded", ("b",), _dom_star, _star,
                 "b-bounded Lagrangian of a 3-uniform star is at most b(1-b)^2/2"),
    BoundFormula("intersecting-bounded", ("b",), _dom_intersecting, _intersecting,
                 "b-bounded Lagrangian of an M_2^3-free 3-graph is at most max{b(1-b)^2/2, b^2+4b^3}"),
    BoundFormula("almost-all-capped", ("t", "b"), _dom_capped, _capped,
                 "M_t^3-free, all but one weight equal to b: at most (t-1)/2 b(1-3b+4b^2)"),
    BoundFormula("matching-free-bounded", ("t", "b"), _dom_matching_free, _matching_free,
                 "b-bounded Lagrangian of an M_t^3-free 3-graph on >= 3t vertices is at most (t-1)/2 b(1-3b+6b^2)"),
    BoundFormula("matching-gap-c1", ("t", "near_complete"), _dom_gap, _gap,
                 "stability gap c1(t) for M_t^3-free 3-graphs, as an interval"),
]}


def closed_form(name: str, **params):
    """Evaluate a named formula; exact Fraction for rational input (an Interval for the gap)."""
    try:
        f = FORMULAS[name]
    except KeyError:
        raise DomainError(f"unknown formula {name!r}; known: {', '.join(sorted(FORMULAS))}") from None
    missing = [p for p in f.params if p not in params]
    extra = [p for p in params if p not in f.params and p != "tol"]
    if missing or extra:
        raise DomainError(f"{name} takes parameters {f.params}, got {sorted(params)}")
    args = {p: params[p] for p in f.params}
    if err := f.check(**args):
        raise DomainError(f"{name}: {err}")
    if "tol" in params:
        args["tol"] = params["tol"]
    return f.evaluate(**args)
