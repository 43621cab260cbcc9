"""Crossing conditions for maps ``f: X x T -> C``.

``X`` is a finite lattice (own strategies), ``T`` any finite poset (opponent
profiles), ``C`` an integer chain.  All conditions quantify over ``x < x'``
in ``X`` and ``t < t'`` in ``T``.
"""

from __future__ import annotations

import enum
from typing import Mapping

from .errors import UnknownProperty
from .lattice import HOLDS, FiniteLattice, FinitePoset, Verdict


class CrossingProp(str, enum.Enum):
    SINGLE_CROSSING = "SINGLE_CROSSING"
    MODULAR_CROSSING = "MODULAR_CROSSING"
    UPPER_CROSSING = "UPPER_CROSSING"
    LOWER_CROSSING = "LOWER_CROSSING"

    def __str__(self):
        return self.value


def as_crossing_prop(p) -> CrossingProp:
    try:
        return p if isinstance(p, CrossingProp) else CrossingProp(str(p).upper())
    except ValueError:
        raise UnknownProperty(f"unknown crossing property {p!r}") from None


class TwoVarFunction:
    """A total map on ``xdomain x tdomain`` with integer values."""

    def __init__(self, xdomain: FiniteLattice, tdomain: FinitePoset, codomain,
                 values: Mapping):
        self.xdomain = xdomain
        self.tdomain = tdomain
        self.codomain = (tuple(range(codomain)) if isinstance(codomain, int)
                         else tuple(sorted(set(codomain))))
        nx, nt = len(xdomain), len(tdomain)
        table = [[None] * nt for _ in range(nx)]
        for (x, t), v in values.items():
            table[xdomain.index[x]][tdomain.index[t]] = v
        missing = [(xdomain.elements[i], tdomain.elements[j])
                   for i in range(nx) for j in range(nt) if table[i][j] is None]
        if missing:
            raise ValueError(f"no value at {missing[:3]!r}")
        cod = set(self.codomain)
        if any(v not in cod for row in table for v in row):
            raise ValueError("values lie outside the codomain")
        self.table = tuple(tuple(row) for row in table)

    def __call__(self, x, t):
        return self.table[self.xdomain.index[x]][self.tdomain.index[t]]

    def reversed(self, x: bool = True, t: bool = True, c: bool = False) -> TwoVarFunction:
        """The same map read on opposite domains and/or an opposite codomain."""
        xd = self.xdomain.opposite() if x else self.xdomain
        td = self.tdomain.opposite() if t else self.tdomain
        sign = -1 if c else 1
        vals = {(a, b): sign * self(a, b) for a in self.xdomain for b in self.tdomain}
        return TwoVarFunction(xd, td, [sign * v for v in self.codomain], vals)


def _quad_failure(p, f, above, below, i, i2, j, j2):
    """``None`` if the condition holds at ``x_i < x_i2``, ``t_j < t_j2``; else a Verdict."""
    tab = f.table
    row, row2 = tab[i], tab[i2]
    lo_t = row2[j] - row[j]       # gain from x -> x' at t
    hi_t = row2[j2] - row[j2]     # gain from x -> x' at t'
    xs, ts = f.xdomain.elements, f.tdomain.elements
    quad = (xs[i], xs[i2], ts[j], ts[j2])
    if p is CrossingProp.MODULAR_CROSSING or p is CrossingProp.SINGLE_CROSSING:
        if lo_t >= 0 and hi_t < 0:
            return Verdict(False, quad, "weak")
        if p is CrossingProp.SINGLE_CROSSING and lo_t > 0 and hi_t <= 0:
            return Verdict(False, quad, "strict")
    elif p is CrossingProp.UPPER_CROSSING:
        if lo_t >= 0:
            base = row[j2]
            if not any(base <= tab[u][j2] for u in above[i2]):
                return Verdict(False, quad, "upper", {"searched": len(above[i2])})
    else:
        # order dual of upper-crossing (X and T reversed): if x is weakly
        # preferred to x' at t', something below x weakly beats x' at t
        if hi_t <= 0:
            target = row2[j]
            if not any(tab[v][j] >= target for v in below[i]):
                return Verdict(False, quad, "lower", {"searched": len(below[i])})
    return None


def _neighbourhoods(X):
    nx = len(X)
    above = [[u for u in range(nx) if X.leq_idx(i, u)] for i in range(nx)]
    below = [[v for v in range(nx) if X.leq_idx(v, i)] for i in range(nx)]
    return above, below


def check_crossing(f: TwoVarFunction, p) -> Verdict:
    """Decide a crossing property; the witness is the quadruple ``(x, x', t, t')``.

    For the existential conditions a failed witness also records how many
    candidates were searched.
    """
    p = as_crossing_prop(p)
    above, below = _neighbourhoods(f.xdomain)
    for i, i2 in f.xdomain.strict_pairs:
        for j, j2 in f.tdomain.strict_pairs:
            bad = _quad_failure(p, f, above, below, i, i2, j, j2)
            if bad is not None:
                return bad
    return HOLDS


def crossing_fails_at(f: TwoVarFunction, p, x, x2, t, t2) -> bool:
    """Re-check one witness quadruple; requires ``x < x2`` and ``t < t2``."""
    p = as_crossing_prop(p)
    X, T = f.xdomain, f.tdomain
    if not (X.lt(x, x2) and T.lt(t, t2)):
        return False
    above, below = _neighbourhoods(X)
    return _quad_failure(p, f, above, below, X.index[x], X.index[x2],
                         T.index[t], T.index[t2]) is not None
