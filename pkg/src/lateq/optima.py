"""Optimizer sets, weakly ascending correspondences and monotone fixed points."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

from .errors import NotMonotone, NotWeaklyAscending, SelectionSearchFailed
from .functions import LatticeFunction, Prop, check_unary_property, level_set
from .lattice import (HOLDS, FiniteLattice, FinitePoset, Subset, Verdict,
                      chain_predicates, is_quasisublattice)


def argopt(f: LatticeFunction, mode: str = "min") -> Subset:
    if mode not in ("min", "max"):
        raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")
    best = min(f.values) if mode == "min" else max(f.values)
    return Subset(f.domain, frozenset(x for x, v in zip(f.domain.elements, f.values)
                                      if v == best))


class ExtremumVariant(str, enum.Enum):
    """Which extremality result to check; see ``_VARIANTS`` for the ingredients."""

    THM_3_2 = "THM_3_2"
    COR_3_3_1 = "COR_3_3_1"
    COR_3_3_2 = "COR_3_3_2"
    COR_3_3_3 = "COR_3_3_3"


# property, optimisation mode, level-set direction, chain condition, extremal-element condition
_VARIANTS = {
    ExtremumVariant.THM_3_2: (Prop.MEET_SUBEXT, "min", "<=",
                              "chain_complete_down", "admits_maximal"),
    ExtremumVariant.COR_3_3_1: (Prop.JOIN_SUBEXT, "min", "<=",
                                "chain_complete_up", "admits_minimal"),
    ExtremumVariant.COR_3_3_2: (Prop.MEET_SUPEREXT, "max", ">=",
                                "chain_complete_down", "admits_maximal"),
    ExtremumVariant.COR_3_3_3: (Prop.JOIN_SUPEREXT, "max", ">=",
                                "chain_complete_up", "admits_minimal"),
}


@dataclass(frozen=True)
class ExtremumReport:
    variant: ExtremumVariant
    hypotheses: dict
    optimizers: Subset
    conclusion: Verdict

    @property
    def hypotheses_hold(self) -> bool:
        return all(bool(v) for v in self.hypotheses.values())


def verify_extremum_structure(f: LatticeFunction, variant="THM_3_2") -> ExtremumReport:
    """Check the hypotheses and the conclusion of an extremality result for ``f``.

    The conclusion (optimizer set nonempty and a quasisublattice) is evaluated
    whether or not the hypotheses hold.  Level-set conditions run over every
    codomain threshold; empty level sets are vacuous.
    """
    variant = ExtremumVariant(str(getattr(variant, "value", variant)).upper())
    prop, mode, direction, chain_cond, extremal_cond = _VARIANTS[variant]
    level_ok = True
    level_witness = None
    for t in f.codomain:
        s = level_set(f, t, direction)
        if not s.members:
            continue
        rep = chain_predicates(f.domain, s)
        if not (getattr(rep, chain_cond) and getattr(rep, extremal_cond)):
            level_ok = False
            level_witness = (t,)
            break
    hyps = {
        "nonempty_lattice": Verdict(len(f.domain) > 0),
        prop.value: check_unary_property(f, prop),
        "level_sets": Verdict(level_ok, level_witness,
                              detail={"note": "trivially satisfied: finite"}),
    }
    opt = argopt(f, mode)
    if not opt.members:
        conclusion = Verdict(False, (), "empty")
    else:
        conclusion = is_quasisublattice(f.domain, opt)
    return ExtremumReport(variant, hyps, opt, conclusion)


# -- correspondences -------------------------------------------------------------

class Correspondence:
    """A map from a finite poset into nonempty subsets of a finite lattice."""

    def __init__(self, source: FinitePoset, target: FiniteLattice,
                 values: Mapping[Hashable, Iterable]):
        self.source = source
        self.target = target
        vals = {}
        for t in source.elements:
            if t not in values:
                raise ValueError(f"no value at {t!r}")
            members = frozenset(values[t])
            if not members:
                raise ValueError(f"empty value at {t!r}")
            bad = [y for y in members if y not in target]
            if bad:
                raise ValueError(f"{bad!r} not in the target lattice")
            vals[t] = members
        self.values = vals

    def __call__(self, t) -> frozenset:
        return self.values[t]

    def __repr__(self):
        return f"Correspondence({self.values!r})"


def is_weakly_ascending(F: Correspondence) -> Verdict:
    """For ``x < x'``: ``y ∨ y' ∈ F(x')`` or ``y ∧ y' ∈ F(x)``, for all ``y``, ``y'``."""
    S, L = F.source, F.target
    idx = L.index
    sets = [frozenset(idx[y] for y in F.values[t]) for t in S.elements]
    ordered = [sorted(s) for s in sets]
    for a, b in S.strict_pairs:
        low, high = sets[a], sets[b]
        for y in ordered[a]:
            for y2 in ordered[b]:
                if L.join_idx(y, y2) not in high and L.meet_idx(y, y2) not in low:
                    return Verdict(False, (S.elements[a], S.elements[b],
                                           L.elements[y], L.elements[y2]))
    return HOLDS


@dataclass(frozen=True)
class Selection:
    correspondence: Correspondence
    mapping: dict = field(hash=False)

    def __call__(self, t):
        return self.mapping[t]

    def check(self) -> Verdict:
        """Membership and monotonicity, re-derived from scratch."""
        F = self.correspondence
        for t in F.source.elements:
            if self.mapping[t] not in F(t):
                return Verdict(False, (t,), "membership")
        for a, b in F.source.strict_pairs:
            s, s2 = F.source.elements[a], F.source.elements[b]
            if not F.target.leq(self.mapping[s], self.mapping[s2]):
                return Verdict(False, (s, s2), "increasing")
        return HOLDS


def _tiebreak_order(L: FiniteLattice) -> list[int]:
    return list(L.linear_extension)


def increasing_selection(F: Correspondence, *, check: bool = True) -> Selection:
    """A deterministic increasing selection of a weakly ascending correspondence.

    Sources are visited along a linear extension; each takes the first
    candidate (in a linear extension of the target) lying above every value
    already chosen below it.  Forward checking prunes candidates of later
    sources and the search backtracks on dead ends, so it is complete: it
    fails only if no increasing selection exists at all.
    """
    if check:
        v = is_weakly_ascending(F)
        if not v:
            raise NotWeaklyAscending(v.witness)
    S, L = F.source, F.target
    n = len(S)
    rank = {i: r for r, i in enumerate(_tiebreak_order(L))}
    domains = [sorted((L.index[y] for y in F.values[S.elements[t]]), key=rank.__getitem__)
               for t in range(n)]
    order = list(S.linear_extension)
    above = [[u for u in range(n) if u != t and S.leq_idx(t, u)] for t in range(n)]
    chosen = [None] * n

    def search(k, doms):
        if k == n:
            return True
        t = order[k]
        for y in doms[t]:
            new = list(doms)
            ok = True
            for u in above[t]:
                if chosen[u] is None:
                    pruned = [z for z in new[u] if L.leq_idx(y, z)]
                    if not pruned:
                        ok = False
                        break
                    new[u] = pruned
            if not ok:
                continue
            chosen[t] = y
            if search(k + 1, new):
                return True
            chosen[t] = None
        return False

    if not search(0, domains):
        raise SelectionSearchFailed("no increasing selection exists")
    mapping = {S.elements[t]: L.elements[chosen[t]] for t in range(n)}
    return Selection(F, mapping)


def all_increasing_selections(F: Correspondence):
    """Brute-force generator over every increasing selection (oracle for tests)."""
    import itertools

    S = F.source
    srcs = S.elements
    choices = [sorted(F(t), key=F.target.index.__getitem__) for t in srcs]
    for combo in itertools.product(*choices):
        m = dict(zip(srcs, combo))
        if all(F.target.leq(m[srcs[a]], m[srcs[b]]) for a, b in S.strict_pairs):
            yield Selection(F, m)


# -- fixed points ----------------------------------------------------------------------

def _as_map(lattice: FiniteLattice, g) -> Callable:
    if isinstance(g, Mapping):
        return g.__getitem__
    return g


def check_monotone(lattice: FinitePoset, g) -> Verdict:
    g = _as_map(lattice, g)
    idx = lattice.index
    img = [idx[g(x)] for x in lattice.elements]
    for a, b in lattice.strict_pairs:
        if not lattice.leq_idx(img[a], img[b]):
            return Verdict(False, (lattice.elements[a], lattice.elements[b]))
    return HOLDS


def tarski_iterates(lattice: FiniteLattice, g, direction: str = "least", *,
                    validate: bool = True):
    """Yield ``b, g(b), g(g(b)), ...`` from the bottom (or top) until it repeats.

    The last value yielded is the least (greatest) fixed point.
    """
    if direction not in ("least", "greatest"):
        raise ValueError(f"direction must be 'least' or 'greatest', got {direction!r}")
    gm = _as_map(lattice, g)
    if validate:
        v = check_monotone(lattice, gm)
        if not v:
            raise NotMonotone(v.witness)
    x = lattice.bottom if direction == "least" else lattice.top
    yield x
    while True:
        y = gm(x)
        if y == x:
            return
        x = y
        yield x


def tarski_fixed_points(lattice: FiniteLattice, g, direction: str = "least", *,
                        validate: bool = True):
    x = None
    for x in tarski_iterates(lattice, g, direction, validate=validate):
        pass
    return x


def fixed_points(lattice: FinitePoset, g) -> list:
    gm = _as_map(lattice, g)
    return [x for x in lattice.elements if gm(x) == x]
