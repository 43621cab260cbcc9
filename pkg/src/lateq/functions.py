"""Chain-valued functions on finite lattices and their complementarity properties.

Every property below is a universally quantified statement over ordered pairs
``(x, y)`` of the domain that only looks at four numbers: ``f(x)``, ``f(y)``,
``f(x ∧ y)`` and ``f(x ∨ y)``.  Each is therefore stored as a list of named
clauses ``clause(fx, fy, fm, fj, codomain) -> bool``; a function has the
property iff every clause holds at every ordered pair.  Codomain chains are
sorted tuples of ints, so chain meet and join are ``min`` and ``max``.
"""

from __future__ import annotations

import enum
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BudgetExceeded, UnknownProperty
from .lattice import HOLDS, FiniteLattice, Subset, Verdict

DEFAULT_BUDGET = 10**7


class Prop(str, enum.Enum):
    QSM = "QSM"                    # quasisupermodular
    QSBM = "QSBM"                  # quasisubmodular
    WQSM = "WQSM"                  # weakly quasisupermodular
    PSM = "PSM"                    # pseudo-supermodular
    WPSM = "WPSM"                  # weakly pseudo-supermodular
    SUBEXT = "SUBEXT"
    SUPEREXT = "SUPEREXT"
    LAT_SUBEXT = "LAT_SUBEXT"
    LAT_SUPEREXT = "LAT_SUPEREXT"
    MEET_SUBEXT = "MEET_SUBEXT"
    JOIN_SUBEXT = "JOIN_SUBEXT"
    MEET_SUPEREXT = "MEET_SUPEREXT"
    JOIN_SUPEREXT = "JOIN_SUPEREXT"

    def __str__(self):
        return self.value


def as_prop(p) -> Prop:
    try:
        return p if isinstance(p, Prop) else Prop(str(p).upper())
    except ValueError:
        raise UnknownProperty(f"unknown property {p!r}") from None


def _lat_sub(fx, fy, fm, fj, cod):
    hi, lo = max(fm, fj), min(fm, fj)
    return any(hi <= max(fx, t) or lo <= min(fx, t) for t in cod if t < fy)


def _lat_super(fx, fy, fm, fj, cod):
    hi, lo = max(fm, fj), min(fm, fj)
    return any(hi >= max(fx, t) or lo >= min(fx, t) for t in cod if t > fy)


CLAUSES: dict[Prop, tuple[tuple[str, Callable], ...]] = {
    Prop.QSM: (
        ("weak", lambda fx, fy, fm, fj, c: not fx >= fm or fj >= fy),
        ("strict", lambda fx, fy, fm, fj, c: not fx > fm or fj > fy),
    ),
    Prop.QSBM: (
        ("weak", lambda fx, fy, fm, fj, c: not fx <= fm or fj <= fy),
        ("strict", lambda fx, fy, fm, fj, c: not fx < fm or fj < fy),
    ),
    Prop.WQSM: (
        ("meet", lambda fx, fy, fm, fj, c: not fm < fx or min(fx, fy) < fj),
        ("join", lambda fx, fy, fm, fj, c: not fj < fx or min(fx, fy) < fm),
    ),
    Prop.PSM: (
        ("weak", lambda fx, fy, fm, fj, c: not max(fx, fy) >= fm or fj >= min(fx, fy)),
        ("strict", lambda fx, fy, fm, fj, c: not max(fx, fy) > fm or fj > min(fx, fy)),
    ),
    Prop.WPSM: (
        ("main", lambda fx, fy, fm, fj, c: not fj < min(fx, fy) or fm > fx),
    ),
    Prop.SUBEXT: (
        ("main", lambda fx, fy, fm, fj, c:
            max(fm, fj) <= max(fx, fy) or min(fm, fj) <= min(fx, fy)),
    ),
    Prop.SUPEREXT: (
        ("main", lambda fx, fy, fm, fj, c:
            max(fm, fj) >= max(fx, fy) or min(fm, fj) >= min(fx, fy)),
    ),
    Prop.LAT_SUBEXT: (("main", _lat_sub),),
    Prop.LAT_SUPEREXT: (("main", _lat_super),),
    Prop.MEET_SUBEXT: (
        ("main", lambda fx, fy, fm, fj, c: fm <= fx or fj <= max(fx, fy)),
    ),
    Prop.MEET_SUPEREXT: (
        ("main", lambda fx, fy, fm, fj, c: fm >= fx or fj >= min(fx, fy)),
    ),
    Prop.JOIN_SUBEXT: (
        ("main", lambda fx, fy, fm, fj, c: fm <= max(fx, fy) or fj <= fx),
    ),
    Prop.JOIN_SUPEREXT: (
        ("main", lambda fx, fy, fm, fj, c: fm >= min(fx, fy) or fj >= fx),
    ),
}


def _as_codomain(codomain) -> tuple[int, ...]:
    if isinstance(codomain, int):
        return tuple(range(codomain))
    cod = tuple(sorted(set(int(c) for c in codomain)))
    if not cod:
        raise ValueError("empty codomain")
    return cod


class LatticeFunction:
    """A map from a finite lattice into a finite integer chain."""

    def __init__(self, domain: FiniteLattice, codomain: int | Iterable[int],
                 values: Mapping | Sequence[int]):
        self.domain = domain
        self.codomain = _as_codomain(codomain)
        if isinstance(values, Mapping):
            missing = [x for x in domain.elements if x not in values]
            if missing:
                raise ValueError(f"no value for elements {missing!r}")
            extra = [x for x in values if x not in domain]
            if extra:
                raise ValueError(f"values given for unknown elements {extra!r}")
            vals = tuple(values[x] for x in domain.elements)
        else:
            vals = tuple(values)
            if len(vals) != len(domain):
                raise ValueError("value sequence length does not match the domain")
        cod = set(self.codomain)
        bad = [v for v in vals if v not in cod]
        if bad:
            raise ValueError(f"values {bad!r} lie outside the codomain")
        self.values = vals

    def __call__(self, x):
        return self.values[self.domain.index[x]]

    def __eq__(self, other):
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.values == other.values)

    def __hash__(self):
        return hash((self.values, self.codomain))

    def __repr__(self):
        body = ", ".join(f"{x!r}: {v}" for x, v in zip(self.domain.elements, self.values))
        return f"LatticeFunction({{{body}}})"

    def as_dict(self) -> dict:
        return dict(zip(self.domain.elements, self.values))

    def on_opposite_domain(self) -> LatticeFunction:
        return LatticeFunction(self.domain.opposite(), self.codomain, self.values)

    def into_opposite_codomain(self) -> LatticeFunction:
        """Compose with the order reversal ``c -> -c`` of the codomain chain."""
        return LatticeFunction(self.domain, [-c for c in self.codomain],
                               [-v for v in self.values])

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))


def check_unary_property(f: LatticeFunction, p) -> Verdict:
    """Decide property ``p`` for ``f`` over all ordered pairs of the domain."""
    p = as_prop(p)
    clauses = CLAUSES[p]
    dom = f.domain
    v = f.values
    cod = f.codomain
    mt, jt = dom.meet_table, dom.join_table
    n = len(v)
    for i in range(n):
        fx = v[i]
        mrow, jrow = mt[i], jt[i]
        for j in range(n):
            fy, fm, fj = v[j], v[mrow[j]], v[jrow[j]]
            for name, clause in clauses:
                if not clause(fx, fy, fm, fj, cod):
                    return Verdict(False, (dom.elements[i], dom.elements[j]), name,
                                   {"f(x)": fx, "f(y)": fy, "f(x^y)": fm, "f(xvy)": fj})
    return HOLDS


def violates_at(f: LatticeFunction, p, x, y) -> bool:
    """Re-substitute a witness pair into the definition of ``p``."""
    p = as_prop(p)
    dom = f.domain
    args = (f(x), f(y), f(dom.meet(x, y)), f(dom.join(x, y)), f.codomain)
    return not all(clause(*args) for _, clause in CLAUSES[p])


def classify(f: LatticeFunction) -> frozenset[Prop]:
    return frozenset(p for p in Prop if check_unary_property(f, p))


@dataclass(frozen=True)
class EquivalenceReport:
    meet_subextremal: bool
    join_subextremal_on_opposite_domain: bool
    meet_superextremal_into_opposite_codomain: bool
    join_superextremal_both_opposite: bool

    @property
    def values(self):
        return (self.meet_subextremal, self.join_subextremal_on_opposite_domain,
                self.meet_superextremal_into_opposite_codomain,
                self.join_superextremal_both_opposite)

    @property
    def agree(self) -> bool:
        return len(set(self.values)) == 1


def check_equivalence_family(f: LatticeFunction) -> EquivalenceReport:
    """Evaluate the four dual forms of meet-subextremality independently."""
    return EquivalenceReport(
        bool(check_unary_property(f, Prop.MEET_SUBEXT)),
        bool(check_unary_property(f.on_opposite_domain(), Prop.JOIN_SUBEXT)),
        bool(check_unary_property(f.into_opposite_codomain(), Prop.MEET_SUPEREXT)),
        bool(check_unary_property(f.on_opposite_domain().into_opposite_codomain(),
                                  Prop.JOIN_SUPEREXT)),
    )


def level_set(f: LatticeFunction, t: int, direction: str = "<=") -> Subset:
    """``[f <= t]`` or ``[f >= t]`` as a subset of the domain."""
    if t not in f.codomain:
        raise ValueError(f"threshold {t!r} is not in the codomain")
    if direction in ("<=", "le", "≤"):
        keep = [x for x, v in zip(f.domain.elements, f.values) if v <= t]
    elif direction in (">=", "ge", "≥"):
        keep = [x for x, v in zip(f.domain.elements, f.values) if v >= t]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return Subset(f.domain, frozenset(keep))


# -- exhaustive enumeration ------------------------------------------------------

def function_space_size(domain: FiniteLattice, codomain_size: int) -> int:
    return codomain_size ** len(domain)


def iter_functions(domain: FiniteLattice, codomain_size: int, start: int = 0,
                   stop: int | None = None):
    """Functions ``domain -> {0..k-1}`` in row-major order.

    The first element of ``domain.elements`` is the most significant digit,
    so index ``i`` is the base-``k`` expansion of ``i``.
    """
    n = len(domain)
    total = codomain_size ** n
    stop = total if stop is None else min(stop, total)
    if start == 0 and stop == total:
        it = itertools.product(range(codomain_size), repeat=n)
    else:
        it = (function_digits(i, n, codomain_size) for i in range(start, stop))
    for vals in it:
        yield LatticeFunction(domain, codomain_size, vals)


def function_digits(index: int, n: int, k: int) -> tuple[int, ...]:
    digits = []
    for _ in range(n):
        index, d = divmod(index, k)
        digits.append(d)
    return tuple(reversed(digits))


def _props(spec) -> tuple[Prop, ...]:
    if isinstance(spec, (str, Prop)):
        return (as_prop(spec),)
    return tuple(as_prop(p) for p in spec)


def satisfies_all(f: LatticeFunction, props) -> bool:
    return all(check_unary_property(f, p) for p in _props(props))


@dataclass(frozen=True)
class ImplicationResult:
    premise: tuple[Prop, ...]
    conclusion: tuple[Prop, ...]
    confirmed: bool
    counterexample: LatticeFunction | None
    index: int | None
    examined: int

    def __bool__(self):
        return self.confirmed


def _first_counterexample(args):
    domain, k, premise, conclusion, start, stop = args
    for offset, f in enumerate(iter_functions(domain, k, start, stop)):
        if satisfies_all(f, premise) and not satisfies_all(f, conclusion):
            return start + offset
    return None


def verify_implication(p, q, domain: FiniteLattice, codomain_size: int, *,
                       budget: int | None = None, jobs: int = 1) -> ImplicationResult:
    """Enumerate all functions into ``{0..k-1}`` looking for ``p`` without ``q``.

    ``p`` and ``q`` are property ids or iterables of ids read as conjunctions.
    The counterexample returned is the first in enumeration order, whatever
    ``jobs`` is.
    """
    premise, conclusion = _props(p), _props(q)
    budget = default_budget() if budget is None else budget
    total = function_space_size(domain, codomain_size)
    if total > budget:
        raise BudgetExceeded(total, budget)
    if jobs <= 1:
        hit = _first_counterexample((domain, codomain_size, premise, conclusion, 0, total))
    else:
        step = -(-total // jobs)
        chunks = [(domain, codomain_size, premise, conclusion, s, min(s + step, total))
                  for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = [h for h in pool.map(_first_counterexample, chunks) if h is not None]
        hit = min(hits, default=None)
    if hit is None:
        return ImplicationResult(premise, conclusion, True, None, None, total)
    f = LatticeFunction(domain, codomain_size, function_digits(hit, len(domain), codomain_size))
    return ImplicationResult(premise, conclusion, False, f, hit, hit + 1)


def verify_equivalence(p, q, domain, codomain_size, **kw):
    """Both directions of ``verify_implication``."""
    return (verify_implication(p, q, domain, codomain_size, **kw),
            verify_implication(q, p, domain, codomain_size, **kw))


def implication_atlas(domain: FiniteLattice, codomain_size: int, *,
                      budget: int | None = None, props: Sequence | None = None):
    """All ordered property pairs at once, classifying each function a single time.

    Returns ``{(p, q): ImplicationResult}``.  Results coincide with running
    ``verify_implication`` pair by pair.
    """
    props = tuple(Prop) if props is None else _props(props)
    budget = default_budget() if budget is None else budget
    total = function_space_size(domain, codomain_size)
    if total > budget:
        raise BudgetExceeded(total, budget)
    first: dict[tuple[Prop, Prop], int] = {}
    pending = {(p, q) for p in props for q in props if p != q}
    for index, f in enumerate(iter_functions(domain, codomain_size)):
        if not pending:
            break
        has = {p for p in props if check_unary_property(f, p)}
        for pair in [pr for pr in pending if pr[0] in has and pr[1] not in has]:
            first[pair] = index
            pending.discard(pair)
    out = {}
    n = len(domain)
    for p in props:
        for q in props:
            if p == q:
                continue
            hit = first.get((p, q))
            if hit is None:
                out[p, q] = ImplicationResult((p,), (q,), True, None, None, total)
            else:
                f = LatticeFunction(domain, codomain_size, function_digits(hit, n, codomain_size))
                out[p, q] = ImplicationResult((p,), (q,), False, f, hit, hit + 1)
    return out


def default_budget() -> int:
    env = os.environ.get("LATEQ_BUDGET")
    return int(env) if env else DEFAULT_BUDGET
