"""Finite normal-form games on product lattices.

Payoffs are integer tables over joint profiles.  For each player ``i`` the
game keeps a two-variable view ``u_i(own, others)`` indexed by own strategy and
opponent profile (a tuple of the other players' strategies, in player order);
best responses, hypothesis checks and crossing checks all read that view.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Sequence

from .crossing import CrossingProp, TwoVarFunction, check_crossing
from .errors import (BudgetExceeded, NotClosedUnderBound, NotMonotone,
                     SelectionNotMonotone, UnknownPlayer, UnknownTheorem)
from .functions import LatticeFunction, Prop, check_unary_property, default_budget
from .lattice import (HOLDS, FiniteLattice, ProductLattice, StructureFlags, Subset,
                      Verdict, all_lattices, chain_predicates, induced_structure,
                      is_sublattice, product)
from .optima import Correspondence, check_monotone, increasing_selection, tarski_fixed_points


class NormalFormGame:
    def __init__(self, players: Sequence[str], strategies: Sequence[FiniteLattice],
                 payoffs: Sequence[Mapping | Callable], codomains: Sequence | None = None,
                 name: str | None = None):
        if not players:
            raise ValueError("a game needs at least one player")
        if len(strategies) != len(players) or len(payoffs) != len(players):
            raise ValueError("one strategy lattice and one payoff per player")
        if any(len(s) == 0 for s in strategies):
            raise ValueError("strategy lattices must be nonempty")
        self.players = tuple(str(p) for p in players)
        if len(set(self.players)) != len(self.players):
            raise ValueError("duplicate player names")
        self.strategies = tuple(strategies)
        self.name = name
        self.joint = product(self.strategies)
        tables = []
        for i, u in enumerate(payoffs):
            get = u if callable(u) else u.__getitem__
            try:
                tables.append(tuple(int(get(s)) for s in self.joint.elements))
            except KeyError as exc:
                raise ValueError(f"payoff of player {self.players[i]!r} "
                                 f"undefined at {exc.args[0]!r}") from None
        self.payoff_tables = tuple(tables)
        if codomains is None:
            codomains = [range(min(t), max(t) + 1) for t in tables]
        self.codomains = tuple(tuple(sorted(set(int(v) for v in c))) for c in codomains)
        for i, (t, c) in enumerate(zip(tables, self.codomains)):
            if not set(t) <= set(c):
                raise ValueError(f"payoffs of player {self.players[i]!r} leave the codomain")

    def __repr__(self):
        sizes = "x".join(str(len(s)) for s in self.strategies)
        return f"NormalFormGame({self.name or 'unnamed'}, {sizes})"

    # -- indexing helpers ---------------------------------------------------

    def player_index(self, i) -> int:
        """Strings are player names, ints are 0-based positions."""
        if isinstance(i, str):
            if i in self.players:
                return self.players.index(i)
        elif isinstance(i, int) and 0 <= i < len(self.players):
            return i
        raise UnknownPlayer(f"unknown player {i!r}")

    @cached_property
    def opponents(self) -> tuple[ProductLattice, ...]:
        """``S_{-i}`` for each player: product of the other strategy lattices."""
        return tuple(product([s for k, s in enumerate(self.strategies) if k != i])
                     if len(self.strategies) > 1 else product([_POINT])
                     for i in range(len(self.players)))

    def split(self, i: int, profile) -> tuple:
        """``(own, others)`` for a joint profile."""
        profile = tuple(profile)
        if len(self.players) == 1:
            return profile[0], ("*",)
        return profile[i], profile[:i] + profile[i + 1:]

    def combine(self, i: int, own, others) -> tuple:
        others = tuple(others)
        if len(self.players) == 1:
            return (own,)
        return others[:i] + (own,) + others[i:]

    @cached_property
    def _views(self):
        """Per player: ``table[own_idx][opp_idx]`` of payoffs."""
        out = []
        for i in range(len(self.players)):
            own, opp = self.strategies[i], self.opponents[i]
            tab = self.payoff_tables[i]
            jidx = self.joint.index
            rows = []
            for x in own.elements:
                rows.append(tuple(tab[jidx[self.combine(i, x, t)]] for t in opp.elements))
            out.append(tuple(rows))
        return tuple(out)

    @cached_property
    def _best_idx(self):
        """Per player, per opponent index: frozenset of own indices in the argmax."""
        out = []
        for i, rows in enumerate(self._views):
            per = []
            for j in range(len(self.opponents[i])):
                col = [r[j] for r in rows]
                m = max(col)
                per.append(frozenset(a for a, v in enumerate(col) if v == m))
            out.append(tuple(per))
        return tuple(out)

    def payoff(self, i, profile) -> int:
        i = self.player_index(i)
        return self.payoff_tables[i][self.joint.index[tuple(profile)]]

    def section(self, i, others) -> LatticeFunction:
        """``u_i(., others)`` as a function on ``S_i``."""
        i = self.player_index(i)
        j = self.opponents[i].index[_opp_key(self, others)]
        return LatticeFunction(self.strategies[i], self.codomains[i],
                               [row[j] for row in self._views[i]])

    def payoff_twovar(self, i) -> TwoVarFunction:
        i = self.player_index(i)
        own, opp = self.strategies[i], self.opponents[i]
        vals = {(x, t): self._views[i][a][b]
                for a, x in enumerate(own.elements) for b, t in enumerate(opp.elements)}
        return TwoVarFunction(own, opp, self.codomains[i], vals)


_POINT = FiniteLattice(["*"], [[True]], [[0]], [[0]])


def _opp_key(game: NormalFormGame, others):
    if len(game.players) == 1:
        return ("*",)
    # a bare strategy is accepted for two-player games
    return others if isinstance(others, tuple) else (others,)


# -- best responses and equilibria -------------------------------------------

def best_response(game: NormalFormGame, i, s_minus_i) -> Subset:
    i = game.player_index(i)
    j = game.opponents[i].index[_opp_key(game, s_minus_i)]
    own = game.strategies[i]
    return Subset(own, frozenset(own.elements[a] for a in game._best_idx[i][j]))


def _opp_indices(game: NormalFormGame, profile_idx: int) -> list[int]:
    """Opponent-profile index for every player at a joint index."""
    digits = game.joint._digits[profile_idx]
    out = []
    for i in range(len(game.players)):
        opp = game.opponents[i]
        if len(game.players) == 1:
            out.append(0)
        else:
            out.append(opp._encode(digits[:i] + digits[i + 1:]))
    return out


def _is_nash_idx(game: NormalFormGame, k: int) -> bool:
    digits = game.joint._digits[k]
    return all(digits[i] in game._best_idx[i][j]
               for i, j in enumerate(_opp_indices(game, k)))


def is_nash(game: NormalFormGame, x) -> bool:
    """No player has a strictly improving unilateral deviation at ``x``."""
    k = game.joint.index[tuple(x)]
    return _is_nash_idx(game, k)


def enumerate_nash(game: NormalFormGame, *, budget: int | None = None) -> Subset:
    budget = default_budget() if budget is None else budget
    if len(game.joint) > budget:
        raise BudgetExceeded(len(game.joint), budget)
    eq = frozenset(game.joint.elements[k] for k in range(len(game.joint))
                   if _is_nash_idx(game, k))
    return Subset(game.joint, eq)


# -- theorem hypotheses -------------------------------------------------------------

class Theorem(str, enum.Enum):
    EXISTENCE_4_4 = "EXISTENCE_4.4"
    LARGEST_4_7 = "LARGEST_4.7"
    COMPLETE_4_9 = "COMPLETE_4.9"

    def __str__(self):
        return self.value


def as_theorem(t) -> Theorem:
    if isinstance(t, Theorem):
        return t
    key = str(t).upper().replace("_4_", "_4.")
    for th in Theorem:
        if th.value == key or th.name == str(t).upper():
            return th
    raise UnknownTheorem(f"unknown theorem {t!r}")


# unary property, crossing property, chain condition, extremal/bound condition
_THEOREM_CONDITIONS = {
    (Theorem.EXISTENCE_4_4, "plain"): (Prop.MEET_SUPEREXT, CrossingProp.MODULAR_CROSSING,
                                       "chain_complete_down", "admits_maximal"),
    (Theorem.EXISTENCE_4_4, "parenthesized"): (Prop.JOIN_SUPEREXT,
                                               CrossingProp.MODULAR_CROSSING,
                                               "chain_complete_up", "admits_minimal"),
    (Theorem.LARGEST_4_7, "plain"): (Prop.WPSM, CrossingProp.UPPER_CROSSING,
                                     "chain_complete_down", "chain_bounded_above"),
    (Theorem.COMPLETE_4_9, "plain"): (Prop.WQSM, CrossingProp.SINGLE_CROSSING,
                                      "chain_complete_down", "chain_bounded_above"),
    (Theorem.COMPLETE_4_9, "parenthesized"): (Prop.WQSM, CrossingProp.SINGLE_CROSSING,
                                              "chain_complete_up", "chain_bounded_below"),
}

FINITE_NOTE = "trivially satisfied: finite"


@dataclass(frozen=True)
class HypothesisReport:
    theorem: Theorem
    polarity: str
    conditions: dict = field(hash=False)   # (player, condition number) -> Verdict

    @property
    def overall(self) -> bool:
        return all(bool(v) for v in self.conditions.values())

    def failures(self) -> list:
        return [(k, v) for k, v in self.conditions.items() if not v]


def _level_reports(game: NormalFormGame, i: int):
    """Chain report for every nonempty upper level set of every section of ``u_i``."""
    cache = game.__dict__.setdefault("_level_cache", {})
    if i in cache:
        return cache[i]
    own = game.strategies[i]
    seen = {}
    out = []
    for j in range(len(game.opponents[i])):
        col = [row[j] for row in game._views[i]]
        for t in game.codomains[i]:
            members = frozenset(own.elements[a] for a, v in enumerate(col) if v >= t)
            if not members:
                continue
            if members not in seen:
                seen[members] = chain_predicates(own, members)
            out.append((j, t, seen[members]))
    cache[i] = out
    return out


def check_hypotheses(game: NormalFormGame, theorem, polarity: str = "plain") -> HypothesisReport:
    theorem = as_theorem(theorem)
    if polarity not in ("plain", "parenthesized"):
        raise ValueError(f"polarity must be 'plain' or 'parenthesized', got {polarity!r}")
    if (theorem, polarity) not in _THEOREM_CONDITIONS:
        raise UnknownTheorem(f"{theorem.value} has no {polarity} form")
    prop, cross, chain_cond, bound_cond = _THEOREM_CONDITIONS[theorem, polarity]
    conds = {}
    for i, name in enumerate(game.players):
        own = game.strategies[i]
        opp = game.opponents[i]
        conds[name, 1] = Verdict(len(own) > 0, detail={
            "note": "nonempty finite lattice, hence complete"})

        v2 = HOLDS
        for j, t in enumerate(opp.elements):
            f = LatticeFunction(own, game.codomains[i], [row[j] for row in game._views[i]])
            v = check_unary_property(f, prop)
            if not v:
                v2 = Verdict(False, (t,) + v.witness, v.clause, {"property": prop.value})
                break
        conds[name, 2] = v2

        v3 = check_crossing(game.payoff_twovar(i), cross)
        conds[name, 3] = v3 if not v3 else Verdict(True, detail={"property": cross.value})

        v4 = Verdict(True, detail={"note": FINITE_NOTE, "conditions": (chain_cond, bound_cond)})
        for j, t, rep in _level_reports(game, i):
            if not (getattr(rep, chain_cond) and getattr(rep, bound_cond)):
                v4 = Verdict(False, (opp.elements[j], t), chain_cond)
                break
        conds[name, 4] = v4
    return HypothesisReport(theorem, polarity, conds)


def check_payoff_crossing(game: NormalFormGame, i, p) -> Verdict:
    return check_crossing(game.payoff_twovar(game.player_index(i)), p)


# -- fixed-point solver ---------------------------------------------------------------

def _extremal_selection(game, i, direction):
    own = game.strategies[i]
    bound = "join" if direction == "greatest" else "meet"
    table = own.join_table if direction == "greatest" else own.meet_table
    sel = []
    for j, br in enumerate(game._best_idx[i]):
        acc = None
        for a in br:
            for b in br:
                if table[a][b] not in br:
                    raise NotClosedUnderBound(game.players[i], game.opponents[i].elements[j],
                                              bound)
            acc = a if acc is None else table[acc][a]
        sel.append(acc)
    return sel


def _backtracking_selection(game, i):
    own, opp = game.strategies[i], game.opponents[i]
    F = Correspondence(opp, own, {t: [own.elements[a] for a in game._best_idx[i][j]]
                                  for j, t in enumerate(opp.elements)})
    s = increasing_selection(F)
    return [own.index[s(t)] for t in opp.elements]


def joint_selection(game: NormalFormGame, direction: str = "least",
                    policy: str = "extremal") -> dict:
    """The map ``s -> (r_i(s_{-i}))_i`` as a dict over joint profiles."""
    if policy == "extremal":
        sels = [_extremal_selection(game, i, direction) for i in range(len(game.players))]
    elif policy == "backtracking":
        sels = [_backtracking_selection(game, i) for i in range(len(game.players))]
    else:
        raise ValueError(f"unknown selection policy {policy!r}")
    J = game.joint
    r = {}
    for k, s in enumerate(J.elements):
        digits = tuple(sels[i][j] for i, j in enumerate(_opp_indices(game, k)))
        r[s] = J.elements[J._encode(digits)]
    return r


def solve_fixed_point(game: NormalFormGame, direction: str = "least",
                      selection_policy: str = "extremal"):
    """A Nash equilibrium as the least/greatest fixed point of an increasing selection."""
    r = joint_selection(game, direction, selection_policy)
    v = check_monotone(game.joint, r)
    if not v:
        raise SelectionNotMonotone(v.witness)
    x = tarski_fixed_points(game.joint, r, direction, validate=False)
    if not is_nash(game, x):
        raise AssertionError(f"fixed point {x!r} of the selection is not a Nash equilibrium")
    return x


# -- equilibrium structure ------------------------------------------------------------------

@dataclass(frozen=True)
class EquilibriumReport:
    equilibria: Subset
    structure: StructureFlags
    consistent: bool

    def __getattr__(self, name):
        # expose structure flags directly: report.has_largest, report.minimal_elements, ...
        if name in StructureFlags.__dataclass_fields__:
            return getattr(self.structure, name)
        raise AttributeError(name)


def analyze_equilibria(game: NormalFormGame, *, budget: int | None = None) -> EquilibriumReport:
    eq = enumerate_nash(game, budget=budget)
    st = induced_structure(game.joint, eq)
    # a finite lattice whose minimal element is not least cannot exist
    consistent = not (st.is_lattice_induced and len(st.minimal_elements) > 1)
    return EquilibriumReport(eq, st, consistent)


@dataclass(frozen=True)
class ZhouReport:
    per_profile: dict = field(hash=False)   # joint profile -> R(s) is a sublattice of S
    all_sublattice: bool
    annotation: str | None


def zhou_applicability(game: NormalFormGame, annotation: str | None = None) -> ZhouReport:
    """Whether every joint best response ``R(s)`` is a sublattice of ``S``.

    ``R(s)`` is a product, so it is a sublattice exactly when every factor
    ``R_i(s_{-i})`` is one in ``S_i``.
    """
    factor_ok = []
    for i in range(len(game.players)):
        own = game.strategies[i]
        factor_ok.append([bool(is_sublattice(own, [own.elements[a] for a in br]))
                          for br in game._best_idx[i]])
    per = {}
    for k, s in enumerate(game.joint.elements):
        per[s] = all(factor_ok[i][j] for i, j in enumerate(_opp_indices(game, k)))
    return ZhouReport(per, all(per.values()), annotation)


def best_response_increasing(game: NormalFormGame, i) -> Verdict:
    """Strong set order monotonicity of ``R_i`` over ``S_{-i}``.

    For ``t <= t'``, ``x in R_i(t)``, ``x' in R_i(t')``: ``x ∧ x' in R_i(t)`` and
    ``x ∨ x' in R_i(t')``.
    """
    i = game.player_index(i)
    own, opp = game.strategies[i], game.opponents[i]
    br = game._best_idx[i]
    n = len(opp)
    for j in range(n):
        for j2 in range(n):
            if not opp.leq_idx(j, j2):
                continue
            for a in br[j]:
                for b in br[j2]:
                    if own.meet_idx(a, b) not in br[j] or own.join_idx(a, b) not in br[j2]:
                        return Verdict(False, (opp.elements[j], opp.elements[j2],
                                               own.elements[a], own.elements[b]))
    return HOLDS


# -- random games ----------------------------------------------------------------------

def random_game(rng: random.Random | int, *, n_players: Sequence[int] = (2, 3),
                max_size: int = 6, payoff_levels: Sequence[int] = (1, 2, 3),
                lattices: Sequence[FiniteLattice] | None = None,
                name: str | None = None) -> NormalFormGame:
    """A game with independent uniform integer payoffs.

    Player count is drawn from ``n_players``; each strategy lattice is drawn by
    first picking a size uniformly in ``1..max_size`` and then a lattice of that
    size (or uniformly from ``lattices`` when given); each player's payoffs are
    uniform over ``0..L-1`` with ``L`` drawn from ``payoff_levels``.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    n = rng.choice(list(n_players))
    if lattices is None:
        pool = all_lattices(max_size)
        by_size = {}
        for L in pool:
            by_size.setdefault(len(L), []).append(L)
        strategies = [rng.choice(by_size[rng.randint(1, max_size)]) for _ in range(n)]
    else:
        strategies = [rng.choice(list(lattices)) for _ in range(n)]
    size = 1
    for s in strategies:
        size *= len(s)
    payoffs = []
    codomains = []
    for _ in range(n):
        levels = rng.choice(list(payoff_levels))
        payoffs.append([rng.randrange(levels) for _ in range(size)])
        codomains.append(range(levels))
    joint = product(strategies)
    tables = [dict(zip(joint.elements, p)) for p in payoffs]
    return NormalFormGame([str(k + 1) for k in range(n)], strategies, tables, codomains,
                          name=name)


def random_corpus(count: int, seed: int, **kw) -> list[NormalFormGame]:
    rng = random.Random(seed)
    return [random_game(rng, name=f"random-{seed}-{k}", **kw) for k in range(count)]


def conformant_corpus(theorem, count: int, seed: int, *, polarity: str = "plain",
                      max_tries: int = 100_000, **kw) -> list[NormalFormGame]:
    """Rejection-sample ``count`` random games that pass ``theorem``'s hypotheses."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"only {len(out)} conformant games in {max_tries} draws")
        g = random_game(rng, name=f"conformant-{seed}-{tries}", **kw)
        if check_hypotheses(g, theorem, polarity).overall:
            out.append(g)
    return out
