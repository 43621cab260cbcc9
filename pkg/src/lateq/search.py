"""Hunting for separating examples.

A search runs exhaustively, in lexicographic order, when the whole space fits
in the budget; otherwise it draws ``budget`` seeded uniform samples.  Only an
exhaustive run can report that nothing exists.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any

from .functions import (LatticeFunction, as_prop, check_unary_property, default_budget,
                        function_space_size, iter_functions)
from .games import (NormalFormGame, analyze_equilibria, as_theorem,
                    check_hypotheses)
from .lattice import FiniteLattice, product


@dataclass
class SearchSpec:
    kind: str                                    # "function" or "game"
    lattices: list                               # one domain, or one lattice per player
    satisfy: list = field(default_factory=list)
    violate: list = field(default_factory=list)
    codomain: int = 3                            # functions: values 0..codomain-1
    payoff_levels: list | None = None            # games: per player, payoffs 0..L-1
    budget: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("function", "game"):
            raise ValueError(f"kind must be 'function' or 'game', got {self.kind!r}")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.kind == "function":
            for p in list(self.satisfy) + list(self.violate):
                as_prop(p)
        else:
            for p in list(self.satisfy) + list(self.violate):
                _game_predicate(p)
            if self.payoff_levels is None:
                self.payoff_levels = [2] * len(self.lattices)
            if len(self.payoff_levels) != len(self.lattices):
                raise ValueError("one payoff level count per player")


@dataclass(frozen=True)
class SearchResult:
    found: Any
    exhausted: bool
    mode: str          # "exhaustive" or "sampled"
    examined: int

    def __bool__(self):
        return self.found is not None


def _function_ok(f, spec):
    return (all(check_unary_property(f, p) for p in spec.satisfy)
            and all(not check_unary_property(f, p) for p in spec.violate))


def find_separating_function(spec: SearchSpec) -> SearchResult:
    """A function with every ``satisfy`` property and none of the ``violate`` ones."""
    domain: FiniteLattice = spec.lattices[0]
    k = spec.codomain
    budget = default_budget() if spec.budget is None else spec.budget
    total = function_space_size(domain, k)
    if total <= budget:
        for n, f in enumerate(iter_functions(domain, k), 1):
            if _function_ok(f, spec):
                return SearchResult(_reverified(f, spec), False, "exhaustive", n)
        return SearchResult(None, True, "exhaustive", total)
    rng = random.Random(spec.seed)
    for n in range(1, budget + 1):
        f = LatticeFunction(domain, k, [rng.randrange(k) for _ in domain.elements])
        if _function_ok(f, spec):
            return SearchResult(_reverified(f, spec), False, "sampled", n)
    return SearchResult(None, False, "sampled", budget)


def _reverified(obj, spec):
    ok = _function_ok(obj, spec) if spec.kind == "function" else _game_ok(obj, spec)
    if not ok:
        raise AssertionError("search returned an object that fails re-verification")
    return obj


# -- games -------------------------------------------------------------------------

STRUCTURE_PREDICATES = ("HAS_EQUILIBRIUM", "HAS_LARGEST", "HAS_LEAST",
                        "EQ_LATTICE", "EQ_COMPLETE_LATTICE")


def _game_predicate(name: str):
    """``(kind, arg)`` for a game predicate name.

    Theorem ids may carry ``/parenthesized`` to select the alternative form.
    """
    key = str(name).upper()
    if key in STRUCTURE_PREDICATES:
        return ("structure", key)
    th, _, pol = key.partition("/")
    return ("theorem", (as_theorem(th), pol.lower() or "plain"))


def evaluate_game_predicate(game: NormalFormGame, name: str) -> bool:
    kind, arg = _game_predicate(name)
    if kind == "theorem":
        th, pol = arg
        return check_hypotheses(game, th, pol).overall
    rep = analyze_equilibria(game)
    return {
        "HAS_EQUILIBRIUM": len(rep.equilibria) > 0,
        "HAS_LARGEST": rep.has_largest,
        "HAS_LEAST": rep.has_least,
        "EQ_LATTICE": rep.is_lattice_induced,
        "EQ_COMPLETE_LATTICE": rep.is_complete_lattice_induced,
    }[arg]


def _game_ok(g, spec):
    return (all(evaluate_game_predicate(g, p) for p in spec.satisfy)
            and all(not evaluate_game_predicate(g, p) for p in spec.violate))


def _make_game(lattices, joint, tables, levels):
    n = len(lattices)
    return NormalFormGame([str(i + 1) for i in range(n)], lattices,
                          [dict(zip(joint.elements, t)) for t in tables],
                          [range(L) for L in levels])


def find_separating_game(spec: SearchSpec) -> SearchResult:
    lattices = list(spec.lattices)
    levels = list(spec.payoff_levels)
    joint = product(lattices)
    m = len(joint)
    budget = default_budget() if spec.budget is None else spec.budget
    total = 1
    for L in levels:
        total *= L ** m
    if total <= budget:
        spaces = [itertools.product(range(L), repeat=m) for L in levels]
        for n, tables in enumerate(itertools.product(*[list(s) for s in spaces]), 1):
            g = _make_game(lattices, joint, tables, levels)
            if _game_ok(g, spec):
                return SearchResult(_reverified(g, spec), False, "exhaustive", n)
        return SearchResult(None, True, "exhaustive", total)
    rng = random.Random(spec.seed)
    for n in range(1, budget + 1):
        tables = [[rng.randrange(L) for _ in range(m)] for L in levels]
        g = _make_game(lattices, joint, tables, levels)
        if _game_ok(g, spec):
            return SearchResult(_reverified(g, spec), False, "sampled", n)
    return SearchResult(None, False, "sampled", budget)


def run_search(spec: SearchSpec) -> SearchResult:
    if spec.kind == "function":
        return find_separating_function(spec)
    return find_separating_game(spec)
