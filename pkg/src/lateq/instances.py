"""Named instances: the worked examples, ready to load.

Games on ``[0, 1]`` are discretised to the grid ``{0, 1/k, ..., 1}``; interval
conditions such as ``s_2 > 1/2`` are evaluated literally at grid points and
real payoffs are replaced by order-equivalent integers.
"""

from __future__ import annotations

from fractions import Fraction

from .crossing import TwoVarFunction
from .functions import LatticeFunction
from .games import NormalFormGame
from .lattice import chain, diamond, grid

HALF = Fraction(1, 2)


# -- functions on the diamond {0, a, b, 1} ----------------------------------------

# h and v share one table, so it is kept once as h_v.
EXAMPLE_FUNCTIONS = {
    "f": {"0": 0, "a": 2, "b": 1, "1": 1},
    "g": {"0": 0, "a": 1, "b": 1, "1": 1},
    "h_v": {"0": 2, "a": 2, "b": 1, "1": 0},
    "u": {"0": 0, "a": 1, "b": 1, "1": 1},
    "w": {"0": 0, "b": 1, "1": 2, "a": 3},
}


def example_function(name: str, codomain: int = 4) -> LatticeFunction:
    return LatticeFunction(diamond(), codomain, EXAMPLE_FUNCTIONS[name])


def example_functions(codomain: int = 4) -> dict[str, LatticeFunction]:
    return {k: example_function(k, codomain) for k in EXAMPLE_FUNCTIONS}


def indicator_example(k: int = 4) -> LatticeFunction:
    """Characteristic function of ``[1, 2)`` on the grid ``{0, 2/k, ..., 2}``."""
    pts = [Fraction(2 * i, k) for i in range(k + 1)]
    return LatticeFunction(chain(pts), 2, {p: int(1 <= p < 2) for p in pts})


# -- crossing examples -------------------------------------------------------------------

def modular_not_single() -> TwoVarFunction:
    X = T = chain(2)
    return TwoVarFunction(X, T, 2, {(0, 0): 0, (0, 1): 0, (1, 1): 0, (1, 0): 1})


def upper_not_modular() -> TwoVarFunction:
    """The value -1 at (1, 1) is shifted to 0 and every other value to 1."""
    X, T = chain(3), chain(2)
    return TwoVarFunction(X, T, 2, {(x, t): 0 if (x, t) == (1, 1) else 1
                                    for x in range(3) for t in range(2)})


# -- games -------------------------------------------------------------------------------

def coordination_2x2() -> NormalFormGame:
    S = chain(2)
    u = lambda s: int(s[0] == s[1])
    return NormalFormGame(["1", "2"], [S, S], [u, u], name="coordination_2x2")


def post44_interior(k: int = 2) -> NormalFormGame:
    """``u_1 = s_1 s_2``; ``u_2 = 1`` iff ``0 < s_2 < 1``.

    On the continuum the equilibrium set ``{1} x (0, 1)`` has neither a largest
    nor a least element; on a grid the open interval becomes finite and the
    pathology disappears.
    """
    G = grid(k)
    u1 = lambda s: int(s[0] * s[1] * k * k)
    u2 = lambda s: int(0 < s[1] < 1)
    return NormalFormGame(["1", "2"], [G, G], [u1, u2], name=f"post44_interior_grid{k + 1}")


def post44_nolattice(k: int = 2) -> NormalFormGame:
    """``u_1 = 1`` iff ``s_2 <= 1/2 <= s_1``; ``u_2 = 0``."""
    G = grid(k)
    u1 = lambda s: int(s[1] <= HALF <= s[0])
    return NormalFormGame(["1", "2"], [G, G], [u1, lambda s: 0],
                          name=f"post44_nolattice_grid{k + 1}")


def eg48_nomin(k: int = 2) -> NormalFormGame:
    """``u_1 = s_1`` if ``s_2 <= 1/2`` else ``0``; ``u_2 = 0``.  Payoffs scaled by ``k``."""
    G = grid(k)
    u1 = lambda s: int(s[0] * k) if s[1] <= HALF else 0
    return NormalFormGame(["1", "2"], [G, G], [u1, lambda s: 0],
                          name=f"eg48_nomin_grid{k + 1}")


def eg412_zhou(k: int = 4) -> NormalFormGame:
    """``u_1 = 1`` iff ``s_1 in [0, 1/2) ∪ {1}``; ``u_2 = 0``.

    On the continuum ``R(0, 0)`` is not subcomplete; every finite subset of a
    chain is, so the grid version keeps the equilibrium set but not that
    obstruction.
    """
    G = grid(k)
    u1 = lambda s: int(s[0] < HALF or s[0] == 1)
    return NormalFormGame(["1", "2"], [G, G], [u1, lambda s: 0],
                          name=f"eg412_zhou_grid{k + 1}")


def constant_game(strategies, value: int = 0) -> NormalFormGame:
    strategies = list(strategies)
    return NormalFormGame([str(i + 1) for i in range(len(strategies))], strategies,
                          [lambda s: value] * len(strategies), name="constant")


BUILTIN_GAMES = {
    "coordination_2x2": (lambda k=None: coordination_2x2(), None),
    "post44_nolattice_grid3": (lambda k=None: post44_nolattice(k or 2), 2),
    "eg48_nomin_grid3": (lambda k=None: eg48_nomin(k or 2), 2),
    "eg412_zhou_grid5": (lambda k=None: eg412_zhou(k or 4), 4),
    "post44_interior_grid3": (lambda k=None: post44_interior(k or 2), 2),
}

# Where the grid version departs from the continuum statement.
DISCRETIZATION_NOTES = {
    "post44_interior_grid3": (
        "continuum equilibrium set {1}x(0,1) has no largest or least element; "
        "on the grid the open interval is finite, so the set has both"),
    "eg412_zhou_grid5": (
        "continuum R(0,0) = ([0,1/2) u {1}) x [0,1] is not subcomplete; on the grid "
        "every best response is a sublattice, so the Zhou obstruction does not survive"),
}


def builtin_game(name: str, grid_k: int | None = None) -> NormalFormGame:
    try:
        make, _ = BUILTIN_GAMES[name]
    except KeyError:
        raise KeyError(f"unknown built-in game {name!r}; "
                       f"choose from {sorted(BUILTIN_GAMES)}") from None
    return make(grid_k)
