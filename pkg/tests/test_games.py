from fractions import Fraction

import pytest

from lateq import (NormalFormGame, NotClosedUnderBound, SelectionNotMonotone, UnknownTheorem,
                   analyze_equilibria, best_response, best_response_increasing, chain,
                   check_hypotheses, diamond, enumerate_nash, is_nash, random_corpus,
                   solve_fixed_point, zhou_applicability)
from lateq.instances import (builtin_game, constant_game, coordination_2x2, eg48_nomin,
                             eg412_zhou, post44_interior, post44_nolattice)

from oracles import brute_nash, product_leq, subset_structure

H = Fraction(1, 2)
Q = Fraction(1, 4)


def _oracle_nash(game):
    sets = [list(s.elements) for s in game.strategies]
    return brute_nash(sets, lambda i, prof: game.payoff(i, prof))


def _oracle_structure(game):
    eq = _oracle_nash(game)
    leq = product_leq([s.leq for s in game.strategies])
    return eq, subset_structure(eq, leq)


def test_coordination():
    g = coordination_2x2()
    assert sorted(enumerate_nash(g).members) == [(0, 0), (1, 1)]
    assert solve_fixed_point(g, "least") == (0, 0)
    assert solve_fixed_point(g, "greatest") == (1, 1)


def test_best_response_two_player_shorthand():
    g = coordination_2x2()
    assert set(best_response(g, 0, 1).members) == {1}
    assert set(best_response(g, "2", (0,)).members) == {0}


def test_eg48_structure():
    rep = analyze_equilibria(eg48_nomin(2))
    assert set(rep.equilibria.members) == {(1, 0), (1, H), (0, 1), (H, 1), (1, 1)}
    assert rep.has_largest and rep.largest == (1, 1)
    assert not rep.has_least
    assert sorted(rep.minimal_elements) == [(0, 1), (1, 0)]


def test_post44_nolattice():
    rep = analyze_equilibria(post44_nolattice(2))
    assert len(rep.equilibria) == 7
    assert not rep.is_lattice_induced
    assert rep.largest == (1, 1)


def test_eg412_complete_lattice():
    g = eg412_zhou(4)
    rep = analyze_equilibria(g)
    grid5 = [Fraction(i, 4) for i in range(5)]
    assert set(rep.equilibria.members) == {(a, b) for a in (0, Q, 1) for b in grid5}
    assert rep.is_complete_lattice_induced
    assert check_hypotheses(g, "COMPLETE_4.9").overall
    assert zhou_applicability(g).all_sublattice


def test_post44_interior_on_grid():
    rep = analyze_equilibria(post44_interior(2))
    assert sorted(rep.equilibria.members) == [(1, H)]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_grid_parameter(k):
    g = builtin_game("eg48_nomin_grid3", k)
    assert len(g.strategies[0]) == k + 1


def test_enumeration_matches_oracle_on_corpus():
    for g in random_corpus(60, 17):
        eq, st = _oracle_structure(g)
        rep = analyze_equilibria(g)
        assert set(rep.equilibria.members) == set(eq)
        assert rep.has_largest == (st["largest"] is not None)
        assert rep.has_least == (st["least"] is not None)
        assert rep.is_lattice_induced == st["lattice"]
        assert all(is_nash(g, p) for p in eq)


def test_theorem_conclusions_on_corpus():
    for g in random_corpus(150, 23):
        eq, st = _oracle_structure(g)
        if check_hypotheses(g, "EXISTENCE_4.4").overall:
            assert eq
        if check_hypotheses(g, "EXISTENCE_4.4", "parenthesized").overall:
            assert eq
        if check_hypotheses(g, "LARGEST_4.7").overall:
            assert st["largest"] is not None
        if check_hypotheses(g, "COMPLETE_4.9").overall:
            assert st["complete"]
            assert solve_fixed_point(g, "least") == st["least"]
            assert solve_fixed_point(g, "greatest") == st["largest"]
            for i in range(len(g.players)):
                assert best_response_increasing(g, i)


def test_hypothesis_report_shape():
    rep = check_hypotheses(coordination_2x2(), "EXISTENCE_4.4")
    assert set(rep.conditions) == {(p, c) for p in ("1", "2") for c in (1, 2, 3, 4)}
    assert rep.overall and rep.failures() == []


def test_largest_has_no_parenthesized_form():
    with pytest.raises(UnknownTheorem):
        check_hypotheses(coordination_2x2(), "LARGEST_4.7", "parenthesized")


def test_matching_pennies_has_no_monotone_selection():
    S = chain(2)
    g = NormalFormGame(["1", "2"], [S, S], [lambda s: int(s[0] == s[1]),
                                            lambda s: int(s[0] != s[1])])
    assert not check_hypotheses(g, "EXISTENCE_4.4").overall
    assert len(enumerate_nash(g)) == 0
    with pytest.raises(SelectionNotMonotone):
        solve_fixed_point(g)


def test_extremal_policy_needs_closed_best_responses():
    # best response {a, b}: no least element
    D = diamond()
    g = NormalFormGame(["1"], [D], [lambda s: int(s[0] in ("a", "b"))])
    with pytest.raises(NotClosedUnderBound):
        solve_fixed_point(g, "least", "extremal")
    assert solve_fixed_point(g, "least", "backtracking") in {("a",), ("b",)}


def test_constant_game_everything_is_equilibrium():
    g = constant_game([chain(2), diamond()])
    rep = analyze_equilibria(g)
    assert len(rep.equilibria) == 8 and rep.is_complete_lattice_induced


def test_player_lookup_by_name_and_position():
    g = coordination_2x2()
    assert g.player_index("2") == 1 and g.player_index(1) == 1
