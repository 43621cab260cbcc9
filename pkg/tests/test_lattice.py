import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lateq import (EmptyFactorList, FinitePoset, NotALattice, NotAPoset, Subset,
                   all_lattices, boolean_lattice, chain, chain_predicates, diamond, grid,
                   induced_structure, is_quasisublattice, is_sublattice, m3, opposite,
                   pentagon, product, validate_lattice)

from oracles import glb, is_lattice_order, lub, subset_structure


def test_diamond_bounds():
    D = diamond()
    assert D.meet("a", "b") == "0" and D.join("a", "b") == "1"
    assert D.bottom == "0" and D.top == "1"
    assert not D.comparable("a", "b")


def test_pentagon_is_not_modular():
    N = pentagon()
    # a <= c, so a v (b ^ c) should equal (a v b) ^ c in a modular lattice
    a, b, c = "a", "b", "c"
    assert N.leq(a, c)
    assert N.join(a, N.meet(b, c)) != N.meet(N.join(a, b), c)


@pytest.mark.parametrize("make", [diamond, pentagon, m3, lambda: chain(4), lambda: grid(3),
                                  lambda: boolean_lattice(3)])
def test_tables_match_bruteforce_bounds(make):
    L = make()
    els = list(L.elements)
    for x in els:
        for y in els:
            assert L.meet(x, y) == glb(els, L.leq, x, y)
            assert L.join(x, y) == lub(els, L.leq, x, y)


def test_lattice_counts_up_to_isomorphism():
    # unlabelled lattices of sizes 1..6: 1, 1, 1, 2, 5, 15
    by_size = {}
    for L in all_lattices(6):
        by_size[len(L)] = by_size.get(len(L), 0) + 1
    assert by_size == {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15}
    for L in all_lattices(6):
        assert is_lattice_order(list(L.elements), L.leq)


def test_not_a_poset_reports_axiom():
    with pytest.raises(NotAPoset) as exc:
        FinitePoset.from_relation(["x", "y"], [("x", "y"), ("y", "x")])
    assert exc.value.axiom == "antisymmetric"


def test_not_a_lattice_reports_pair():
    # two incomparable maxima
    P = FinitePoset.from_covers(["0", "a", "b"], [("0", "a"), ("0", "b")])
    with pytest.raises(NotALattice) as exc:
        validate_lattice(P)
    assert exc.value.missing == "join"
    assert set(exc.value.pair) == {"a", "b"}


def test_product_componentwise():
    P = product([chain(2), diamond()])
    assert P.meet((1, "a"), (0, "b")) == (0, "0")
    assert P.join((1, "a"), (0, "b")) == (1, "1")
    assert P.leq((0, "0"), (1, "a")) and not P.leq((1, "0"), (0, "1"))
    assert len(P) == 8
    with pytest.raises(EmptyFactorList):
        product([])


def test_opposite_swaps_bounds():
    D = diamond()
    op = opposite(D)
    assert op.meet("a", "b") == "1" and op.bottom == "1"
    assert op.opposite() == D


def test_grid_uses_exact_fractions():
    from fractions import Fraction
    G = grid(4)
    assert G.elements[1] == Fraction(1, 4) and G.top == 1


def test_quasisublattice_vs_sublattice():
    D = diamond()
    assert is_quasisublattice(D, {"a", "b", "1"})
    assert not is_sublattice(D, {"a", "b", "1"})
    v = is_quasisublattice(D, {"a", "b"})
    assert not v and set(v.witness) == {"a", "b"}


def test_induced_structure_matches_oracle_on_random_subsets():
    rng = random.Random(3)
    for L in all_lattices(6):
        els = list(L.elements)
        for _ in range(8):
            members = [e for e in els if rng.random() < 0.5]
            got = induced_structure(L, members)
            want = subset_structure(members, L.leq)
            assert got.has_largest == (want["largest"] is not None)
            assert got.has_least == (want["least"] is not None)
            if got.has_largest:
                assert got.largest == want["largest"]
            assert got.is_lattice_induced == want["lattice"]
            assert got.is_complete_lattice_induced == want["complete"]
            assert sorted(got.minimal_elements) == want["minimal"]
            assert sorted(got.maximal_elements) == want["maximal"]


def test_chain_predicates_on_finite_sets():
    D = diamond()
    rep = chain_predicates(D, {"a", "b"})
    assert rep.chain_complete_down and rep.chain_complete_up
    assert rep.admits_maximal and rep.admits_minimal
    assert rep.chains_examined >= 2


def test_subset_rejects_foreign_members():
    with pytest.raises(ValueError):
        Subset(diamond(), {"z"})


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_product_of_chains_is_a_lattice(m, n, data):
    P = product([chain(m + 1), chain(n + 1)])
    els = list(P.elements)
    x = data.draw(st.sampled_from(els))
    y = data.draw(st.sampled_from(els))
    assert P.meet(x, y) == glb(els, P.leq, x, y)
    assert P.join(x, y) == lub(els, P.leq, x, y)


def test_linear_extension_respects_order():
    for L in all_lattices(5):
        pos = {i: r for r, i in enumerate(L.linear_extension)}
        for i, j in itertools.product(range(len(L)), repeat=2):
            if i != j and L.leq_idx(i, j):
                assert pos[i] < pos[j]
