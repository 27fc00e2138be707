import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from sylow3 import grpzoo
from sylow3.permgrp import (BoundExceeded, PermGroup, commutator, conjugacy_classes, cycle_type,
                            frattini_rank_3group, from_cycles, identity, inv, is_identity, mul,
                            normal_closure, order, power, power_map)


def _sympy_order(gens, n):
    return PermutationGroup([Permutation(list(g), size=n) for g in gens]).order()


perm_strategy = st.integers(2, 7).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3))


@settings(max_examples=80, deadline=None)
@given(perm_strategy)
def test_order_matches_sympy(gens):
    n = len(gens[0])
    gens = [tuple(g) for g in gens]
    assert PermGroup(gens, n).order() == _sympy_order(gens, n)


@settings(max_examples=40, deadline=None)
@given(perm_strategy)
def test_elements_closed_and_membership(gens):
    n = len(gens[0])
    G = PermGroup([tuple(g) for g in gens], n)
    elems = set(G.elements())
    assert len(elems) == G.order()
    for a in list(elems)[:10]:
        for g in G.generators:
            assert mul(a, g) in elems
    for p in itertools.islice(itertools.permutations(range(n)), 50):
        assert (p in G) == (p in elems)


def test_composition_is_right_action():
    a = from_cycles(3, (0, 1))
    b = from_cycles(3, (1, 2))
    # apply a first, then b
    assert mul(a, b)[0] == b[a[0]]
    assert mul(a, inv(a)) == identity(3)


def test_small_element_helpers():
    g = from_cycles(6, (0, 1, 2), (3, 4))
    assert cycle_type(g) == (3, 2, 1)
    assert order(g) == 6
    assert is_identity(power(g, 6))
    assert power(g, -1) == inv(g)


@pytest.mark.parametrize("n,expected", [(4, 24), (5, 120), (7, 5040)])
def test_symmetric_orders(n, expected):
    assert grpzoo.symmetric(n).order() == expected


def test_normal_closure_of_three_cycle_in_s4_is_a4():
    S4 = grpzoo.symmetric(4)
    N = normal_closure(S4, [from_cycles(4, (0, 1, 2))])
    assert N.order() == 12
    assert N.is_normal_in(S4)


def test_normal_closure_rejects_foreign_seed():
    A4 = grpzoo.alternating(4)
    with pytest.raises(ValueError):
        normal_closure(A4, [from_cycles(4, (0, 1))])


def _brute_frattini_rank(P: PermGroup) -> int:
    # Phi(P) = P' P^3, generated by every commutator and cube
    elems = P.elements()
    seeds = {commutator(a, b) for a in elems for b in elems} | {power(a, 3) for a in elems}
    F = PermGroup([s for s in seeds if not is_identity(s)], P.degree)
    return round(math.log(P.order() // F.order(), 3))


@pytest.mark.parametrize("tower", [(1,), (2,), (1, 1)])
def test_frattini_rank_matches_brute_force(tower):
    P = grpzoo.wreath_tower(tower)
    assert frattini_rank_3group(P) == _brute_frattini_rank(P)


def test_frattini_rank_elementary_abelian():
    P = PermGroup([from_cycles(9, (0, 1, 2)), from_cycles(9, (3, 4, 5)),
                   from_cycles(9, (6, 7, 8))], 9)
    assert frattini_rank_3group(P) == 3


def test_frattini_rank_rejects_non_3group():
    with pytest.raises(ValueError):
        frattini_rank_3group(grpzoo.symmetric(3))


def test_conjugacy_classes_a4():
    cc = conjugacy_classes(grpzoo.alternating(4))
    assert is_identity(cc.reps[0])
    assert sorted(cc.sizes) == [1, 3, 4, 4]
    assert sum(cc.sizes) == 12


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_class_count_of_sn_is_partition_count(n):
    from sympy import partition
    assert len(conjugacy_classes(grpzoo.symmetric(n))) == partition(n)


def test_power_map_sends_classes_to_classes():
    cc = conjugacy_classes(grpzoo.alternating(5))
    for k in (2, 3, 5):
        pm = power_map(cc, k)
        for c, rep in enumerate(cc.reps):
            assert power(rep, k) in cc.elements[pm[c]]


def test_class_bound():
    with pytest.raises(BoundExceeded) as exc:
        conjugacy_classes(grpzoo.symmetric(8), bound=1000)
    assert exc.value.bound == "class enumeration order"


def test_random_elements_lie_in_group():
    G = grpzoo.alternating(6)
    rng = random.Random(1)
    for _ in range(20):
        assert G.random_element(rng) in G


def test_frattini_rank_direct_product_matches_brute_force():
    P = grpzoo.direct_product(grpzoo.cyclic(9), grpzoo.wreath_tower((1, 1)))
    assert frattini_rank_3group(P) == _brute_frattini_rank(P) == 3
