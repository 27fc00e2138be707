import pytest

from sylow3 import grpzoo
from sylow3.grpzoo import GroupSpec, SylowSearchFailed, three_part
from sylow3.permgrp import BoundExceeded, frattini_rank_3group

BUILDABLE = [
    GroupSpec("sym", 6), GroupSpec("alt", 7), GroupSpec("wreath_tower", tower=(2, 1)),
    GroupSpec("gl", 2, 4), GroupSpec("sl", 3, 4), GroupSpec("pgl", 3, 4), GroupSpec("psl", 3, 4),
    GroupSpec("psl", 2, 8), GroupSpec("psl", 2, 9), GroupSpec("psl", 3, 3),
    GroupSpec("gu", 3, 2), GroupSpec("su", 3, 2), GroupSpec("psu", 3, 3), GroupSpec("psu", 4, 2),
    GroupSpec("sp", 4, 2), GroupSpec("psp", 4, 3), GroupSpec("gl", 2, 7), GroupSpec("sl", 4, 2),
]


@pytest.mark.parametrize("spec", BUILDABLE, ids=lambda s: s.name())
def test_built_order_matches_order_formula(spec):
    G = grpzoo.build(spec)
    assert G.order() == grpzoo.group_order(spec)


@pytest.mark.parametrize("spec", BUILDABLE, ids=lambda s: s.name())
def test_sylow_is_a_full_3_subgroup(spec):
    G = grpzoo.build(spec)
    P = grpzoo.syl3(spec, G)
    assert P.order() == three_part(G.order())
    assert grpzoo.three_group_is_valid(P)
    assert all(g in G for g in P.generators)


@pytest.mark.parametrize("spec,order,rank", [
    (GroupSpec("psl", 3, 4), 9, 2),
    (GroupSpec("sl", 3, 4), 27, 2),
    (GroupSpec("gl", 3, 4), 81, 2),
    (GroupSpec("psu", 4, 2), 81, 2),
    (GroupSpec("gu", 4, 2), 243, 3),
    (GroupSpec("psl", 2, 8), 9, 1),
    (GroupSpec("psl", 2, 9), 9, 2),
    (GroupSpec("gl", 4, 7), 243, 3),
    (GroupSpec("sl", 4, 7), 81, 2),
])
def test_sylow_order_and_rank(spec, order, rank):
    P = grpzoo.syl3(spec)
    assert P.order() == order
    assert frattini_rank_3group(P) == rank


def test_unitary_families_force_minus_sign():
    assert GroupSpec("psu", 3, 2).eps == -1
    assert GroupSpec("psu", 3, 2).name() == "PSU(3,2)"


def test_spec_round_trip():
    for spec in BUILDABLE + [GroupSpec("psl", 3, 64, ext="field")]:
        assert GroupSpec.from_dict(spec.to_dict()) == spec


def test_bad_eps():
    with pytest.raises(ValueError):
        GroupSpec("psl", 3, 4, eps=0)


def test_not_a_prime_power():
    with pytest.raises(ValueError):
        grpzoo.build(GroupSpec("psl", 2, 6))


def test_degree_bound():
    with pytest.raises(BoundExceeded) as exc:
        grpzoo.build(GroupSpec("psl", 3, 7), max_degree=10)
    assert exc.value.bound == "degree"


def test_matrix_generators_preserve_forms():
    for spec in (GroupSpec("gu", 3, 2), GroupSpec("sp", 4, 3), GroupSpec("sp", 6, 2)):
        mg = grpzoo.matrix_group(spec)
        assert all(mg.preserves_form(M) for M in mg.generators)


def test_mathieu_groups():
    m11 = grpzoo.load_external("m11.gens")
    m12 = grpzoo.load_external("m12.gens")
    assert (m11.order(), m12.order()) == (7920, 95040)
    for G, rank in ((m11, 2), (m12, 2)):
        P = grpzoo.syl3(GroupSpec("external", label=G.name), G)
        assert frattini_rank_3group(P) == rank


def test_generator_file_errors():
    with pytest.raises(ValueError):
        grpzoo.parse_generators("degree 3\n1 2 0\n")
    with pytest.raises(ValueError):
        grpzoo.parse_generators("name X\ndegree 3\n0 0 1\n")


def test_generator_file_parses():
    label, degree, gens = grpzoo.parse_generators("# c3\nname C3\ndegree 3\n1 2 0\n")
    assert (label, degree, gens) == ("C3", 3, [(1, 2, 0)])


def test_random_sylow_search_is_seeded():
    G = grpzoo.build(GroupSpec("sp", 4, 2))
    a = grpzoo._random_sylow(G, None, seed=5, budget=10 ** 4)
    b = grpzoo._random_sylow(G, None, seed=5, budget=10 ** 4)
    assert a.generators == b.generators
    assert a.order() == 9


def test_random_sylow_budget():
    G = grpzoo.build(GroupSpec("sp", 4, 3))
    with pytest.raises(SylowSearchFailed):
        grpzoo._random_sylow(G, None, seed=0, budget=1)


@pytest.mark.parametrize("tower", [(1,), (1, 1), (2, 1), (1, 1, 1), (1, 2)])
def test_wreath_order(tower):
    assert grpzoo.wreath_tower(tower).order() == grpzoo.wreath_order(tower)


def test_semidirect_samples_are_twenty_subgroup_pairs():
    samples = grpzoo.semidirect_samples()
    assert len(samples) == 20
    for _, R, Q in samples:
        assert R.is_3group() and Q.is_3group()
        assert Q.is_subgroup_of(R) and Q.order() < R.order()
