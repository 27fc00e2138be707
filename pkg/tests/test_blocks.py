import pytest

from sylow3 import grpzoo
from sylow3.blocks import (alternative_partition, block_partition, central_character,
                           sigma_permutation, sigma_report, theorem_a_check)
from sylow3.chartab import partitions, sn_table
from sylow3.grpzoo import GroupSpec
from sylow3.permgrp import frattini_rank_3group
from conftest import table_for


def three_core(lam):
    """3-core via the abacus: slide beads up their runners."""
    n = len(lam)
    beta = [lam[i] + n - 1 - i for i in range(n)]
    runners = [sorted(b for b in beta if b % 3 == r) for r in range(3)]
    slid = sorted((r + 3 * k for r in range(3) for k in range(len(runners[r]))), reverse=True)
    core = [b - (n - 1 - i) for i, b in enumerate(slid)]
    return tuple(x for x in core if x)


def test_s3_central_character():
    t = sn_table(3)
    # sign character on the 3-cycles: |K| * 1 / 1 = 2; degree 2 character: 2 * (-1) / 2 = -1
    cols = t.cycle_types
    c = cols.index((3,))
    row = t.partitions.index((2, 1))
    assert central_character(t, row, c) == -1


@pytest.mark.parametrize("name", ["S3", "C3", "C9", "C3wrC3"])
def test_single_block_for_3_groups_and_s3(name):
    p = block_partition(table_for(name))
    assert len(p.blocks) == 1


def test_3prime_group_has_singleton_blocks():
    t = sn_table(2)
    assert block_partition(t).blocks == [[0], [1]]
    assert block_partition(t).defect == 0
    assert block_partition(table_for("PSL(2,8)")).defect == 2


def test_defect_zero_characters_are_singletons():
    t = sn_table(4)
    p = block_partition(t)
    for r, d in enumerate(t.degrees):
        if d % 3 == 0:
            assert [r] in p.blocks
    assert sorted(t.degrees[r] for r in p.principal_rows) == [1, 1, 2]


@pytest.mark.parametrize("n", range(3, 12))
def test_symmetric_blocks_follow_3_cores(n):
    t = sn_table(n)
    p = block_partition(t)
    by_core = {}
    for r, lam in enumerate(t.partitions):
        by_core.setdefault(three_core(lam), []).append(r)
    assert sorted(p.blocks) == sorted(by_core.values())


@pytest.mark.parametrize("name", ["S6", "A6", "A7", "PSL(2,7)", "PSL(2,8)", "PSL(3,4)",
                                  "PSU(3,2)", "GL(2,4)", "M11"])
def test_partition_does_not_depend_on_twist(name):
    t = table_for(name)
    assert block_partition(t).blocks == alternative_partition(t).blocks


@pytest.mark.parametrize("name", ["S3", "S9", "A6", "A9", "C9", "C3wrC3", "PSL(2,7)",
                                  "PSL(2,8)", "PSL(3,4)", "PSU(3,2)", "GL(2,4)", "M11"])
def test_sigma_orbit_structure(name):
    t = table_for(name)
    rep = sigma_report(t, block_partition(t))
    assert rep.k0_sigma <= rep.k0
    assert rep.k0 % 3 == 0 and rep.k0_sigma % 3 == 0
    for s in rep.all_orbit_sizes:
        while s % 3 == 0:
            s //= 3
        assert s == 1
    assert sorted(rep.permutation) == list(range(len(t.irr)))


def test_sigma_is_trivial_for_exponent_without_9():
    for name in ("S6", "A7", "PSL(2,7)", "PSL(3,4)"):
        t = table_for(name)
        assert sigma_permutation(t) == list(range(len(t.irr)))


def test_psl28_sigma_moves_characters():
    t = table_for("PSL(2,8)")
    rep = sigma_report(t, block_partition(t))
    assert (rep.k0, rep.k0_sigma) == (6, 3)
    assert rep.orbit_sizes == [1, 1, 1, 3]


def test_psl34_k0_sigma():
    t = table_for("PSL(3,4)")
    rep = sigma_report(t, block_partition(t))
    assert rep.k0_sigma == 6


def test_a9_sigma_fixes_principal_height_zero():
    t = table_for("A9")
    rep = sigma_report(t, block_partition(t))
    assert rep.k0_sigma == rep.k0


@pytest.mark.parametrize("spec,name", [
    (GroupSpec("sym", 9), "S9"),
    (GroupSpec("psl", 2, 7), "PSL(2,7)"),
    (GroupSpec("psl", 3, 4), "PSL(3,4)"),
    (GroupSpec("psl", 2, 8), "PSL(2,8)"),
    (GroupSpec("wreath_tower", tower=(1, 1)), "C3wrC3"),
])
def test_two_generated_matches_k0_sigma(spec, name):
    rank = frattini_rank_3group(grpzoo.syl3(spec))
    check = theorem_a_check(spec, table_for(name), rank)
    assert check.theorem_a_consistent


def test_theorem_a_check_s12():
    rank = frattini_rank_3group(grpzoo.syl3(GroupSpec("sym", 12)))
    check = theorem_a_check(GroupSpec("sym", 12), sn_table(12), rank)
    assert rank == 3 and check.k0_sigma == 27
    assert check.theorem_a_consistent and not check.two_generated
    assert check.to_json()["group"] == "S12"
