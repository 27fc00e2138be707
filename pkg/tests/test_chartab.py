import math

import pytest

from sylow3 import grpzoo
from sylow3.chartab import (CharacterTable, an_table, conjugate_partition, dixon_table,
                            galois_stable, partitions, sn_table, tables_match, validate)
from sylow3.grpzoo import GroupSpec
from conftest import table_for


def hook_degree(lam):
    """Hook length formula, independent of the Murnaghan-Nakayama rule."""
    n = sum(lam)
    lam_c = conjugate_partition(lam)
    hooks = math.prod(lam[i] - j + lam_c[j] - i - 1
                      for i in range(len(lam)) for j in range(lam[i]))
    return math.factorial(n) // hooks


@pytest.mark.parametrize("n", range(1, 13))
def test_sn_degrees_match_hook_lengths(n):
    t = sn_table(n)
    assert sorted(t.degrees) == sorted(hook_degree(lam) for lam in partitions(n))


@pytest.mark.parametrize("n", range(5, 13))
def test_an_degrees_from_sn(n):
    want = []
    for lam in partitions(n):
        lam_c = conjugate_partition(lam)
        if lam == lam_c:
            want += [hook_degree(lam) // 2] * 2
        elif lam > lam_c:
            want.append(hook_degree(lam))
    assert sorted(an_table(n).degrees) == sorted(want)


@pytest.mark.parametrize("name", ["S3", "S4", "S5", "S8", "A5", "A6", "A7", "A9",
                                  "A4", "C9", "C3wrC3", "PSL(2,7)", "PSL(2,8)", "PSU(3,2)",
                                  "GL(2,4)"])
def test_tables_validate(name):
    t = table_for(name)
    assert validate(t) == []
    assert galois_stable(t)


@pytest.mark.parametrize("name,degrees", [
    ("A5", [1, 3, 3, 4, 5]),
    ("A6", [1, 5, 5, 8, 8, 9, 10]),
    ("PSL(2,7)", [1, 3, 3, 6, 7, 8]),
    ("PSL(2,8)", [1, 7, 7, 7, 7, 8, 9, 9, 9]),
    ("M11", [1, 10, 10, 10, 11, 16, 16, 44, 45, 55]),
])
def test_known_degrees(name, degrees):
    assert sorted(table_for(name).degrees) == degrees


def test_s4_centralizers():
    assert sorted(sn_table(4).centralizer_orders) == sorted([24, 4, 8, 3, 4])


@pytest.mark.parametrize("n", range(3, 8))
def test_symmetric_table_matches_dixon(n):
    t = dixon_table(grpzoo.build(GroupSpec("sym", n)))
    assert validate(t) == []
    assert tables_match(t, sn_table(n))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_alternating_table_matches_dixon(n):
    t = dixon_table(grpzoo.build(GroupSpec("alt", n)))
    assert tables_match(t, an_table(n))


def test_a6_irrational_characters_have_degree_8():
    t = an_table(6)
    irrational = {d for d, row in zip(t.degrees, t.irr) if not all(x.is_rational() for x in row)}
    assert irrational == {8}


def test_tables_match_detects_a_difference():
    a, b = sn_table(5), an_table(5)
    assert not tables_match(a, b)
    broken = CharacterTable.from_json(a.to_json())
    broken.irr[1] = [-x for x in broken.irr[1]]
    assert not tables_match(a, broken)


def test_validate_flags_bad_tables():
    t = CharacterTable.from_json(sn_table(4).to_json())
    t.irr[2] = list(t.irr[3])
    assert validate(t)
    t = CharacterTable.from_json(sn_table(4).to_json())
    t.class_sizes[1] += 1
    assert validate(t)


def test_json_round_trip():
    for name in ("A5", "PSL(2,8)"):
        t = table_for(name)
        u = CharacterTable.from_json(t.to_json())
        assert u.irr == t.irr and u.class_sizes == t.class_sizes
        assert u.power_maps == t.power_maps and u.order == t.order


def test_power_maps_send_to_right_orders():
    for name in ("S6", "A7", "PSL(2,7)"):
        t = table_for(name)
        for p, m in t.power_maps.items():
            for c, img in enumerate(m):
                o = t.rep_orders[c]
                assert t.rep_orders[img] == o // math.gcd(o, p)


def test_out_of_range_tables():
    with pytest.raises(ValueError):
        sn_table(16)
    with pytest.raises(ValueError):
        an_table(4)
