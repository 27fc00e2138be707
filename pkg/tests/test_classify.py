import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sylow3 import grpzoo
from sylow3.classify import (NONE_STATED, UNKNOWN, NotCovered, ThreeAdicDigits, k0_formulas,
                             rank_gl, rank_gl_any, rank_psl, rank_sl, rank_sym, sylow_rank,
                             theorem_a_predict, two_generated)
from sylow3.grpzoo import GroupSpec
from sylow3.permgrp import frattini_rank_3group

# prime powers q with 3 | q - 1 and with 3 | q + 1
Q_PLUS = [4, 7, 13, 16, 19, 25, 31, 37, 43, 49, 64, 73, 79]
Q_MINUS = [2, 5, 8, 11, 17, 23, 29, 32, 41, 47, 53, 59, 71]


def test_digits():
    d = ThreeAdicDigits.of(46)
    assert d.digits == (1, 0, 2, 1) and d.value == 46
    assert ThreeAdicDigits.of(0).digits == ()
    with pytest.raises(ValueError):
        ThreeAdicDigits.of(-1)


@settings(max_examples=200)
@given(st.integers(0, 10 ** 9))
def test_digits_round_trip(n):
    d = ThreeAdicDigits.of(n)
    assert d.value == n and all(a in (0, 1, 2) for a in d.digits)


@pytest.mark.parametrize("n,rank", [(9, 2), (3, 1), (12, 3), (2, 0), (6, 2), (11, 2), (18, 4), (27, 3)])
def test_rank_sym(n, rank):
    assert rank_sym(n) == rank


def test_rank_sym_of_three_powers():
    for i in range(7):
        assert rank_sym(3 ** i) == i


@pytest.mark.parametrize("args,rank", [((3, 4, 1), 2), ((1, 7, 1), 1), ((27, 7, 1), 4),
                                       ((2, 2, -1), 2), ((4, 7, 1), 3)])
def test_rank_gl(args, rank):
    assert rank_gl(*args) == rank


def test_rank_gl_domain():
    with pytest.raises(ValueError):
        rank_gl(3, 5, 1)
    with pytest.raises(ValueError):
        rank_gl(3, 9, 1)
    with pytest.raises(ValueError):
        rank_gl(3, 6, 1)


@settings(max_examples=200)
@given(st.integers(1, 3 ** 8), st.integers(0, 8), st.sampled_from(Q_PLUS))
def test_rank_gl_monotone_under_digit_increment(n, t, q):
    digits = ThreeAdicDigits.of(n).digits
    if t < len(digits) and digits[t] == 2:
        return  # a carry, not a digit increment
    assert rank_gl(n + 3 ** t, q, 1) >= rank_gl(n, q, 1)


@settings(max_examples=300)
@given(st.integers(1, 500), st.sampled_from([(q, 1) for q in Q_PLUS + Q_MINUS]
                                            + [(q, -1) for q in Q_PLUS + Q_MINUS]))
def test_rank_gaps(n, qe):
    q, eps = qe
    gl, sl, psl = rank_gl_any(n, q, eps), rank_sl(n, q, eps), rank_psl(n, q, eps)
    if sl != UNKNOWN:
        assert gl - sl in (0, 1)
    if sl != UNKNOWN and psl != UNKNOWN:
        assert sl - psl in (0, 1)


@pytest.mark.parametrize("spec,rank", [
    (GroupSpec("psl", 4, 7), 2),
    (GroupSpec("psl", 5, 7), 3),
    (GroupSpec("psl", 3, 4), 2),
    (GroupSpec("psl", 6, 7), UNKNOWN),
    (GroupSpec("psl", 7, 5), 2),
    (GroupSpec("psu", 5, 2), 3),
    (GroupSpec("psp", 6, 5), 2),
    (GroupSpec("psp", 8, 5), 3),
    (GroupSpec("pomega", 7, 7), 2),
    (GroupSpec("sym", 10), 2),
])
def test_sylow_rank_examples(spec, rank):
    assert sylow_rank(spec) == rank


@pytest.mark.parametrize("spec,two", [
    (GroupSpec("psp", 6, 2), True),
    (GroupSpec("psp", 4, 7), True),
    (GroupSpec("pomega-plus", 8, 5), False),
    (GroupSpec("pomega-minus", 8, 5), True),
    (GroupSpec("pomega-minus", 8, 7), True),
    (GroupSpec("pomega-plus", 8, 7), False),
    (GroupSpec("g2", q=5), True),
    (GroupSpec("3d4", q=2), True),
    (GroupSpec("2f4", q=8), True),
    (GroupSpec("f4", q=2), False),
    (GroupSpec("e8", q=7), False),
    (GroupSpec("psl", 3, 3), True),
    (GroupSpec("psl", 2, 9), True),
    (GroupSpec("psl", 4, 3), False),
    (GroupSpec("psp", 6, 3), False),
    (GroupSpec("psl", 2, 27), False),
    (GroupSpec("psl", 2, 7, ext="3prime"), False),
    (GroupSpec("psl", 2, 8, ext="field"), True),
    (GroupSpec("psl", 3, 7, ext="diagonal"), True),
    (GroupSpec("psl", 3, 64, ext="field"), False),
    (GroupSpec("psl", 3, 64, -1, ext="field"), True),
    (GroupSpec("psl", 4, 8, -1, ext="field"), False),
    (GroupSpec("psl", 4, 27, ext="field"), False),
    (GroupSpec("sporadic", label="M11"), True),
])
def test_two_generated_examples(spec, two):
    assert two_generated(spec) is two


def test_field_extension_of_abelian_sylow_has_rank_3():
    assert sylow_rank(GroupSpec("psp", 4, 8, ext="field")) == 3


@pytest.mark.parametrize("spec", [
    GroupSpec("2b2", q=8), GroupSpec("g2", q=3), GroupSpec("2f4", q=2),
    GroupSpec("sporadic", label="J1"), GroupSpec("pomega-plus", 4, 7),
])
def test_not_covered(spec):
    with pytest.raises(NotCovered):
        two_generated(spec)


@pytest.mark.parametrize("spec", [
    GroupSpec("psl", 3, 6), GroupSpec("sym", 0), GroupSpec("sp", 5, 7),
    GroupSpec("pomega", 8, 7), GroupSpec("psl", 3, 4, ext="field"),
    GroupSpec("psl", 3, 5, ext="diagonal"), GroupSpec("sym", 9, ext="field"),
    GroupSpec("psl", 3, 7, ext="bogus"), GroupSpec("2b2", q=4),
])
def test_malformed(spec):
    with pytest.raises(ValueError):
        two_generated(spec)


def test_small_rank_coincidences():
    assert sylow_rank(GroupSpec("pomega-minus", 6, 5)) == sylow_rank(GroupSpec("psu", 4, 5))
    assert sylow_rank(GroupSpec("pomega", 5, 7)) == sylow_rank(GroupSpec("psp", 4, 7))


def test_k0_formula_examples():
    assert k0_formulas(GroupSpec("psl", 4, 7)) == (9, 9)
    assert k0_formulas(GroupSpec("psl", 3, 4))[1] == 6
    assert k0_formulas(GroupSpec("psp", 6, 2)) == (9, NONE_STATED)
    assert k0_formulas(GroupSpec("psl", 5, 7)) == (NONE_STATED, NONE_STATED)
    assert k0_formulas(GroupSpec("psl", 4, 7, ext="3prime")) == (NONE_STATED, NONE_STATED)


@pytest.mark.parametrize("a", [1, 2, 3])
def test_k0_formula_values_by_valuation(a):
    # least prime powers with the required 3-adic valuation
    q_minus = {1: 7, 2: 19, 3: 109}[a]  # v3(q - 1) = a
    q_plus = {1: 2, 2: 17, 3: 53}[a]  # v3(q + 1) = a
    assert grpzoo.v3(q_minus - 1) == a and grpzoo.v3(q_plus + 1) == a
    assert k0_formulas(GroupSpec("psl", 4, q_minus)) == (3 ** (a + 1), 9)
    for n in (6, 7):
        assert k0_formulas(GroupSpec("psl", n, q_plus)) == (3 * (3 ** a - 1) // 2 + 6, 9)
        # the unitary side uses v3(q - 1) instead
        assert k0_formulas(GroupSpec("psu", n, q_minus)) == (3 * (3 ** a - 1) // 2 + 6, 9)


def test_predictions():
    r = theorem_a_predict(GroupSpec("sym", 10))
    assert (r.rank, r.theorem_a_prediction) == (2, True)
    r = theorem_a_predict(GroupSpec("psl", 5, 7))
    assert (r.rank, r.theorem_a_prediction) == (3, False)
    r = theorem_a_predict(GroupSpec("g2", q=4))
    assert r.theorem_a_prediction and r.provenance
    j = theorem_a_predict(GroupSpec("psl", 2, 8, ext="field")).to_json()
    assert j["group"] == "PSL(2,8):field"


FAMILY_SPECS = st.one_of(
    st.builds(lambda n: GroupSpec("sym", n), st.integers(1, 200)),
    st.builds(lambda t: GroupSpec("wreath_tower", tower=tuple(t)),
              st.lists(st.integers(1, 3), min_size=1, max_size=4)),
    st.builds(lambda f, n, q: GroupSpec(f, n, q),
              st.sampled_from(["gl", "sl", "pgl", "psl", "psu", "gu", "su"]),
              st.integers(2, 40), st.sampled_from(Q_PLUS + Q_MINUS + [3, 9, 27])),
    st.builds(lambda f, m, q: GroupSpec(f, 2 * m, q),
              st.sampled_from(["sp", "psp", "pomega-plus", "pomega-minus"]),
              st.integers(4, 20), st.sampled_from(Q_PLUS + Q_MINUS)),
)


@settings(max_examples=300)
@given(FAMILY_SPECS)
def test_record_invariants(spec):
    r = theorem_a_predict(spec)
    assert r.provenance
    if r.rank != UNKNOWN:
        assert r.two_generated == (r.rank == 2)
    else:
        assert r.two_generated is False
    assert r.theorem_a_prediction == r.two_generated


BUILDABLE = [GroupSpec("sym", n) for n in range(3, 13)] + [
    GroupSpec("alt", n) for n in range(3, 13)] + [
    GroupSpec("wreath_tower", tower=t) for t in [(1,), (2,), (1, 1), (2, 1), (1, 2), (1, 1, 1)]] + [
    GroupSpec(f, n, q, e) for f in ("gl", "sl", "pgl", "psl")
    for n, q, e in [(2, 4, 1), (3, 4, 1), (3, 7, 1), (4, 7, 1), (2, 7, 1), (3, 2, -1),
                    (2, 5, 1), (4, 2, 1), (4, 2, -1), (2, 9, 1), (3, 3, 1), (5, 4, 1)]] + [
    GroupSpec("psp", 4, 3), GroupSpec("sp", 4, 2), GroupSpec("psp", 4, 5), GroupSpec("psp", 6, 2),
    GroupSpec("psl", 2, 27), GroupSpec("external", label="M12", path="m12.gens")]


@pytest.mark.parametrize("spec", BUILDABLE, ids=lambda s: s.name())
def test_formula_rank_matches_bruteforce(spec):
    rank = sylow_rank(spec)
    brute = frattini_rank_3group(grpzoo.syl3(spec))
    if rank == UNKNOWN:
        assert not two_generated(spec) and brute != 2
    else:
        assert rank == brute
