import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from sylow3.finfield import FieldCtx, field_create, frobenius, gf, multiplicative_order

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 3), (3, 2), (5, 2), (2, 6), (3, 4)]


def _sympy_mul(ctx, a, b):
    # galoistools wants the leading coefficient first
    fa = list(reversed(ctx.coeffs(a)))
    fb = list(reversed(ctx.coeffs(b)))
    mod = list(reversed(ctx.modulus))
    r = gf_rem(gf_mul(fa, fb, ctx.p, ZZ), mod, ctx.p, ZZ)
    r = [int(c) % ctx.p for c in reversed(r)]
    return ctx.encode(r + [0] * (ctx.k - len(r)))


@pytest.mark.parametrize("p,k", FIELDS)
def test_modulus_is_irreducible(p, k):
    ctx = field_create(p, k)
    assert len(ctx.modulus) == k + 1
    assert gf_irreducible_p(list(reversed(ctx.modulus)), p, ZZ)


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplication_matches_sympy(p, k):
    ctx = field_create(p, k)
    rng = random.Random(p * 100 + k)
    for _ in range(200):
        a, b = rng.randrange(ctx.order), rng.randrange(ctx.order)
        assert ctx.mul(a, b) == _sympy_mul(ctx, a, b)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pk, data):
    ctx = field_create(*pk)
    a, b, c = (data.draw(st.integers(0, ctx.order - 1)) for _ in range(3))
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.add(a, ctx.neg(a)) == 0
    assert ctx.sub(ctx.add(a, b), b) == a
    if a:
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.pow(a, ctx.order - 1) == 1


def test_tables_agree_with_arithmetic():
    ctx = gf(9)
    add, mul = ctx.add_table(), ctx.mul_table()
    for a in range(9):
        for b in range(9):
            assert add[a][b] == ctx.add(a, b)
            assert mul[a][b] == ctx.mul(a, b)


@pytest.mark.parametrize("q", [4, 7, 8, 9, 25, 64, 81])
def test_primitive_element_has_full_order(q):
    ctx = gf(q)
    assert multiplicative_order(ctx, ctx.primitive_element()) == q - 1


@pytest.mark.parametrize("q,n", [(7, 3), (4, 3), (64, 9), (3 ** 4, 16), (3 ** 6, 28), (19, 9)])
def test_root_of_unity(q, n):
    ctx = gf(q)
    assert multiplicative_order(ctx, ctx.root_of_unity(n)) == n


def test_root_of_unity_rejects_missing_order():
    with pytest.raises(ValueError):
        gf(7).root_of_unity(4)


def test_frobenius_fixes_subfield_and_is_involution():
    ctx = gf(16)
    sub = {x for x in range(16) if ctx.pow(x, 4) == x}
    assert len(sub) == 4
    for x in range(16):
        y = frobenius(ctx, x, 4)
        assert frobenius(ctx, y, 4) == ctx(x)
        assert (y == ctx(x)) == (x in sub)


def test_elem_operators():
    ctx = gf(25)
    a, b = ctx(7), ctx(13)
    assert (a * b) / b == a
    assert a - a == ctx.zero
    assert (a ** 24) == ctx.one
    assert -(-a) == a


def test_gf_rejects_non_prime_power():
    with pytest.raises(ValueError):
        gf(12)


def test_explicit_modulus_context():
    ctx = FieldCtx(2, 2, (1, 1, 1))
    assert ctx.mul(2, 2) == 3  # x * x = x + 1
