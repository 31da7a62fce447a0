import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rand_element, rand_scalar
from hvalg.algebra import (CI, CL, CLI, Element, I, L, basis_bracket, bracket, centerless_bracket,
                           jacobi_check)
from hvalg.cocycles import builtins_for, eval_cocycle
from hvalg.errors import InactiveCentralKey, RankMismatch, VariantMismatch
from hvalg.grading import AlgebraContext, group_add, is_zero
from hvalg.grammar import parse_element
from hvalg.scalars import Scalar


def E(key, c=1):
    return Element.basis(key, c)


def test_defining_brackets():
    plain = AlgebraContext(1, Fraction(5, 7))
    assert bracket(plain, E(L((1,))), E(L((2,)))) == E(L((3,)))
    assert bracket(AlgebraContext(1, -2), E(L((1,))), E(I((1,)))) == E(I((2,)), 3)
    ext = AlgebraContext(1, Fraction(5, 7), "extended")
    assert bracket(ext, E(L((2,))), E(L((-2,)))) == E(L((0,)), -4) + E(CL, Fraction(1, 2))
    ext0 = AlgebraContext(1, 0, "extended")
    assert bracket(ext0, E(L((1,))), E(I((-1,)))) == E(I((0,)), -1) + E(CLI(0), 2)
    assert bracket(ext0, E(I((1,))), E(I((-1,)))) == E(CI)
    gp = AlgebraContext(1, -1, "derived-prime")
    assert bracket(gp, E(I((2,))), E(I((-2,)))) == E(CI, Fraction(1, 2))


def test_formatting():
    ext0 = AlgebraContext(1, 0, "extended")
    assert str(bracket(ext0, E(L((1,))), E(I((-1,))))) == "-1*I[0] + 2*CLI0"
    assert str(Element.zero()) == "0"


def test_validation_errors():
    with pytest.raises(InactiveCentralKey):
        bracket(AlgebraContext(1, 1, "extended"), E(CI), E(L((1,))))
    with pytest.raises(VariantMismatch):
        bracket(AlgebraContext(1, -1, "derived-prime"), E(I((0,))), E(L((1,))))
    with pytest.raises(RankMismatch):
        bracket(AlgebraContext(2, 0), E(L((1,))), E(L((1, 0))))
    with pytest.raises(InactiveCentralKey):
        parse_element("CI", AlgebraContext(1, 1, "extended"))


def test_parse_examples():
    x = parse_element("L[1] + (1/2)*CL", AlgebraContext(1, 0, "extended"))
    assert len(x) == 2 and x.coeff(CL) == Fraction(1, 2)
    y = parse_element("(e2+1)*I[0,1] - 3*L[2,-1]", AlgebraContext(2, 0))
    assert y.coeff(I((0, 1))) == Scalar.gen(2) + 1 and y.coeff(L((2, -1))) == -3


@pytest.mark.parametrize("ctx,R", [
    (AlgebraContext(1, 0, "extended"), 3),
    (AlgebraContext(1, -1, "derived-prime"), 3),
    (AlgebraContext(1, Fraction(-1, 2)), 3),
    (AlgebraContext(2, -2, "extended"), 1),
])
def test_jacobi(ctx, R):
    rep = jacobi_check(ctx, R)
    assert rep.passed, rep.failures


def test_jacobi_detects_a_broken_bracket(monkeypatch):
    ctx = AlgebraContext(1, 0, "extended")
    real = basis_bracket.__wrapped__

    def broken(c, x, y):
        out = dict(real(c, x, y))
        if x == L((2,)) and y == L((-1,)):
            out[L((1,))] = Scalar(7)
        if x == L((-1,)) and y == L((2,)):
            out[L((1,))] = Scalar(-7)
        return out

    import hvalg.algebra as alg
    monkeypatch.setattr(alg, "basis_bracket", broken)
    assert not alg.jacobi_check(ctx, 2).passed


@pytest.mark.parametrize("lam", [0, 1, -2, Fraction(5, 7)])
def test_extended_bracket_is_plain_plus_builtin_cocycles(lam):
    ext = AlgebraContext(2, lam, "extended")
    plain = ext.with_variant("plain")
    keys = [k(a) for a in ext.window(1) for k in (L, I)]
    for x in keys:
        for y in keys:
            expected = Element(dict(centerless_bracket(ext, x, y)))
            for c in builtins_for(plain):
                expected = expected + E(c.central_key, eval_cocycle(plain, c, x, y))
            assert bracket(ext, E(x), E(y)) == expected


def test_derived_prime_bracket_matches_its_four_cocycles():
    gp = AlgebraContext(1, -1, "derived-prime")
    keys = [k(a) for a in gp.window(3) for k in (L, I) if not (k is I and a == (0,))]
    for x in keys:
        for y in keys:
            expected = Element(dict(centerless_bracket(gp, x, y)))
            for c in builtins_for(gp):
                expected = expected + E(c.central_key, eval_cocycle(gp, c, x, y))
            assert bracket(gp, E(x), E(y)) == expected


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([0, 1, -2, Fraction(5, 7)]))
def test_bilinear_antisymmetric_graded(seed, lam):
    rng = random.Random(seed)
    ctx = AlgebraContext(2, lam, "extended")
    x, y, z = (rand_element(ctx, rng, 2) for _ in range(3))
    a, b = rand_scalar(rng, 2), rand_scalar(rng, 2)
    assert bracket(ctx, x * a + y * b, z) == bracket(ctx, x, z) * a + bracket(ctx, y, z) * b
    assert bracket(ctx, x, y) == -bracket(ctx, y, x)
    assert not bracket(ctx, x, x)


def test_abelian_ideal_and_grading():
    for variant in ("plain", "extended"):
        ctx = AlgebraContext(2, 0, variant)
        keys = [k(a) for a in ctx.window(2) for k in (L, I)]
        for x in keys:
            for y in keys:
                br = basis_bracket(ctx, x, y)
                for k in br:
                    if not k.is_central:
                        assert k.deg == group_add(x.deg, y.deg)
                    else:
                        assert is_zero(group_add(x.deg, y.deg))
                if x.kind == y.kind == "I":
                    assert all(k.is_central for k in br)
                    if variant == "plain":
                        assert not br


def test_element_round_trip():
    rng = random.Random(3)
    ctx = AlgebraContext(2, -2, "extended")
    for _ in range(50):
        x = rand_element(ctx, rng, 3, terms=4) + E(CLI(2), rand_scalar(rng, 2))
        assert parse_element(str(x), ctx) == x
