from fractions import Fraction

import pytest

from hvalg.algebra import I, L
from hvalg.cocycles import builtins_for, coboundary
from hvalg.derivations import families_for
from hvalg.errors import UnstableTruncation, VariantMismatch
from hvalg.grading import AlgebraContext
from hvalg.linalg import LinearSystem, solve_nullspace
from hvalg.oracle import (cocycle_certificate, der_dimension, derivation_certificate,
                          draw_assignment, h2_dimension)


def test_solve_nullspace_examples():
    s = LinearSystem(["x", "y"])
    s.add_equation({"x": 1, "y": 1})
    sol = solve_nullspace(s)
    assert len(sol) == 1 and sol[0]["x"] == -sol[0]["y"]
    assert len(solve_nullspace(LinearSystem(["a", "b", "c"]))) == 3
    s.add_equation({"x": 2, "y": 2})
    assert len(solve_nullspace(s)) == 1
    with pytest.raises(KeyError):
        s.add_equation({"z": 1})


def test_solutions_satisfy_system():
    s = LinearSystem(["a", "b", "c", "d"])
    s.add_equation({"a": Fraction(1, 2), "b": -3, "d": 1})
    s.add_equation({"b": 1, "c": 1})
    basis = solve_nullspace(s)
    assert len(basis) == 2
    for vec in basis:
        for eq in s.equations:
            assert sum(c * vec.get(s.variables[i], 0) for i, c in eq.items()) == 0


def test_assignments_are_deterministic_and_bounded():
    p = draw_assignment(31337, 3, 4)
    assert p == draw_assignment(31337, 3, 4)
    assert len(p) == 2 and all(abs(x.numerator) <= 10 ** 4 and x.denominator <= 10 ** 4 for x in p)
    assert draw_assignment(1, 1, 4) == ()


@pytest.mark.parametrize("ctx,expected", [
    (AlgebraContext(1, Fraction(5, 7)), 1),
    (AlgebraContext(1, 0), 3),
    (AlgebraContext(1, 1), 2),
    (AlgebraContext(1, -2), 1),
    (AlgebraContext(1, -1, "derived-prime"), 4),
])
def test_h2_rank1(ctx, expected):
    rep = h2_dimension(ctx, 4)
    assert rep.quotient_dim == expected and rep.stable
    assert rep.quotient_dim == rep.cocycle_dim - rep.coboundary_dim


def test_h2_rank2_lambda_minus2():
    rep = h2_dimension(AlgebraContext(2, -2), 3, seeds=[7, 8, 9], check_next=False)
    assert rep.quotient_dim == 2 and rep.stable and len(rep.seeds) == 3


@pytest.mark.parametrize("lam,expected", [(Fraction(5, 7), 3), (0, 4), (1, 3), (-2, 4), (-1, 4)])
def test_der_rank1_degree0(lam, expected):
    rep = der_dimension(AlgebraContext(1, lam), (0,), 4)
    assert rep.quotient_dim == expected and rep.stable


@pytest.mark.parametrize("lam", [0, 1, Fraction(5, 7)])
def test_der_rank1_nonzero_degree(lam):
    assert der_dimension(AlgebraContext(1, lam), (2,), 4).quotient_dim == 2


def test_preconditions():
    with pytest.raises(ValueError):
        h2_dimension(AlgebraContext(1, 0), 2)
    with pytest.raises(ValueError):
        der_dimension(AlgebraContext(1, 0), (0,), 2)
    with pytest.raises(VariantMismatch):
        h2_dimension(AlgebraContext(1, 0, "extended"), 4)
    with pytest.raises(VariantMismatch):
        der_dimension(AlgebraContext(1, -1, "derived-prime"), (0,), 4)


def test_unstable_is_reported(monkeypatch):
    import hvalg.oracle as oracle

    real = oracle._h2_once
    monkeypatch.setattr(oracle, "_h2_once",
                        lambda r, l, d, R, p: (lambda z, b: (z + (R % 2), b))(*real(r, l, d, R, p)))
    rep = oracle.h2_dimension(AlgebraContext(1, 0), 3, strict=False)
    assert not rep.stable
    with pytest.raises(UnstableTruncation):
        oracle.h2_dimension(AlgebraContext(1, 0), 3)


@pytest.mark.parametrize("ctx", [AlgebraContext(1, 0), AlgebraContext(1, 1), AlgebraContext(1, -2),
                                 AlgebraContext(1, Fraction(5, 7)),
                                 AlgebraContext(1, -1, "derived-prime"), AlgebraContext(2, -2)],
                         ids=lambda c: f"n{c.rank}-lam{c.lam}-{c.variant.value}")
def test_builtins_certified_independent(ctx):
    R = 4 if ctx.rank == 1 else 3
    forms = [(lambda c: lambda x, y: c.value(ctx, x, y))(c) for c in builtins_for(ctx)]
    cert = cocycle_certificate(ctx, R, forms)
    assert cert["cocycles"] and cert["independent"]
    assert cert["quotient_rank"] == len(forms) == h2_dimension(ctx, R, check_next=False).quotient_dim


def test_coboundary_is_not_independent():
    ctx = AlgebraContext(1, 0)
    cob = coboundary(ctx, {L((0,)): 1, I((0,)): 3, L((2,)): -1})
    cert = cocycle_certificate(ctx, 4, [lambda x, y: cob.value(ctx, x, y)])
    assert cert["cocycles"] and not cert["independent"]


def test_non_cocycle_is_rejected():
    ctx = AlgebraContext(1, Fraction(5, 7))
    from hvalg.scalars import Scalar

    def bogus(x, y):
        if x.kind == y.kind == "L" and sum(x.deg) + sum(y.deg) == 0:
            return Scalar(sum(x.deg)) ** 2 * (1 if sum(x.deg) > 0 else -1)
        return Scalar(0)

    assert not cocycle_certificate(ctx, 4, [bogus])["cocycles"]


@pytest.mark.parametrize("lam,expected", [(Fraction(5, 7), 3), (0, 4), (1, 3), (-2, 4), (-1, 4)])
def test_families_certify_derivation_space(lam, expected):
    ctx = AlgebraContext(1, lam)
    maps = [(lambda d: lambda k: d.image(ctx, k))(d) for d in families_for(ctx)]
    cert = derivation_certificate(ctx, 4, maps)
    assert cert["solutions"]
    assert cert["span_rank"] == cert["solution_dim"] == expected
