"""Random instances shared by the test modules."""

from fractions import Fraction

from hvalg.algebra import CI, CL, CLI, Element, I, L, basis_keys
from hvalg.automorphisms import AutParams, Character, ScaleUnit
from hvalg.cocycles import LinearFunctional
from hvalg.derivations import AddHom
from hvalg.scalars import Scalar


def rand_scalar(rng, rank=1, nonzero=False, poly=0.3):
    """Small rationals, with an e2..en part now and then for rank >= 2."""
    while True:
        v = Scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        if rank > 1 and rng.random() < poly:
            v = v + rng.randint(-3, 3) * Scalar.gen(rng.randint(2, rank))
        if v or not nonzero:
            return v


def rand_params(ctx, rng, l2=True):
    """Random parameters with only the lambda-gated slots set."""
    n, lam = ctx.rank, ctx.lam
    kw = {
        "xi": rng.choice([ScaleUnit.identity(n), ScaleUnit.minus(n)]),
        "chi": Character(tuple(rand_scalar(rng, n, nonzero=True) for _ in range(n))),
        "l": rand_scalar(rng, n, nonzero=True),
    }
    if lam != 1:
        kw["l1"] = rand_scalar(rng, n)
    if lam == 0:
        kw["l0"] = rand_scalar(rng, n)
    if lam == -1 and l2:
        kw["l2"] = rand_scalar(rng, n)
    if lam == -2:
        kw["l3"] = rand_scalar(rng, n)
    if lam == 1:
        kw["f"] = AddHom(tuple(rand_scalar(rng, n) for _ in range(n)))
    return AutParams.create(ctx, **kw)


def rand_functional(ctx, rng, radius):
    """Random values on every basis key of B_radius."""
    return LinearFunctional({k: rand_scalar(rng, ctx.rank)
                             for k in basis_keys(ctx, radius, central=False)})


def rand_i_element(ctx, rng, radius, terms=3):
    pts = [a for a in ctx.window(radius) if not (ctx.derived_prime and not any(a))]
    return Element({I(rng.choice(pts)): rand_scalar(rng, ctx.rank) for _ in range(terms)})


def rand_element(ctx, rng, radius, terms=3):
    pts = list(ctx.window(radius))
    out = {}
    for _ in range(terms):
        a = rng.choice(pts)
        kind = rng.choice([L, I]) if not (ctx.derived_prime and not any(a)) else L
        out[kind(a)] = rand_scalar(rng, ctx.rank)
    return Element(out)


def expected_central(lam, th, rank):
    """Central images transcribed directly from the lift formulas."""
    u, l, l1 = th.xi.u, th.l, th.l1
    out = {CL: Element.basis(CL, u)}
    if lam == 0:
        out[CL] = out[CL] - (Element.basis(CLI(0), 2) + Element.basis(CI, l1)) * (12 * l1 * u)
        out[CLI(0)] = (Element.basis(CLI(0)) + Element.basis(CI, l1)) * (l * u)
        out[CI] = Element.basis(CI, l * l * u)
    if lam == 1:
        out[CLI(1)] = Element.basis(CLI(1), l * u * u)
    if lam == -2:
        for i in range(2, rank + 1):
            acc = Element.zero()
            ei = Scalar.gen(i)
            for j in range(2, rank + 1):
                acc = acc + Element.basis(CLI(j), th.xi.M[i - 1][j - 1] - ei * th.xi.M[0][j - 1])
            out[CLI(i)] = acc * (l * u.inverse())
    return out
