"""Derivations of g: the degree-0 families, inner derivations, and lifts to the extension.

A descriptor maps basis keys to ``{Key: Scalar}`` images; :func:`der_apply`
extends that linearly.  Degree-0 families on g::

    phi:      L_a -> a I_a,          I_a -> 0
    psi:      L_a -> 0,              I_a -> I_a
    sigma_0:  L_a -> I_a             (lambda = 0)
    sigma_-1: L_a -> a^2 I_a         (lambda = -1)
    sigma_-2: L_a -> a^3 I_a         (lambda = -2)
    xi_A:     L_a -> A(a) L_a,       I_a -> A(a) I_a
    eta_A,1:  L_a -> A(a) I_a        (lambda = 1)

The lambda = 0 lifts act on the central generators too (C_LI is CLI0).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (CI, CL, CLI, Element, I, L, _accumulate, _bracket, basis_bracket,
                      basis_keys, check_element, check_key)
from .errors import GateViolation, RankMismatch, VariantMismatch
from .grading import Variant, is_zero, value
from .reports import CheckReport
from .scalars import ONE, ZERO, Scalar, as_scalar

_CLI0 = CLI(0)


@dataclass(frozen=True)
class AddHom:
    """An additive map G -> Q(e2..en), given by its values on eps_1..eps_n."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))

    @classmethod
    def identity(cls, rank):
        """a -> value(a)."""
        return cls((ONE,) + tuple(Scalar.gen(i) for i in range(2, rank + 1)))

    @classmethod
    def zero(cls, rank):
        return cls((ZERO,) * rank)

    @property
    def rank(self):
        return len(self.values)

    def __call__(self, a):
        if len(a) != len(self.values):
            raise RankMismatch(f"{a} does not have rank {len(self.values)}")
        total = ZERO
        for ai, v in zip(a, self.values):
            if ai:
                total = total + ai * v
        return total

    def __add__(self, other):
        return AddHom(tuple(x + y for x, y in zip(self.values, other.values)))

    def __rmul__(self, s):
        return AddHom(tuple(s * v for v in self.values))

    def __neg__(self):
        return AddHom(tuple(-v for v in self.values))

    def __str__(self):
        from .scalars import format_scalar

        return ",".join(format_scalar(v) for v in self.values)


class Derivation:
    """Base class; subclasses provide ``check_gate`` and ``image``."""

    name = "?"

    def degree(self, rank):
        return (0,) * rank

    def check_gate(self, ctx):
        raise NotImplementedError

    def image(self, ctx, key):
        raise NotImplementedError

    def __str__(self):
        return self.name


def _need_lambda(ctx, lam, what):
    if ctx.lam != lam:
        raise GateViolation(f"{what} needs lambda = {lam}")


def _need_variant(ctx, variant, what):
    if ctx.variant is not variant:
        raise VariantMismatch(f"{what} acts on the {variant.value} variant, not {ctx.variant.value}")


def _rank_of(ctx, hom, what):
    if hom.rank != ctx.rank:
        raise RankMismatch(f"{what} has rank {hom.rank}, context has rank {ctx.rank}")


class _Family(Derivation):
    """Degree-0 derivation of the centerless g given by functions on degrees."""

    lam = None

    def check_gate(self, ctx):
        _need_variant(ctx, Variant.PLAIN, self.name)
        if self.lam is not None:
            _need_lambda(ctx, self.lam, self.name)

    def on_L(self, a):
        """(coefficient of L_a, coefficient of I_a) in the image of L_a."""
        return ZERO, ZERO

    def on_I(self, a):
        """Coefficient of I_a in the image of I_a."""
        return ZERO

    def image(self, ctx, key):
        a = key.deg
        if key.kind == "L":
            cl, ci = self.on_L(a)
            return {k: c for k, c in ((L(a), cl), (I(a), ci)) if c}
        c = self.on_I(a)
        return {I(a): c} if c else {}


class Phi(_Family):
    name = "Phi"

    def on_L(self, a):
        return ZERO, value(a)


class Psi(_Family):
    name = "Psi"

    def on_I(self, a):
        return ONE


class Sigma0(_Family):
    name = "Sigma0"
    lam = 0

    def on_L(self, a):
        return ZERO, ONE


class SigmaM1(_Family):
    name = "SigmaM1"
    lam = -1

    def on_L(self, a):
        return ZERO, value(a) ** 2


class SigmaM2(_Family):
    name = "SigmaM2"
    lam = -2

    def on_L(self, a):
        return ZERO, value(a) ** 3


@dataclass(frozen=True)
class Xi(_Family):
    A: AddHom

    def __str__(self):
        return f"Xi({self.A})"

    name = property(__str__)

    def check_gate(self, ctx):
        super().check_gate(ctx)
        _rank_of(ctx, self.A, self.name)

    def on_L(self, a):
        return self.A(a), ZERO

    def on_I(self, a):
        return self.A(a)


@dataclass(frozen=True)
class Eta1(_Family):
    A: AddHom
    lam = 1

    def __str__(self):
        return f"Eta1({self.A})"

    name = property(__str__)

    def check_gate(self, ctx):
        super().check_gate(ctx)
        _rank_of(ctx, self.A, self.name)

    def on_L(self, a):
        return ZERO, self.A(a)


@dataclass(frozen=True)
class _Ad(Derivation):
    a: tuple

    def degree(self, rank):
        return tuple(self.a)

    def check_gate(self, ctx):
        check_key(ctx, self.generator)

    def image(self, ctx, key):
        return basis_bracket(ctx, self.generator, key)


class AdL(_Ad):
    """ad L_a (in whatever variant the context names)."""

    @property
    def generator(self):
        return L(self.a)

    def __str__(self):
        return f"AdL[{','.join(map(str, self.a))}]"


class AdI(_Ad):
    @property
    def generator(self):
        return I(self.a)

    def __str__(self):
        return f"AdI[{','.join(map(str, self.a))}]"


@dataclass(frozen=True)
class LiftedTrivial(Derivation):
    """The unique lift (lambda != 0, -1) of a degree-0 family of g.

    It kills the center, except that the lift of psi fixes the C_LI generators
    (psi rescales I, so the pairing of L with I is rescaled with it).
    """

    inner: _Family

    def __str__(self):
        return f"Lift({self.inner})"

    def check_gate(self, ctx):
        _need_variant(ctx, Variant.EXTENDED, str(self))
        if ctx.lam in (0, -1):
            raise GateViolation("Lift(...) needs lambda not in {0, -1}; use the lambda = 0 lift families instead")
        if not isinstance(self.inner, _Family):
            raise GateViolation("only degree-0 families are lifted this way")
        self.inner.check_gate(ctx.with_variant(Variant.PLAIN))

    def image(self, ctx, key):
        if key.is_central:
            if key.kind == "CLI" and isinstance(self.inner, Psi):
                return {key: ONE}
            return {}
        return self.inner.image(ctx, key)


class _Lift0(Derivation):
    """A lambda = 0 lift, given by its images of L_a, I_a and the three central keys."""

    def check_gate(self, ctx):
        _need_variant(ctx, Variant.EXTENDED, str(self))
        _need_lambda(ctx, 0, str(self))

    def image(self, ctx, key):
        out = {}
        if key.kind == "L":
            a = key.deg
            self.lift_L(a, value(a), is_zero(a), out)
        elif key.kind == "I":
            a = key.deg
            self.lift_I(a, value(a), is_zero(a), out)
        else:
            out.update(self.central.get(key, {}))
        return {k: c for k, c in out.items() if c}

    central = {}


class LiftPhiBar(_Lift0):
    name = "PhiBar"
    central = {CL: {_CLI0: Scalar(-24)}, _CLI0: {CI: ONE}}

    def lift_L(self, a, va, at0, out):
        out[I(a)] = va
        if at0:
            out[_CLI0] = ONE

    def lift_I(self, a, va, at0, out):
        if at0:
            out[CI] = ONE


class LiftSigma0Bar(_Lift0):
    name = "Sigma0Bar"

    def lift_L(self, a, va, at0, out):
        out[I(a)] = ONE
        if at0:
            out[_CLI0] = -ONE

    def lift_I(self, a, va, at0, out):
        if at0:
            out[CI] = -ONE


@dataclass(frozen=True)
class LiftXiBar(_Lift0):
    """Lift of xi_A with parameters (l, k).

    On I_0 and C_LI the signs differ from the printed family: the Leibniz rule
    on [L_a, I_-a] forces I_0 -> (k - l) C_I and C_LI -> k C_I.
    """

    A: AddHom
    l: Scalar
    k: Scalar

    def __post_init__(self):
        object.__setattr__(self, "l", as_scalar(self.l))
        object.__setattr__(self, "k", as_scalar(self.k))

    def __str__(self):
        from .scalars import format_scalar

        return f"XiBar({self.A};{format_scalar(self.l)},{format_scalar(self.k)})"

    def check_gate(self, ctx):
        super().check_gate(ctx)
        _rank_of(ctx, self.A, str(self))

    @property
    def central(self):
        return {CL: {_CLI0: -24 * self.k}, _CLI0: {CI: self.k}}

    def lift_L(self, a, va, at0, out):
        out[L(a)] = self.A(a)
        out[I(a)] = self.l + self.k * va
        if at0:
            out[_CLI0] = self.k - self.l

    def lift_I(self, a, va, at0, out):
        out[I(a)] = self.A(a)
        if at0:
            out[CI] = self.k - self.l


@dataclass(frozen=True)
class LiftPsiBar(_Lift0):
    l: Scalar
    k: Scalar

    def __post_init__(self):
        object.__setattr__(self, "l", as_scalar(self.l))
        object.__setattr__(self, "k", as_scalar(self.k))

    def __str__(self):
        from .scalars import format_scalar

        return f"PsiBar({format_scalar(self.l)},{format_scalar(self.k)})"

    @property
    def central(self):
        return {CL: {_CLI0: -24 * self.k}, _CLI0: {_CLI0: ONE, CI: self.k}, CI: {CI: Scalar(2)}}

    def lift_L(self, a, va, at0, out):
        out[I(a)] = self.l + self.k * va
        if at0:
            out[_CLI0] = self.k - self.l

    def lift_I(self, a, va, at0, out):
        out[I(a)] = ONE
        if at0:
            out[CI] = self.k - self.l


class Override(Derivation):
    """``base`` with some basis images replaced; used for negative controls."""

    def __init__(self, base, table):
        self.base = base
        self.table = {k: (v if isinstance(v, Element) else Element(v)) for k, v in table.items()}

    def __str__(self):
        return f"Override({self.base})"

    def degree(self, rank):
        return self.base.degree(rank)

    def check_gate(self, ctx):
        self.base.check_gate(ctx)

    def image(self, ctx, key):
        if key in self.table:
            return dict(self.table[key].items())
        return self.base.image(ctx, key)


# -- operations ---------------------------------------------------------------

def der_apply(ctx, d, x):
    d.check_gate(ctx)
    check_element(ctx, x)
    return _apply(ctx, d, x)


def _apply(ctx, d, x):
    out = {}
    for k, c in x.items():
        _accumulate(out, d.image(ctx, k).items(), c)
    return Element._wrap(out)


def leibniz_check(ctx, d, radius):
    """``d[x, y] = [dx, y] + [x, dy]`` for all basis pairs with degrees in B_radius."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    d.check_gate(ctx)
    keys = basis_keys(ctx, radius)
    report = CheckReport(f"leibniz({d}, R={radius})")
    images = {k: Element._wrap(dict(d.image(ctx, k))) for k in keys}
    for i, x in enumerate(keys):
        dx = images[x]
        for y in keys[i:]:
            report.checked += 1
            lhs = _apply(ctx, d, Element._wrap(dict(basis_bracket(ctx, x, y))))
            rhs = _bracket(ctx, dx, Element.basis(y)) + _bracket(ctx, Element.basis(x), images[y])
            if lhs != rhs:
                report.fail(f"Leibniz fails on ({x}, {y}): d[x,y] - [dx,y] - [x,dy] = {lhs - rhs}")
    return report


def inner_derivation_identity_check(ctx, radius):
    """ad L_0 = xi_id, and ad I_0 = lambda * phi (so ad I_0 = 0 at lambda = 0)."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    _need_variant(ctx, Variant.PLAIN, "inner_derivation_identity_check")
    zero = ctx.zero()
    xi_id, phi = Xi(AddHom.identity(ctx.rank)), Phi()
    ad_l0, ad_i0 = AdL(zero), AdI(zero)
    lam = Scalar(ctx.lam)
    report = CheckReport(f"inner-identities(R={radius})")
    for k in basis_keys(ctx, radius, central=False):
        x = Element.basis(k)
        report.checked += 1
        if _apply(ctx, ad_l0, x) != _apply(ctx, xi_id, x):
            report.fail(f"ad L_0 != xi_id on {k}")
        report.checked += 1
        if _apply(ctx, ad_i0, x) != _apply(ctx, phi, x) * lam:
            report.fail(f"ad I_0 != lambda*phi on {k}")
    return report


def families_for(ctx):
    """Degree-0 families whose gate holds in the plain context (a spanning set)."""
    rank = ctx.rank
    out = [Phi(), Psi()]
    out += [Xi(AddHom(tuple(ONE if j == i else ZERO for j in range(rank)))) for i in range(rank)]
    if ctx.lam == 0:
        out.append(Sigma0())
    elif ctx.lam == -1:
        out.append(SigmaM1())
    elif ctx.lam == -2:
        out.append(SigmaM2())
    elif ctx.lam == 1:
        out += [Eta1(AddHom(tuple(ONE if j == i else ZERO for j in range(rank)))) for i in range(rank)]
    return out
