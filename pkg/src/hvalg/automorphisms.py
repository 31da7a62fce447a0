"""Automorphisms theta_lambda(xi, chi, f, l, l0, l1, l2, l3) of g and their lifts.

On g::

    L_a -> xi^-1 chi(a) L_{xi a} + chi(a) tau(a) I_{xi a}
    I_a -> l chi(a) I_{xi a}

    tau(a) = l0 [lambda=0] + l1 a + l2 a^2 [lambda=-1] + l3 a^3 [lambda=-2] + f(a) [lambda=1]

xi is a unit with xi G = G, carried as ``ScaleUnit(u, M)``: u is the complex
value and row i of the integer matrix M holds the coordinates of xi*eps_i, so
the degree a maps to the row vector a.M.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .algebra import (CI, CL, CLI, Element, I, L, _accumulate, _bracket, basis_bracket,
                      basis_keys, check_element)
from .derivations import AddHom
from .errors import GateViolation, LambdaMinusOne, NonzeroL2, RankMismatch, VariantMismatch
from .grading import Variant, is_zero, value
from .reports import CheckReport
from .scalars import ONE, ZERO, Scalar, as_scalar

_CLI0 = CLI(0)
_24TH = Scalar(1) / 24


@dataclass(frozen=True)
class ScaleUnit:
    u: Scalar
    M: tuple

    def __post_init__(self):
        u = as_scalar(self.u)
        M = tuple(tuple(int(x) for x in row) for row in self.M)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "M", M)
        n = len(M)
        if n == 0 or any(len(row) != n for row in M):
            raise RankMismatch("M must be a square integer matrix")
        det = sympy.Matrix(M).det()
        if det not in (1, -1):
            raise ValueError(f"det M = {det}, expected +-1")
        for i, row in enumerate(M):
            if u * value(_unit(n, i)) != value(row):
                raise ValueError(f"u * eps_{i + 1} != sum_j M[{i + 1}][j] eps_j")

    @classmethod
    def identity(cls, rank):
        return cls(ONE, _identity(rank))

    @classmethod
    def minus(cls, rank):
        return cls(-ONE, tuple(tuple(-x for x in row) for row in _identity(rank)))

    @property
    def rank(self):
        return len(self.M)

    def act(self, a):
        """Coordinates of xi*a."""
        return tuple(sum(ai * row[j] for ai, row in zip(a, self.M)) for j in range(len(self.M)))

    def then(self, other):
        """``other . self`` (apply self first)."""
        n = len(self.M)
        M = tuple(tuple(sum(self.M[i][k] * other.M[k][j] for k in range(n)) for j in range(n))
                  for i in range(n))
        return ScaleUnit(other.u * self.u, M)

    def inverse(self):
        inv = sympy.Matrix(self.M).inv()
        return ScaleUnit(self.u.inverse(), tuple(tuple(int(x) for x in inv.row(i)) for i in range(inv.rows)))

    def __str__(self):
        from .scalars import format_scalar

        rows = ";".join(",".join(str(x) for x in row) for row in self.M)
        return f"{format_scalar(self.u)}|{rows}"


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def _identity(n):
    return tuple(_unit(n, i) for i in range(n))


@dataclass(frozen=True)
class Character:
    """chi(a) = prod chi(eps_i)^a_i."""

    values: tuple

    def __post_init__(self):
        vals = tuple(as_scalar(v) for v in self.values)
        if any(not v for v in vals):
            raise ValueError("character values must be nonzero")
        object.__setattr__(self, "values", vals)

    @classmethod
    def trivial(cls, rank):
        return cls((ONE,) * rank)

    @property
    def rank(self):
        return len(self.values)

    def __call__(self, a):
        out = ONE
        for ai, v in zip(a, self.values):
            if ai:
                out = out * v ** ai
        return out

    def __mul__(self, other):
        return Character(tuple(x * y for x, y in zip(self.values, other.values)))

    def inverse(self):
        return Character(tuple(v.inverse() for v in self.values))

    def pullback(self, xi):
        """a -> chi(xi a)."""
        return Character(tuple(self(row) for row in xi.M))

    def __str__(self):
        from .scalars import format_scalar

        return ",".join(format_scalar(v) for v in self.values)


def _pull_hom(f, xi):
    # a -> f(xi a)
    return AddHom(tuple(f(row) for row in xi.M))


@dataclass(frozen=True)
class AutParams:
    xi: ScaleUnit
    chi: Character
    f: AddHom
    l: Scalar
    l0: Scalar = ZERO
    l1: Scalar = ZERO
    l2: Scalar = ZERO
    l3: Scalar = ZERO

    def __post_init__(self):
        for name in ("l", "l0", "l1", "l2", "l3"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not self.l:
            raise ValueError("l must be nonzero")
        n = self.xi.rank
        if self.chi.rank != n or self.f.rank != n:
            raise RankMismatch("xi, chi and f must have the same rank")

    @classmethod
    def identity(cls, rank):
        return cls(ScaleUnit.identity(rank), Character.trivial(rank), AddHom.zero(rank), ONE)

    @classmethod
    def create(cls, ctx, xi=None, chi=None, f=None, l=ONE, l0=ZERO, l1=ZERO, l2=ZERO, l3=ZERO):
        """Build and gate-check against ``ctx``; omitted slots are neutral."""
        n = ctx.rank
        p = cls(xi or ScaleUnit.identity(n), chi or Character.trivial(n), f or AddHom.zero(n),
                l, l0, l1, l2, l3)
        p.check_gate(ctx)
        return p

    @property
    def rank(self):
        return self.xi.rank

    def check_gate(self, ctx):
        if self.rank != ctx.rank:
            raise RankMismatch(f"parameters have rank {self.rank}, context has rank {ctx.rank}")
        lam = ctx.lam
        if self.l0 and lam != 0:
            raise GateViolation("l0 is only allowed at lambda = 0")
        if self.l2 and lam != -1:
            raise GateViolation("l2 is only allowed at lambda = -1")
        if self.l3 and lam != -2:
            raise GateViolation("l3 is only allowed at lambda = -2")
        if any(self.f.values) and lam != 1:
            raise GateViolation("f is only allowed at lambda = 1")
        if self.l1 and lam == 1:
            raise GateViolation("at lambda = 1, l1 is absorbed into f and must be 0")

    def tau(self, a):
        va = value(a)
        return self.l0 + self.l1 * va + self.l2 * va ** 2 + self.l3 * va ** 3 + self.f(a)

    def to_dict(self):
        from .scalars import format_scalar

        return {
            "xi": str(self.xi), "chi": str(self.chi), "f": str(self.f),
            **{k: format_scalar(getattr(self, k)) for k in ("l", "l0", "l1", "l2", "l3")},
        }


@dataclass(frozen=True)
class InnerAut:
    """exp(ad u) for u in the span of the I_a."""

    u: Element

    def __post_init__(self):
        if any(k.kind != "I" for k in self.u.keys()):
            raise ValueError("an inner automorphism exp(ad u) needs u in the span of the I_a")


# -- application --------------------------------------------------------------

def _need_plain(ctx, what):
    if ctx.variant is not Variant.PLAIN:
        raise VariantMismatch(f"{what} acts on the plain algebra g")


def _aut_image(theta, key):
    a = key.deg
    b = theta.xi.act(a)
    ch = theta.chi(a)
    if key.kind == "L":
        out = {L(b): theta.xi.u.inverse() * ch}
        t = theta.tau(a)
        if t:
            out[I(b)] = ch * t
        return out
    return {I(b): theta.l * ch}


def _linear(image, x):
    out = {}
    for k, c in x.items():
        _accumulate(out, image(k).items(), c)
    return Element._wrap(out)


def aut_apply(ctx, theta, x):
    _need_plain(ctx, "aut_apply")
    theta.check_gate(ctx)
    check_element(ctx, x)
    return _linear(lambda k: _aut_image(theta, k), x)


def inner_apply(ctx, iota, x):
    """``x + [u, x]``; exact because (ad u)^2 = 0 for u in the I-span."""
    _need_plain(ctx, "inner_apply")
    check_element(ctx, iota.u)
    check_element(ctx, x)
    return x + _bracket(ctx, iota.u, x)


def conjugate_inner(ctx, theta, iota):
    """theta . exp(ad u) . theta^-1 = exp(ad theta(u))."""
    return InnerAut(aut_apply(ctx, theta, iota.u))


def rescaling(xi):
    """The isomorphism L_a -> xi^-1 L_{xi a}, I_a -> xi^-1 I_{xi a}."""
    n = xi.rank
    return AutParams(xi, Character.trivial(n), AddHom.zero(n), xi.u.inverse())


# -- group law ----------------------------------------------------------------

def aut_compose(theta2, theta1):
    """Parameters of ``theta2 . theta1`` (theta1 applied first)."""
    xi, xi2 = theta1.xi, theta2.xi
    uinv = xi.u.inverse()
    f_pull = _pull_hom(theta2.f, xi)
    return AutParams(
        xi=xi.then(xi2),
        chi=theta2.chi.pullback(xi) * theta1.chi,
        f=AddHom(tuple(uinv * p + theta2.l * v for p, v in zip(f_pull.values, theta1.f.values))),
        l=theta2.l * theta1.l,
        l0=uinv * theta2.l0 + theta2.l * theta1.l0,
        l1=theta2.l1 + theta2.l * theta1.l1,
        l2=xi.u * theta2.l2 + theta2.l * theta1.l2,
        l3=xi.u ** 2 * theta2.l3 + theta2.l * theta1.l3,
    )


def aut_inverse(theta):
    xi_inv = theta.xi.inverse()
    u, linv = theta.xi.u, theta.l.inverse()
    f_inv = _pull_hom(theta.f, xi_inv)
    return AutParams(
        xi=xi_inv,
        chi=theta.chi.inverse().pullback(xi_inv),
        f=AddHom(tuple(-linv * u * v for v in f_inv.values)),
        l=linv,
        l0=-linv * u * theta.l0,
        l1=-linv * theta.l1,
        l2=-linv * u.inverse() * theta.l2,
        l3=-linv * u.inverse() ** 2 * theta.l3,
    )


@dataclass(frozen=True)
class Factors:
    t: ScaleUnit
    n: Character
    s: Scalar
    k: tuple

    def params(self):
        """The four automorphisms (T, N, S, K) with theta = T . N . S . K."""
        rank = self.t.rank
        one, triv, zero_f = ScaleUnit.identity(rank), Character.trivial(rank), AddHom.zero(rank)
        f, l0, l1, l2, l3 = self.k
        return (
            AutParams(self.t, triv, zero_f, ONE),
            AutParams(one, self.n, zero_f, ONE),
            AutParams(one, triv, zero_f, self.s),
            AutParams(one, triv, f, ONE, l0, l1, l2, l3),
        )

    def recompose(self):
        t, n, s, k = self.params()
        return aut_compose(t, aut_compose(n, aut_compose(s, k)))


def aut_factor(theta):
    linv = theta.l.inverse()
    k = (AddHom(tuple(linv * v for v in theta.f.values)),
         linv * theta.l0, linv * theta.l1, linv * theta.l2, linv * theta.l3)
    return Factors(theta.xi, theta.chi, theta.l, k)


# -- lifts to the central extension ------------------------------------------

def _lift_image(ctx, theta, key):
    lam = ctx.lam
    u = theta.xi.u
    uinv = u.inverse()
    l, l0, l1 = theta.l, theta.l0, theta.l1
    M = theta.xi.M
    out = {}
    if key.kind in ("L", "I"):
        out.update(_aut_image(theta, key))
        if not is_zero(key.deg):
            return out
        if key.kind == "L":
            extra = {CL: (uinv - u) * _24TH}
            if lam == 0:
                extra[_CLI0] = l1 * u - l0
                extra[CI] = u * (l1 * l1 - l0 * l0) / 2
        else:
            extra = {}
            if lam == 1:
                extra[CLI(1)] = l * u * (uinv - u) * _24TH
            elif lam == 0:
                extra[_CLI0] = l * u * (1 - uinv)
                extra[CI] = l * u * (l1 - l0)
            elif lam == -2:
                for i in range(2, ctx.rank + 1):
                    extra[CLI(i)] = l * uinv * M[0][i - 1]
        _accumulate(out, extra.items())
        return out
    if key == CL:
        out[CL] = u
        if lam == 0:
            out[_CLI0] = -24 * l1 * u
            out[CI] = -12 * l1 * l1 * u
    elif key == CI:
        out[CI] = l * l * u
    elif key.kind == "CLI":
        i = key.idx
        if i == 0:
            out[_CLI0] = l * u
            out[CI] = l * u * l1
        elif i == 1:
            out[CLI(1)] = l * u * u
        else:
            ei = value(_unit(ctx.rank, i - 1))
            for j in range(2, ctx.rank + 1):
                out[CLI(j)] = l * uinv * (M[i - 1][j - 1] - ei * M[0][j - 1])
    return {k: c for k, c in out.items() if c}


def aut_lift_apply(ctx, theta, x):
    """The unique extension of theta to the central extension (lambda != -1, l2 = 0)."""
    if ctx.lam == -1:
        raise LambdaMinusOne("lifts are only given for lambda != -1")
    if ctx.variant is not Variant.EXTENDED:
        raise VariantMismatch("aut_lift_apply acts on the central extension")
    if theta.l2:
        raise NonzeroL2("the lift formulas assume l2 = 0")
    theta.check_gate(ctx)
    check_element(ctx, x)
    return _linear(lambda k: _lift_image(ctx, theta, k), x)


# -- homomorphism check -------------------------------------------------------

def as_map(ctx, m):
    """An Element -> Element callable for AutParams, InnerAut, or a callable."""
    if isinstance(m, AutParams):
        if ctx.variant is Variant.EXTENDED:
            return lambda x: aut_lift_apply(ctx, m, x)
        return lambda x: aut_apply(ctx, m, x)
    if isinstance(m, InnerAut):
        return lambda x: inner_apply(ctx, m, x)
    return m


def hom_check(ctx, m, radius):
    """``m[x, y] = [m x, m y]`` for all basis pairs with degrees in B_radius."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    fn = as_map(ctx, m)
    keys = basis_keys(ctx, radius)
    images = {k: fn(Element.basis(k)) for k in keys}
    report = CheckReport(f"hom(R={radius})")
    for i, x in enumerate(keys):
        for y in keys[i:]:
            report.checked += 1
            br = basis_bracket(ctx, x, y)
            lhs = fn(Element._wrap(dict(br))) if br else Element.zero()
            rhs = _bracket(ctx, images[x], images[y])
            if lhs != rhs:
                report.fail(f"m[{x},{y}] - [m {x}, m {y}] = {lhs - rhs}")
    return report

