"""2-cocycles on g and g': builtin classified forms, coboundaries, tabulated forms.

A cocycle is evaluated on basis pairs through ``value(ctx, x, y)`` and
extended bilinearly by :func:`eval_cocycle`.  Cocycles live on the centerless
algebras, so an Extended context is rejected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import CI, CL, CLI, CLIP, Element, I, L, basis_keys, centerless_bracket, check_element
from .errors import GateViolation, LambdaMinusOne, OutOfWindow, VariantMismatch
from .grading import Variant, group_add, in_window, is_zero, unit, value
from .reports import CheckReport
from .scalars import ONE, ZERO, Scalar, as_scalar

_TWELFTH = Scalar(1) / 12

BUILTIN_KINDS = ("CLform", "CIform", "CLI0form", "CLI1form", "CLIiform",
                 "PrimeCI", "PrimeCLI", "PrimeCLIprime")


class Cocycle:
    def value(self, ctx, x, y):
        raise NotImplementedError

    def check_gate(self, ctx):
        pass

    def __add__(self, other):
        return CocycleSum([(ONE, self), (ONE, other)])

    def __sub__(self, other):
        return CocycleSum([(ONE, self), (-ONE, other)])

    def __rmul__(self, s):
        return CocycleSum([(as_scalar(s), self)])


@dataclass(frozen=True)
class Builtin(Cocycle):
    """One of the classified cocycles; ``index`` is only used by CLIiform."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in BUILTIN_KINDS:
            raise ValueError(f"unknown builtin cocycle {self.kind!r}")

    def __str__(self):
        return f"CLIiform({self.index})" if self.kind == "CLIiform" else self.kind

    def check_gate(self, ctx):
        k = self.kind
        if k.startswith("Prime"):
            if not ctx.derived_prime:
                raise GateViolation(f"{self} lives on g' (derived-prime variant)")
            return
        if k == "CLform":
            return
        if ctx.derived_prime:
            raise GateViolation(f"{self} is not a cocycle of g'")
        if k in ("CIform", "CLI0form") and ctx.lam != 0:
            raise GateViolation(f"{self} needs lambda = 0")
        if k == "CLI1form" and ctx.lam != 1:
            raise GateViolation(f"{self} needs lambda = 1")
        if k == "CLIiform":
            if ctx.lam != -2:
                raise GateViolation(f"{self} needs lambda = -2")
            if not 2 <= self.index <= ctx.rank:
                raise GateViolation(f"{self} needs 2 <= i <= rank = {ctx.rank}")

    @property
    def central_key(self):
        """The central generator of the extension that this form pairs with."""
        return {
            "CLform": CL, "CIform": CI, "CLI0form": CLI(0), "CLI1form": CLI(1),
            "CLIiform": CLI(self.index), "PrimeCI": CI, "PrimeCLI": CLI(0),
            "PrimeCLIprime": CLIP,
        }[self.kind]

    def value(self, ctx, x, y):
        if not is_zero(group_add(x.deg, y.deg)):
            return ZERO
        if x.kind == "I" and y.kind == "L":
            return -self.value(ctx, y, x)
        a = x.deg
        va = value(a)
        k = self.kind
        if x.kind == "L" and y.kind == "L":
            return (va ** 3 - va) * _TWELFTH if k == "CLform" else ZERO
        if x.kind == "I" and y.kind == "I":
            if k == "CIform":
                return va
            if k == "PrimeCI":
                return va.inverse()
            return ZERO
        if k == "CLI0form":
            return va * va + va
        if k == "CLI1form":
            return (va ** 3 - va) * _TWELFTH
        if k == "CLIiform":
            return Scalar(a[self.index - 1])
        if k == "PrimeCLI":
            return va
        if k == "PrimeCLIprime":
            return ONE
        return ZERO


def builtins_for(ctx):
    """The builtin cocycles whose gate ``ctx`` satisfies (a basis of H^2)."""
    if ctx.derived_prime:
        return [Builtin("CLform"), Builtin("PrimeCI"), Builtin("PrimeCLI"), Builtin("PrimeCLIprime")]
    out = [Builtin("CLform")]
    if ctx.lam == 0:
        out += [Builtin("CIform"), Builtin("CLI0form")]
    elif ctx.lam == 1:
        out.append(Builtin("CLI1form"))
    elif ctx.lam == -2:
        out += [Builtin("CLIiform", i) for i in range(2, ctx.rank + 1)]
    return out


@dataclass
class LinearFunctional:
    """Finitely supported values on basis keys.

    With ``radius`` set, asking for a key outside B_radius is an error;
    otherwise unlisted keys are 0.
    """

    values: dict = field(default_factory=dict)
    radius: int | None = None

    def __post_init__(self):
        self.values = {k: as_scalar(v) for k, v in self.values.items() if v}

    def __call__(self, key):
        if key.is_central:
            raise VariantMismatch(f"functionals are defined on g, not on {key}")
        if self.radius is not None and not in_window(key.deg, self.radius):
            raise OutOfWindow(f"{key} is outside B_{self.radius}")
        return self.values.get(key, ZERO)

    def apply(self, terms):
        total = ZERO
        for k, c in terms.items():
            total = total + c * self(k)
        return total


@dataclass(frozen=True, eq=False)
class Coboundary(Cocycle):
    f: LinearFunctional

    def value(self, ctx, x, y):
        return self.f.apply(centerless_bracket(ctx, x, y))


class Tabulated(Cocycle):
    """An explicit antisymmetric table on B_radius; missing entries are 0."""

    def __init__(self, radius, table=None):
        self.radius = radius
        self.table = {}
        for (x, y), v in (table or {}).items():
            v = as_scalar(v)
            if x == y and v:
                raise ValueError(f"tabulated form has nonzero diagonal entry at {x}")
            if (y, x) in self.table and self.table[(y, x)] != -v:
                raise ValueError(f"tabulated form is not antisymmetric at ({x}, {y})")
            if v:
                self.table[(x, y)] = v
                self.table[(y, x)] = -v

    @classmethod
    def from_cocycle(cls, ctx, c, radius):
        """Tabulate ``c`` on all pairs with degrees and degree sum in B_radius."""
        c.check_gate(ctx)
        keys = basis_keys(ctx, radius, central=False)
        table = {}
        for i, x in enumerate(keys):
            for y in keys[i + 1:]:
                if in_window(group_add(x.deg, y.deg), radius):
                    table[(x, y)] = c.value(ctx, x, y)
        return cls(radius, table)

    def with_entry(self, x, y, v):
        """A copy with the (x, y) entry replaced (and (y, x) set to its negative)."""
        out = Tabulated(self.radius)
        out.table = dict(self.table)
        v = as_scalar(v)
        out.table[(x, y)] = v
        out.table[(y, x)] = -v
        return out

    def value(self, ctx, x, y):
        for k in (x, y):
            if not in_window(k.deg, self.radius):
                raise OutOfWindow(f"{k} is outside the table window B_{self.radius}")
        return self.table.get((x, y), ZERO)


class CocycleSum(Cocycle):
    def __init__(self, terms):
        self.terms = [(as_scalar(s), c) for s, c in terms]

    def check_gate(self, ctx):
        for _, c in self.terms:
            c.check_gate(ctx)

    def value(self, ctx, x, y):
        total = ZERO
        for s, c in self.terms:
            if s:
                total = total + s * c.value(ctx, x, y)
        return total


# -- operations ---------------------------------------------------------------

def _check_ctx(ctx):
    if ctx.variant is Variant.EXTENDED:
        raise VariantMismatch("cocycles are forms on g or g', not on the central extension")


def eval_cocycle(ctx, c, x, y):
    """Bilinear evaluation ``c(x, y)`` for Elements (or basis keys)."""
    _check_ctx(ctx)
    c.check_gate(ctx)
    x = x if isinstance(x, Element) else Element.basis(x)
    y = y if isinstance(y, Element) else Element.basis(y)
    check_element(ctx, x)
    check_element(ctx, y)
    total = ZERO
    for kx, cx in x.items():
        for ky, cy in y.items():
            if kx.is_central or ky.is_central:
                raise VariantMismatch("cocycles take arguments in g, not central generators")
            v = c.value(ctx, kx, ky)
            if v:
                total = total + cx * cy * v
    return total


def coboundary(ctx, f):
    _check_ctx(ctx)
    if not isinstance(f, LinearFunctional):
        f = LinearFunctional(dict(f))
    return Coboundary(f)


def is_cocycle(ctx, c, radius):
    """Antisymmetry on pairs and the cocycle identity on triples inside B_radius.

    A triple is checked when all three degrees and all pairwise sums lie in
    the window, so every value the identity needs is defined.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    _check_ctx(ctx)
    c.check_gate(ctx)
    keys = basis_keys(ctx, radius, central=False)
    report = CheckReport(f"cocycle(R={radius})")
    cache = {}

    def phi(x, y):
        v = cache.get((x, y))
        if v is None:
            v = cache[(x, y)] = c.value(ctx, x, y)
        return v

    for i, x in enumerate(keys):
        for y in keys[i:]:
            if not in_window(group_add(x.deg, y.deg), radius):
                continue
            report.checked += 1
            if x == y:
                if phi(x, x):
                    report.fail(f"c({x},{x}) != 0")
            elif phi(x, y) + phi(y, x):
                report.fail(f"c({x},{y}) != -c({y},{x})")
    for x, y, z in itertools.combinations(keys, 3):
        a, b, d = x.deg, y.deg, z.deg
        if not (in_window(group_add(a, b), radius) and in_window(group_add(b, d), radius)
                and in_window(group_add(a, d), radius)):
            continue
        report.checked += 1
        total = ZERO
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            for k, coeff in centerless_bracket(ctx, p, q).items():
                v = phi(k, r)
                if v:
                    total = total + coeff * v
        if total:
            report.fail(f"cocycle identity fails on ({x}, {y}, {z}): {total}")
    return report


def gauge_functional(ctx, c, radius):
    """The functional f with c - phi_f in normal gauge on B_radius.

    f(X_a) = c(L_0, X_a)/a for a != 0, f(L_0) = c(L_-1, L_1)/2,
    f(I_0) = c(L_-1, I_1)/(lambda + 1).
    """
    _check_ctx(ctx)
    if ctx.lam == -1:
        raise LambdaMinusOne("the gauge needs lambda != -1 (f(I_0) divides by lambda + 1)")
    if radius < 1:
        raise ValueError("radius must be >= 1")
    c.check_gate(ctx)
    zero, e1 = ctx.zero(), unit(ctx.rank, 1)
    m1 = tuple(-x for x in e1)
    vals = {}
    for a in ctx.window(radius):
        if is_zero(a):
            vals[L(a)] = c.value(ctx, L(m1), L(e1)) / 2
            vals[I(a)] = c.value(ctx, L(m1), I(e1)) / (ctx.lam + 1)
        else:
            va = value(a)
            vals[L(a)] = c.value(ctx, L(zero), L(a)) / va
            vals[I(a)] = c.value(ctx, L(zero), I(a)) / va
    return LinearFunctional(vals, radius)


def normalize_cocycle(ctx, c, radius):
    """``(c - phi_f, f)`` with f from :func:`gauge_functional`."""
    f = gauge_functional(ctx, c, radius)
    return CocycleSum([(ONE, c), (-ONE, Coboundary(f))]), f


def window_values(ctx, c, radius):
    """Nonzero values of ``c`` on basis pairs x < y with degrees and sum in B_radius."""
    keys = basis_keys(ctx, radius, central=False)
    out = {}
    for i, x in enumerate(keys):
        for y in keys[i + 1:]:
            if in_window(group_add(x.deg, y.deg), radius):
                v = c.value(ctx, x, y)
                if v:
                    out[(x, y)] = v
    return out


def gauge_check(ctx, c, radius):
    """c vanishes on (L_0, L_a), (L_0, I_a), (L_-1, L_1), (L_-1, I_1) for a in B_radius."""
    zero, e1 = ctx.zero(), unit(ctx.rank, 1)
    m1 = tuple(-x for x in e1)
    pairs = [(L(m1), L(e1)), (L(m1), I(e1))]
    for a in ctx.window(radius):
        pairs += [(L(zero), L(a)), (L(zero), I(a))]
    report = CheckReport(f"gauge(R={radius})")
    for x, y in pairs:
        report.checked += 1
        v = c.value(ctx, x, y)
        if v:
            report.fail(f"c({x},{y}) = {v}")
    return report
