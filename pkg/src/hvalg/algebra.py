"""Elements of g(G, lambda), its universal central extension and g', and the bracket.

Brackets of basis vectors::

    [L_a, L_b] = (b - a) L_{a+b}
    [L_a, I_b] = (b - lambda a) I_{a+b}
    [I_a, I_b] = 0

plus, in the extended variants, central terms supported on a + b = 0.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

from .errors import InactiveCentralKey, RankMismatch, VariantMismatch
from .grading import Variant, format_group, group_add, in_window, is_zero, value
from .reports import CheckReport
from .scalars import ONE, ZERO, Scalar, as_scalar, format_scalar, needs_parens

_KIND_ORDER = {"L": 0, "I": 1, "CL": 2, "CI": 3, "CLI": 4, "CLIP": 5}


class Key(NamedTuple):
    """A basis vector: ``L``/``I`` with a degree, or a central generator."""

    kind: str
    deg: tuple = ()
    idx: int = 0

    @property
    def is_central(self):
        return self.kind not in ("L", "I")

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.deg, self.idx)

    def __str__(self):
        if self.kind in ("L", "I"):
            return self.kind + format_group(self.deg)
        if self.kind == "CLI":
            return f"CLI{self.idx}"
        return self.kind


def L(a):
    return Key("L", tuple(a))


def I(a):  # noqa: E743
    return Key("I", tuple(a))


CL = Key("CL")
CI = Key("CI")
CLIP = Key("CLIP")


def CLI(i):
    return Key("CLI", (), i)


def central_key(kind, idx=0):
    return Key(kind, (), idx)


class Element:
    """A finite linear combination of basis keys with Scalar coefficients.

    Zero coefficients are never stored, so equality is plain dict equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for k, c in items:
                c = as_scalar(c)
                if k in clean:
                    c = clean[k] + c
                if c:
                    clean[k] = c
                else:
                    clean.pop(k, None)
        self._terms = clean

    @classmethod
    def _wrap(cls, terms):
        e = object.__new__(cls)
        e._terms = terms
        return e

    @classmethod
    def basis(cls, key, coeff=ONE):
        coeff = as_scalar(coeff)
        return cls._wrap({key: coeff} if coeff else {})

    @classmethod
    def zero(cls):
        return cls._wrap({})

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key):
        return self._terms.get(key, ZERO)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return Element._wrap(out)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Element._wrap({k: -c for k, c in self._terms.items()})

    def __mul__(self, s):
        s = Scalar._coerce(s)
        if s is NotImplemented:
            return s
        if not s:
            return Element.zero()
        return Element._wrap({k: c * s for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def project(self, keep):
        return Element._wrap({k: c for k, c in self._terms.items() if keep(k)})

    def central_part(self):
        return self.project(lambda k: k.is_central)

    def noncentral_part(self):
        return self.project(lambda k: not k.is_central)

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element('{self}')"


def _accumulate(out, items, scale=None):
    for k, c in items:
        if scale is not None:
            c = c * scale
        if k in out:
            c = out[k] + c
            if c:
                out[k] = c
            else:
                del out[k]
        elif c:
            out[k] = c
    return out


def format_element(x):
    """``coef*KEY`` terms joined by `` + ``/`` - ``; coefficients always shown."""
    if not x:
        return "0"
    parts = []
    for k, c in x.sorted_items():
        neg = format_scalar(c).startswith("-")
        mag = -c if neg else c
        text = format_scalar(mag)
        if needs_parens(mag):
            text = f"({text})"
        body = f"{text}*{k}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# -- validation ---------------------------------------------------------------

def check_key(ctx, key):
    if key.is_central:
        if (key.kind, key.idx) not in ctx.central:
            raise InactiveCentralKey(f"{key} is not a central generator of {ctx.describe()}")
        return
    if len(key.deg) != ctx.rank:
        raise RankMismatch(f"{key} does not have rank {ctx.rank}")
    if ctx.derived_prime and key.kind == "I" and is_zero(key.deg):
        raise VariantMismatch("I at degree 0 is not in the derived subalgebra g'")


def check_element(ctx, x):
    for k in x.keys():
        check_key(ctx, k)
    return x


def basis_keys(ctx, radius, central=True):
    """Basis vectors with degree in the window B_radius (plus active central keys)."""
    keys = []
    for a in ctx.window(radius):
        keys.append(L(a))
        if not (ctx.derived_prime and is_zero(a)):
            keys.append(I(a))
    if central:
        keys.extend(central_key(kind, idx) for kind, idx in ctx.central)
    return keys


# -- bracket ------------------------------------------------------------------

_TWELFTH = Scalar(1) / 12


def _central_LL(ctx, va):
    return {CL: (va ** 3 - va) * _TWELFTH}


def _central_LI(ctx, a, va):
    if ctx.derived_prime:
        return {CLI(0): va, CLIP: ONE}
    lam = ctx.lam
    if lam == 0:
        return {CLI(0): va * va + va}
    if lam == 1:
        return {CLI(1): (va ** 3 - va) * _TWELFTH}
    if lam == -2:
        return {CLI(i): Scalar(ai) for i, ai in enumerate(a, start=1) if i >= 2}
    return {}


@lru_cache(maxsize=1 << 18)
def basis_bracket(ctx, x, y):
    """``[x, y]`` for basis keys as a read-only ``{Key: Scalar}`` dict."""
    if x.is_central or y.is_central:
        return {}
    if x.kind == "I" and y.kind == "L":
        return {k: -c for k, c in basis_bracket(ctx, y, x).items()}
    a, b = x.deg, y.deg
    s = group_add(a, b)
    va, vb = value(a), value(b)
    centered = ctx.variant is not Variant.PLAIN and is_zero(s)
    out = {}
    if x.kind == "L" and y.kind == "L":
        c = vb - va
        if c:
            out[L(s)] = c
        if centered:
            out.update(_central_LL(ctx, va))
    elif x.kind == "L":
        c = vb - va * ctx.lam
        if c:
            out[I(s)] = c
        if centered:
            out.update(_central_LI(ctx, a, va))
    elif centered:
        if ctx.derived_prime:
            out[CI] = va.inverse()
        elif ctx.lam == 0:
            out[CI] = va
    return {k: c for k, c in out.items() if c}


def bracket(ctx, x, y):
    """Bilinear extension of the basis bracket; checks both operands against ctx."""
    check_element(ctx, x)
    check_element(ctx, y)
    return _bracket(ctx, x, y)


@lru_cache(maxsize=64)
def plain_context(ctx):
    """The same (rank, lambda) without central terms."""
    return ctx if ctx.variant is Variant.PLAIN else ctx.with_variant(Variant.PLAIN)


def centerless_bracket(ctx, x, y):
    """``[x, y]`` of basis keys in g (or g') with central terms dropped."""
    return basis_bracket(plain_context(ctx), x, y)


def _bracket(ctx, x, y):
    out = {}
    for kx, cx in x.items():
        if kx.is_central:
            continue
        for ky, cy in y.items():
            if ky.is_central:
                continue
            br = basis_bracket(ctx, kx, ky)
            if br:
                _accumulate(out, br.items(), cx * cy)
    return Element._wrap(out)


def _bracket_dict_key(ctx, terms, key, out, sign=1):
    # out += sign * [sum(terms), key]
    for k, c in terms.items():
        br = basis_bracket(ctx, k, key)
        if br:
            _accumulate(out, br.items(), c if sign == 1 else -c)


def jacobi_check(ctx, radius):
    """Antisymmetry and Jacobi on every basis pair/triple with degrees in B_radius."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    keys = basis_keys(ctx, radius)
    report = CheckReport(f"jacobi(R={radius})")
    for i, x in enumerate(keys):
        for y in keys[i:]:
            report.checked += 1
            xy = basis_bracket(ctx, x, y)
            yx = basis_bracket(ctx, y, x)
            if x == y:
                if xy:
                    report.fail(f"[{x},{x}] != 0")
            elif _accumulate(dict(xy), yx.items()):
                report.fail(f"[{x},{y}] != -[{y},{x}]")
    for x, y, z in itertools.combinations(keys, 3):
        report.checked += 1
        out = {}
        _bracket_dict_key(ctx, basis_bracket(ctx, x, y), z, out)
        _bracket_dict_key(ctx, basis_bracket(ctx, y, z), x, out)
        _bracket_dict_key(ctx, basis_bracket(ctx, z, x), y, out)
        if out:
            report.fail(f"Jacobi fails on ({x}, {y}, {z}): {Element._wrap(out)}")
    return report


def window_pairs(ctx, radius, central=True):
    """Ordered basis pairs (x, y) with deg x, deg y, deg x + deg y in B_radius."""
    keys = basis_keys(ctx, radius, central=central)
    for x in keys:
        for y in keys:
            if not x.is_central and not y.is_central:
                if not in_window(group_add(x.deg, y.deg), radius):
                    continue
            yield x, y
