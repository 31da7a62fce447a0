"""Exact arithmetic in the rational function field Q(e2, ..., en).

A :class:`Scalar` is a reduced fraction of two polynomials over Q.  The
indeterminates e2..en stand for the (transcendental) complex numbers
eps_2..eps_n of a fixed Z-basis 1, eps_2, ..., eps_n of the grading group.

Polynomial arithmetic is delegated to sympy's sparse polynomial rings; this
module adds canonical forms, specialization and a stable text form.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .errors import DivisionByZero, SpecializationPole

#: Largest supported rank; indeterminates are e2..e{MAX_RANK}.
MAX_RANK = 8

RING, *GENS = ring(",".join(f"e{i}" for i in range(2, MAX_RANK + 1)), QQ)
_NVARS = len(GENS)
_ONE = RING.one
_ZERO = RING.zero


def _mono_key(monom):
    # graded lex with e2 < e3 < ... < en
    return (sum(monom), monom[::-1])


def _leading_coeff(p):
    return max(p.terms(), key=lambda t: _mono_key(t[0]))[1]


def _to_ground(x):
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ.convert(x)


class Scalar:
    """Immutable element of Q(e2, ..., en) in canonical form.

    Canonical form: ``gcd(num, den) = 1`` and ``den`` has leading coefficient
    1 under graded lex order with e2 < ... < en.  Polynomials share the ring's
    ``one`` object as denominator, which keeps the common case cheap.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.num, self.den = value.num, value.den
        elif isinstance(value, (int, Fraction)) or isinstance(value, _RationalABC):
            self.num = RING.ground_new(_to_ground(value))
            self.den = _ONE
        else:
            raise TypeError(f"cannot make a Scalar from {value!r}")
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def _raw(cls, num, den=_ONE):
        s = object.__new__(cls)
        s.num = num
        s.den = den
        s._hash = None
        return s

    @classmethod
    def from_polys(cls, num, den=None):
        """Build and normalize ``num/den`` from sympy ring elements."""
        if den is None or den == _ONE:
            return cls._raw(num)
        if not den:
            raise DivisionByZero("zero denominator")
        return cls._canonical(num, den)

    @classmethod
    def _canonical(cls, num, den):
        if not num:
            return cls._raw(_ZERO)
        if den.is_ground:
            c = den.LC
            return cls._raw(num.quo_ground(c))
        _, num, den = num.cofactors(den)
        c = _leading_coeff(den)
        if c != 1:
            num = num.quo_ground(c)
            den = den.quo_ground(c)
        if den == _ONE:
            den = _ONE
        return cls._raw(num, den)

    @classmethod
    def gen(cls, i):
        """The indeterminate e_i (2 <= i <= MAX_RANK)."""
        if not 2 <= i <= MAX_RANK:
            raise ValueError(f"no indeterminate e{i}; supported e2..e{MAX_RANK}")
        return cls._raw(GENS[i - 2])

    @classmethod
    def parse(cls, text):
        from .grammar import parse_scalar

        return parse_scalar(text)

    def normalized(self):
        return Scalar._canonical(self.num, self.den) if self.den is not _ONE else self

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den is _ONE

    def is_rational(self):
        return self.den is _ONE and self.num.is_ground

    def variables(self):
        """Indices i of the indeterminates e_i that occur."""
        used = set()
        for p in (self.num, self.den):
            for m in p.keys():
                used.update(j + 2 for j, e in enumerate(m) if e)
        return sorted(used)

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        c = self.num.LC if self.num else 0
        return Fraction(int(c.numerator), int(c.denominator)) if c else Fraction(0)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        return NotImplemented

    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        if self.den is _ONE and other.den is _ONE:
            return Scalar._raw(self.num + other.num)
        if self.den == other.den:
            return Scalar._canonical(self.num + other.num, self.den)
        return Scalar._canonical(self.num * other.den + other.num * self.den,
                                 self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        if self.den is _ONE and other.den is _ONE:
            return Scalar._raw(self.num * other.num)
        return Scalar._canonical(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return Scalar._canonical(self.den, self.num)

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivisionByZero(f"division of {self} by zero")
        if other.den is _ONE and other.num.is_ground:
            return Scalar._raw(self.num.quo_ground(other.num.LC), self.den)
        return Scalar._canonical(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.den is _ONE:
            return Scalar._raw(self.num ** k)
        return Scalar._raw(self.num ** k, self.den ** k)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # -- evaluation ---------------------------------------------------------

    def specialize(self, assignment):
        """Evaluate exactly at ``e_{i+2} = assignment[i]``; returns a Fraction."""
        return specialize(self, assignment)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{self}')"


ZERO = Scalar(0)
ONE = Scalar(1)


def as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return Scalar.parse(x)
    return Scalar(x)


def _eval_poly(p, point):
    total = Fraction(0)
    for monom, c in p.terms():
        term = Fraction(int(c.numerator), int(c.denominator))
        for j, e in enumerate(monom):
            if e:
                if j >= len(point):
                    raise ValueError(f"no value assigned to e{j + 2}")
                term *= point[j] ** e
        total += term
    return total


def specialize(x, assignment):
    """Exact value of ``x`` at the point e2..en = assignment.

    Raises :class:`SpecializationPole` if the denominator vanishes there.
    """
    x = as_scalar(x)
    point = [Fraction(v) for v in assignment]
    den = _eval_poly(x.den, point)
    if den == 0:
        raise SpecializationPole(f"{x} has a pole at {[str(v) for v in point]}")
    return _eval_poly(x.num, point) / den


def _fmt_rational(c):
    c = Fraction(int(c.numerator), int(c.denominator))
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_monomial(monom):
    parts = []
    for j, e in enumerate(monom):
        if e == 1:
            parts.append(f"e{j + 2}")
        elif e:
            parts.append(f"e{j + 2}^{e}")
    return "*".join(parts)


def format_poly(p):
    if not p:
        return "0"
    out = []
    for monom, c in sorted(p.terms(), key=lambda t: _mono_key(t[0]), reverse=True):
        neg = c < 0
        mag = -c if neg else c
        body = _fmt_monomial(monom)
        if not body:
            text = _fmt_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_fmt_rational(mag)}*{body}"
        if not out:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


_ATOM = re.compile(r"^(\d+|e\d+(\^\d+)?)$")


def _is_atomic(text):
    return bool(_ATOM.match(text))


def format_scalar(x):
    """Text form that :func:`hvalg.grammar.parse_scalar` reads back exactly."""
    if x.den is _ONE:
        return format_poly(x.num)
    num = format_poly(x.num)
    den = format_poly(x.den)
    if not _is_atomic(num):
        num = f"({num})"
    if not _is_atomic(den):
        den = f"({den})"
    return f"{num}/{den}"


def needs_parens(x):
    """True when ``x`` must be parenthesized as a factor in a product."""
    return not _is_atomic(format_scalar(x))
