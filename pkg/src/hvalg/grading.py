"""The grading lattice G = Z eps_1 + ... + Z eps_n and the algebra context.

Group elements are plain integer tuples ``(a1, ..., an)``; their complex value
is ``a1 + a2*e2 + ... + an*en`` with eps_1 = 1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import GateViolation, RankMismatch
from .scalars import MAX_RANK, Scalar


def group_add(a, b):
    if len(a) != len(b):
        raise RankMismatch(f"{a} and {b} have different rank")
    return tuple(x + y for x, y in zip(a, b))


def group_neg(a):
    return tuple(-x for x in a)


def group_sub(a, b):
    if len(a) != len(b):
        raise RankMismatch(f"{a} and {b} have different rank")
    return tuple(x - y for x, y in zip(a, b))


def is_zero(a):
    return not any(a)


def zero(rank):
    return (0,) * rank


def unit(rank, i=1):
    """The basis vector eps_i (1-based)."""
    return tuple(int(j == i - 1) for j in range(rank))


@lru_cache(maxsize=1 << 16)
def value(a):
    """The element ``a`` as a Scalar: a1 + a2*e2 + ... + an*en."""
    if len(a) > MAX_RANK:
        raise RankMismatch(f"rank {len(a)} exceeds MAX_RANK={MAX_RANK}")
    v = Scalar(a[0])
    for i, ai in enumerate(a[1:], start=2):
        if ai:
            v = v + ai * Scalar.gen(i)
    return v


def in_window(a, radius):
    return all(-radius <= x <= radius for x in a)


@lru_cache(maxsize=256)
def window(rank, radius):
    """All a with |a_i| <= radius, ordered by max-norm shell then lexicographically."""
    pts = itertools.product(range(-radius, radius + 1), repeat=rank)
    return tuple(sorted(pts, key=lambda a: (max((abs(x) for x in a), default=0), a)))


def format_group(a):
    return "[" + ",".join(str(x) for x in a) + "]"


class Variant(enum.Enum):
    PLAIN = "plain"
    EXTENDED = "extended"
    DERIVED_PRIME = "derived-prime"


@dataclass(frozen=True)
class AlgebraContext:
    """Which algebra we are in: g(G, lambda), its central extension, or g'.

    ``central`` lists the active central generators as ``(kind, index)`` pairs.
    """

    rank: int
    lam: Fraction
    variant: Variant = Variant.PLAIN
    central: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lam = Fraction(self.lam)
        variant = Variant(self.variant)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "variant", variant)
        if not 1 <= self.rank <= MAX_RANK:
            raise RankMismatch(f"rank must be in 1..{MAX_RANK}, got {self.rank}")
        if variant is Variant.EXTENDED and lam == -1:
            raise GateViolation("the central extension needs lambda != -1")
        if variant is Variant.DERIVED_PRIME and lam != -1:
            raise GateViolation("the derived subalgebra g' needs lambda = -1")
        object.__setattr__(self, "central", _central_keys(self.rank, lam, variant))

    def delta_lambda(self, c):
        return self.lam == Fraction(c)

    @property
    def extended(self):
        return self.variant is Variant.EXTENDED

    @property
    def derived_prime(self):
        return self.variant is Variant.DERIVED_PRIME

    def window(self, radius):
        return window(self.rank, radius)

    def zero(self):
        return zero(self.rank)

    def unit(self, i=1):
        return unit(self.rank, i)

    def with_variant(self, variant):
        return AlgebraContext(self.rank, self.lam, variant)

    def describe(self):
        lam = self.lam
        text = str(lam.numerator) if lam.denominator == 1 else f"{lam.numerator}/{lam.denominator}"
        return {"rank": self.rank, "lambda": text, "variant": self.variant.value}


def _central_keys(rank, lam, variant):
    if variant is Variant.PLAIN:
        return ()
    if variant is Variant.DERIVED_PRIME:
        return (("CL", 0), ("CI", 0), ("CLI", 0), ("CLIP", 0))
    keys = [("CL", 0)]
    if lam == 0:
        keys += [("CI", 0), ("CLI", 0)]
    elif lam == 1:
        keys.append(("CLI", 1))
    elif lam == -2:
        keys += [("CLI", i) for i in range(2, rank + 1)]
    return tuple(keys)
