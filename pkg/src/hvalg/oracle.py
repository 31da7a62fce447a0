"""Brute-force recomputation of H^2 and derivation-space dimensions on windows.

Everything here is rebuilt from the defining brackets with specialized
rational values of e2..en; nothing is taken from the closed-form cocycles or
derivation families.  The 2-cocycle system splits by total degree t (the sum
of the degrees in a triple), so each degree block is eliminated on its own.

Truncation: unknowns phi(U, V) exist for window keys U, V whose degree sum is
in the window; a cocycle equation is used only when every degree it touches
(each key, each pairwise sum, the total) lies in the window.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import UnstableTruncation, VariantMismatch
from .grading import Variant, group_add, group_sub, in_window, is_zero, window
from .linalg import Echelon

#: Default specialization seeds (one assignment of e2..en per seed).
DEFAULT_SEEDS = (20240611, 31337, 8675309)

SEED_BOUND = 10 ** 4

_L, _I = 0, 1


@dataclass
class DimReport:
    cocycle_dim: int
    coboundary_dim: int
    quotient_dim: int
    radius: int
    seeds: list = field(default_factory=list)
    stable: bool = True
    runs: list = field(default_factory=list)

    def to_dict(self):
        return {
            "cocycle_dim": self.cocycle_dim,
            "coboundary_dim": self.coboundary_dim,
            "quotient_dim": self.quotient_dim,
            "radius": self.radius,
            "seeds": self.seeds,
            "stable": self.stable,
            "runs": self.runs,
        }


# -- specialization -----------------------------------------------------------

def draw_assignment(seed, rank, radius):
    """Rational values for e2..en drawn from ``seed``; redrawn until generic enough.

    Generic enough: the value map stays injective on B_{3*radius}, i.e. no
    nonzero lattice vector of that size evaluates to 0.
    """
    if rank == 1:
        return ()
    rng = random.Random(seed)
    while True:
        point = tuple(
            Fraction(rng.choice([-1, 1]) * rng.randint(1, SEED_BOUND), rng.randint(1, SEED_BOUND))
            for _ in range(rank - 1))
        if _injective(point, rank, 3 * radius):
            return point


def _injective(point, rank, radius):
    for a in window(rank, radius):
        if not is_zero(a) and _value(a, point) == 0:
            return False
    return True


def _value(a, point):
    return a[0] + sum((ai * p for ai, p in zip(a[1:], point)), Fraction(0))


class _Structure:
    """Integer-scaled structure constants of g (or g') at a specialization point.

    All constants are multiplied by one common positive factor, which leaves
    every homogeneous equation built from them unchanged.
    """

    def __init__(self, rank, lam, point, radius):
        self.rank = rank
        self.lnum, self.lden = lam.numerator, lam.denominator
        den = lcm(1, *(p.denominator for p in point))
        self.scaled = {}
        for a in window(rank, 2 * radius + 1):
            v = _value(a, point) * den
            self.scaled[a] = int(v)

    def bracket(self, x, y):
        """``[x, y]`` for keys ``(type, deg)`` as ``(key, coeff)`` or None."""
        tx, a = x
        ty, b = y
        s = group_add(a, b)
        va, vb = self.scaled[a], self.scaled[b]
        if tx == _L and ty == _L:
            c = self.lden * (vb - va)
            return ((_L, s), c) if c else None
        if tx == _L and ty == _I:
            c = self.lden * vb - self.lnum * va
            return ((_I, s), c) if c else None
        if tx == _I and ty == _L:
            c = self.lden * va - self.lnum * vb
            return ((_I, s), -c) if c else None
        return None


# -- H^2 ----------------------------------------------------------------------

def _keys(rank, radius, derived_prime):
    keys = []
    for a in window(rank, radius):
        keys.append((_L, a))
        if not (derived_prime and is_zero(a)):
            keys.append((_I, a))
    return keys


def _shell(a):
    return max((abs(x) for x in a), default=0)


class _Block:
    """Unknowns, coboundary rows and cocycle equations of the degree-t block."""

    def __init__(self, st, keys, radius, t):
        self.st, self.keys, self.radius, self.t = st, keys, radius, t
        by_deg = {}
        for k in keys:
            by_deg.setdefault(k[1], []).append(k)
        self.by_deg = by_deg
        self.order = order = {k: i for i, k in enumerate(keys)}
        pairs = []
        for u in keys:
            for v in by_deg.get(group_sub(t, u[1]), ()):
                if order[u] < order[v]:
                    pairs.append((u, v))
        # pairs touching degree 0 get the largest columns so that rows coming from
        # triples through L_0 have distinct pivots
        pairs.sort(key=lambda p: (-min(_shell(p[0][1]), _shell(p[1][1])), order[p[0]], order[p[1]]))
        self.pairs = pairs
        self.col = {p: i for i, p in enumerate(pairs)}

    def coboundary_rows(self):
        if not in_window(self.t, self.radius):
            return
        for w in self.by_deg.get(self.t, ()):
            vec = {}
            for (u, v), j in self.col.items():
                br = self.st.bracket(u, v)
                if br and br[0] == w:
                    vec[j] = br[1]
            yield vec

    def _phi(self, u, v, coeff, row):
        if u == v:
            return
        if self.order[u] < self.order[v]:
            j = self.col.get((u, v))
        else:
            j = self.col.get((v, u))
            coeff = -coeff
        if j is None:
            raise AssertionError("equation references a missing unknown")
        row[j] = row.get(j, 0) + coeff

    def equations(self):
        keys, radius, t, st = self.keys, self.radius, self.t, self.st
        for i, x in enumerate(keys):
            a = x[1]
            for j in range(i + 1, len(keys)):
                y = keys[j]
                b = y[1]
                c = group_sub(group_sub(t, a), b)
                if not in_window(c, radius):
                    continue
                if not (in_window(group_add(a, b), radius) and in_window(group_add(a, c), radius)
                        and in_window(group_add(b, c), radius)):
                    continue
                for z in self.by_deg.get(c, ()):
                    if self.order[z] <= j:
                        continue
                    row = {}
                    for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
                        br = st.bracket(p, q)
                        if br:
                            self._phi(br[0], r, br[1], row)
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        yield row


def _block_dims(st, keys, radius, t):
    """(cocycle nullity, coboundary rank) of the degree-t block."""
    block = _Block(st, keys, radius, t)
    n = len(block.pairs)
    if n == 0:
        return 0, 0
    cob = Echelon()
    for vec in block.coboundary_rows():
        cob.add(vec)
    target = n - cob.rank
    eqs = Echelon()
    if target <= 0:
        return n - eqs.rank, cob.rank
    for row in block.equations():
        if eqs.add(row) and eqs.rank >= target:
            break
    return n - eqs.rank, cob.rank


def _h2_once(rank, lam, derived_prime, radius, point):
    st = _Structure(rank, lam, point, radius)
    keys = _keys(rank, radius, derived_prime)
    cocycle = coboundary = 0
    for t in window(rank, radius):
        z, b = _block_dims(st, keys, radius, t)
        cocycle += z
        coboundary += b
    return cocycle, coboundary


def _assignments(ctx, radius, seeds):
    if ctx.rank == 1:
        return [((), None)]
    seeds = list(DEFAULT_SEEDS if seeds is None else seeds)
    if len(seeds) == 0:
        raise ValueError("rank >= 2 needs at least one specialization seed")
    return [(draw_assignment(s, ctx.rank, radius), s) for s in seeds]


def _fmt_point(point):
    return [str(p) for p in point]


def h2_dimension(ctx, radius, seeds=None, check_next=True, strict=True):
    """Dimension of the truncated second cohomology of g (or g') on B_radius.

    Runs at ``radius`` and, with ``check_next``, at ``radius + 1``, over every
    seed; ``stable`` says whether all runs agree.
    """
    if ctx.variant is Variant.EXTENDED:
        raise VariantMismatch("h2_dimension works on g or g', not on the central extension")
    if radius < 3:
        raise ValueError("h2_dimension needs radius >= 3")
    derived_prime = ctx.variant is Variant.DERIVED_PRIME
    radii = [radius, radius + 1] if check_next else [radius]
    runs = []
    for R in radii:
        for point, seed in _assignments(ctx, radius + 1, seeds):
            z, b = _h2_once(ctx.rank, ctx.lam, derived_prime, R, point)
            runs.append({"radius": R, "seed": seed, "point": _fmt_point(point),
                         "cocycle_dim": z, "coboundary_dim": b, "quotient_dim": z - b})
    first = runs[0]
    stable = len({r["quotient_dim"] for r in runs}) == 1
    report = DimReport(first["cocycle_dim"], first["coboundary_dim"], first["quotient_dim"],
                       radius, [r["point"] for r in runs if r["radius"] == radius and r["point"]],
                       stable, runs)
    if strict and not stable:
        raise UnstableTruncation(f"H^2 dimension differs across runs: {runs}")
    return report


# -- derivations --------------------------------------------------------------

def _der_system(rank, lam, degree, radius, point):
    """Unknown columns and Leibniz rows for degree-``degree`` maps on B_radius.

    Unknown (X, a, Z) is the coefficient of Z_{a+d} in sigma(X_a).
    """
    st = _Structure(rank, lam, point, radius + _shell(degree))
    d = degree
    pts = [a for a in window(rank, radius) if in_window(group_add(a, d), radius)]
    ptset = set(pts)
    col = {}
    for a in pts:
        for X in (_L, _I):
            for Z in (_L, _I):
                col[(X, a, Z)] = len(col)

    def rows():
        keys = [(X, a) for a in pts for X in (_L, _I)]
        for i, x in enumerate(keys):
            X, a = x
            for y in keys[i + 1:]:
                Y, b = y
                s = group_add(a, b)
                if s not in ptset:
                    continue
                out = {_L: {}, _I: {}}
                # sigma([x, y])
                br = st.bracket(x, y)
                if br:
                    (W, _), c = br
                    for Z in (_L, _I):
                        j = col[(W, s, Z)]
                        out[Z][j] = out[Z].get(j, 0) + c
                # - [sigma x, y] - [x, sigma y]
                for Zp in (_L, _I):
                    br = st.bracket((Zp, group_add(a, d)), y)
                    if br:
                        (Z, _), c = br
                        j = col[(X, a, Zp)]
                        out[Z][j] = out[Z].get(j, 0) - c
                    br = st.bracket(x, (Zp, group_add(b, d)))
                    if br:
                        (Z, _), c = br
                        j = col[(Y, b, Zp)]
                        out[Z][j] = out[Z].get(j, 0) - c
                for row in out.values():
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        yield row

    return col, rows()


def _der_once(rank, lam, degree, radius, point):
    col, rows = _der_system(rank, lam, degree, radius, point)
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return len(col) - ech.rank, len(col)


def der_dimension(ctx, degree, radius, seeds=None, check_next=True, strict=True):
    """Dimension of the space of degree-``degree`` derivations of g on B_radius.

    Not quotiented by inner derivations.
    """
    if ctx.variant is not Variant.PLAIN:
        raise VariantMismatch("der_dimension works on the plain algebra g")
    if radius < 3:
        raise ValueError("der_dimension needs radius >= 3")
    degree = tuple(degree)
    radii = [radius, radius + 1] if check_next else [radius]
    runs = []
    for R in radii:
        for point, seed in _assignments(ctx, radius + 1 + _shell(degree), seeds):
            dim, n = _der_once(ctx.rank, ctx.lam, degree, R, point)
            runs.append({"radius": R, "seed": seed, "point": _fmt_point(point),
                         "dim": dim, "unknowns": n})
    first = runs[0]
    stable = len({r["dim"] for r in runs}) == 1
    report = DimReport(first["dim"], 0, first["dim"], radius,
                       [r["point"] for r in runs if r["radius"] == radius and r["point"]],
                       stable, runs)
    if strict and not stable:
        raise UnstableTruncation(f"derivation dimension differs across runs: {runs}")
    return report


# -- certificates -------------------------------------------------------------

def _algebra_key(k):
    from .algebra import I, L

    return L(k[1]) if k[0] == _L else I(k[1])


def _dot(row, vec):
    return sum((c * vec[j] for j, c in row.items() if j in vec), Fraction(0))


def cocycle_certificate(ctx, radius, forms, seed=None):
    """Check that ``forms`` (callables on basis-key pairs) are independent cocycle classes.

    Each form is tabulated on the window at a specialization point, tested
    against every cocycle equation, and the forms together with the coboundary
    space are checked for full rank.  Returns a dict with ``cocycles`` (all
    equations hold), ``independent`` and the per-form membership list.
    """
    from .scalars import specialize

    derived_prime = ctx.variant is Variant.DERIVED_PRIME
    point = () if ctx.rank == 1 else draw_assignment(DEFAULT_SEEDS[0] if seed is None else seed,
                                                     ctx.rank, radius)
    st = _Structure(ctx.rank, ctx.lam, point, radius)
    keys = _keys(ctx.rank, radius, derived_prime)
    offset = 0
    vectors = [dict() for _ in forms]
    member = [True] * len(forms)
    cob = Echelon()
    for t in window(ctx.rank, radius):
        block = _Block(st, keys, radius, t)
        for (u, v), j in block.col.items():
            x, y = _algebra_key(u), _algebra_key(v)
            for vec, form in zip(vectors, forms):
                val = specialize(form(x, y), point)
                if val:
                    vec[offset + j] = val
        for row in block.coboundary_rows():
            cob.add({offset + j: c for j, c in row.items()})
        for row in block.equations():
            for i, vec in enumerate(vectors):
                if member[i] and _dot({offset + j: c for j, c in row.items()}, vec):
                    member[i] = False
        offset += len(block.pairs)
    base = cob.rank
    for vec in vectors:
        cob.add(vec)
    return {
        "cocycles": all(member),
        "member": member,
        "independent": cob.rank - base == len(forms),
        "quotient_rank": cob.rank - base,
        "point": _fmt_point(point),
    }


def derivation_certificate(ctx, radius, maps, seed=None):
    """Check that degree-0 ``maps`` (callables key -> {key: Scalar}) solve the
    derivation system on B_radius, and compare their rank with its dimension."""
    from .scalars import specialize

    point = () if ctx.rank == 1 else draw_assignment(DEFAULT_SEEDS[0] if seed is None else seed,
                                                     ctx.rank, radius + 1)
    degree = (0,) * ctx.rank
    col, rows = _der_system(ctx.rank, ctx.lam, degree, radius, point)
    vectors = []
    for m in maps:
        vec = {}
        for (X, a, Z), j in col.items():
            coeff = m(_algebra_key((X, a))).get(_algebra_key((Z, a)))
            if coeff is not None and coeff:
                vec[j] = specialize(coeff, point)
        vectors.append(vec)
    member = [True] * len(maps)
    ech = Echelon()
    for row in rows:
        ech.add(row)
        for i, vec in enumerate(vectors):
            if member[i] and _dot(row, vec):
                member[i] = False
    span = Echelon()
    for vec in vectors:
        span.add(vec)
    return {
        "solutions": all(member),
        "member": member,
        "span_rank": span.rank,
        "solution_dim": len(col) - ech.rank,
        "point": _fmt_point(point),
    }
