"""Sparse exact linear algebra over Q with fraction-free integer elimination.

Rows are dicts ``{column: coefficient}``.  Pivoting is deterministic: a row's
pivot is its smallest column, and rows are processed in the order given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm


def integer_row(row):
    """Scale a rational row to a primitive integer row (content 1, same kernel)."""
    row = {c: v for c, v in row.items() if v}
    if not row:
        return {}
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items()}
    return _primitive(out)


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class Echelon:
    """Incrementally maintained row echelon form of an integer matrix."""

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        row = integer_row(row)
        pivots = self.pivots
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                return row
            p, r = piv[lead], row[lead]
            g = gcd(p, r)
            mp, mr = p // g, r // g
            new = {c: mp * v for c, v in row.items()} if mp != 1 else dict(row)
            for c, v in piv.items():
                w = new.get(c, 0) - mr * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = _primitive(new) if new else new
        return row

    def add(self, row):
        """Insert a row; returns True iff the rank grew."""
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        if row[lead] < 0:
            row = {c: -v for c, v in row.items()}
        self.pivots[lead] = row
        return True

    def contains(self, row):
        return not self.reduce(row)

    def nullspace(self, ncols):
        """Basis of ``{x : A x = 0}`` as dicts ``{column: Fraction}``."""
        pivot_cols = sorted(self.pivots, reverse=True)
        free = [c for c in range(ncols) if c not in self.pivots]
        basis = []
        for f in free:
            x = {f: Fraction(1)}
            for c in pivot_cols:
                row = self.pivots[c]
                s = sum((v * x[j] for j, v in row.items() if j != c and j in x), Fraction(0))
                if s:
                    x[c] = -s / row[c]
            basis.append(x)
        return basis


@dataclass
class LinearSystem:
    """Homogeneous sparse system over named unknowns."""

    variables: list = field(default_factory=list)
    equations: list = field(default_factory=list)

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.variables)}

    def var(self, name):
        i = self._index.get(name)
        if i is None:
            i = self._index[name] = len(self.variables)
            self.variables.append(name)
        return i

    def index(self, name):
        return self._index[name]

    def add_equation(self, coeffs):
        """Add ``sum coeffs[name] * name = 0``; undeclared names are errors."""
        row = {}
        for name, c in coeffs.items():
            if name not in self._index:
                raise KeyError(f"undeclared unknown {name!r}")
            i = self._index[name]
            row[i] = row.get(i, 0) + c
        self.equations.append(row)


def solve_nullspace(system):
    """Basis of the solution space of a homogeneous :class:`LinearSystem`."""
    ech = Echelon()
    for row in system.equations:
        ech.add(row)
    return [{system.variables[c]: v for c, v in vec.items() if v}
            for vec in ech.nullspace(len(system.variables))]


def rank(rows):
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech.rank
