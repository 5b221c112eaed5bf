"""Fraction-free exact linear algebra over the rationals.

Rows are scaled to primitive integer vectors and eliminated by
cross-multiplication with gcd reduction, so no rational arithmetic happens
until the final normalisation of a reduced row echelon form to Fraction
entries.  Row spaces, ranks and membership tests are exact by construction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _strip_content(row):
    """Divide out the gcd and make the first nonzero entry positive."""
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    for v in row:
        if v:
            if v < 0:
                row = [-u for u in row]
            break
    return row


def int_row(row):
    """Primitive integer vector spanning the same line as ``row``.

    Entries may be ints or Fractions; denominators are cleared first.
    """
    den = 1
    for v in row:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    ints = []
    for v in row:
        if isinstance(v, Fraction):
            ints.append(int(v * den))
        else:
            ints.append(int(v) * den)
    return _strip_content(ints)


def _first_nonzero(row, start):
    for c in range(start, len(row)):
        if row[c]:
            return c
    return None


class IntEchelon:
    """Incremental integer row-echelon accumulator.

    Maintains one primitive row per pivot column.  ``add`` inserts a row and
    reports whether the rank grew; ``contains`` tests row-space membership.
    """

    __slots__ = ("width", "pivots")

    def __init__(self, width):
        self.width = width
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def _residual(self, row):
        row = list(row)
        col = _first_nonzero(row, 0)
        while col is not None:
            piv = self.pivots.get(col)
            if piv is None:
                return row, col
            a, b = piv[col], row[col]
            row = [a * r - b * p for r, p in zip(row, piv)]
            row = _strip_content(row)
            col = _first_nonzero(row, col + 1)
        return row, None

    def add(self, row):
        res, col = self._residual(row)
        if col is None:
            return False
        self.pivots[col] = _strip_content(res)
        return True

    def contains(self, row):
        _, col = self._residual(row)
        return col is None


def rank(rows, width):
    ech = IntEchelon(width)
    for row in rows:
        ech.add(int_row(row))
    return ech.rank


def rref(rows, width):
    """Canonical reduced row echelon form as a tuple of Fraction tuples.

    Rows are ordered by pivot column, every leading entry is 1 and pivot
    columns are cleared above and below; equality of row spaces is equality
    of the returned matrices.
    """
    ech = IntEchelon(width)
    for row in rows:
        ech.add(int_row(row))
    cols = sorted(ech.pivots)
    work = {c: list(ech.pivots[c]) for c in cols}
    for i, c in enumerate(cols):
        for c2 in cols[i + 1:]:
            row = work[c]
            if row[c2]:
                piv = work[c2]
                a, b = piv[c2], row[c2]
                work[c] = _strip_content([a * r - b * p for r, p in zip(row, piv)])
    out = []
    for c in cols:
        row = work[c]
        lead = row[c]
        out.append(tuple(Fraction(v, lead) for v in row))
    return tuple(out)
