"""Central hyperplane arrangements over the rationals.

An arrangement is a finite set of integer linear forms in ``ambient_dim``
variables, each cutting out a hyperplane through the origin of the affine
cone space.  This module builds the intersection lattice (all intersections
of subsets of hyperplanes, deduplicated by canonical row echelon form),
evaluates its Möbius function top-down, forms the characteristic polynomial

    chi(t) = sum over lattice nodes x of mobius(x) * t^dim(x),

and reads off candidate exponents when chi splits over the integers.  By
Terao's factorisation theorem the exponents of a free arrangement are the
roots of chi; the converse is false, so a split chi yields *candidates*
only, while a non-split chi certifies that the arrangement is not free with
integer exponents.

All arithmetic is exact; no floating point is used anywhere.
"""

from __future__ import annotations

from math import gcd

from ._linalg import IntEchelon, int_row, rref
from .errors import InconsistencyError, ValidationError


def _normalize_form(form):
    g = 0
    for v in form:
        g = gcd(g, v)
    if g > 1:
        form = tuple(v // g for v in form)
    for v in form:
        if v:
            if v < 0:
                form = tuple(-u for u in form)
            break
    return form


class Arrangement:
    """A central arrangement given by primitive integer linear forms.

    Forms are normalised on construction (content 1, first nonzero
    coefficient positive); zero forms and proportional pairs are rejected,
    so the divisor is reduced.
    """

    __slots__ = ("ambient_dim", "forms")

    def __init__(self, ambient_dim, forms):
        if not isinstance(ambient_dim, int) or ambient_dim < 1:
            raise ValidationError("ambient dimension must be a positive integer")
        normalized = []
        seen = {}
        for i, form in enumerate(forms):
            row = tuple(int(v) for v in form)
            if len(row) != ambient_dim:
                raise ValidationError(
                    f"form {i} has {len(row)} coefficients, expected {ambient_dim}")
            if not any(row):
                raise ValidationError(f"form {i} is zero")
            row = _normalize_form(row)
            if row in seen:
                raise ValidationError(
                    f"form {i} is proportional to form {seen[row]}")
            seen[row] = i
            normalized.append(row)
        self.ambient_dim = ambient_dim
        self.forms = tuple(normalized)

    @property
    def num_hyperplanes(self):
        return len(self.forms)

    def __eq__(self, other):
        return (isinstance(other, Arrangement)
                and self.ambient_dim == other.ambient_dim
                and self.forms == other.forms)

    def __repr__(self):
        return f"Arrangement(ambient_dim={self.ambient_dim}, forms={list(self.forms)})"


def parse_arrangement(text):
    """Parse the plain-text arrangement format.

    First non-comment line: the ambient dimension.  Every following
    non-comment line: that many space-separated integers, one linear form.
    ``#`` starts a comment.
    """
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ValidationError(f"line {lineno}: expected integers, got {line!r}") from None
        if header is None:
            if len(values) != 1:
                raise ValidationError(
                    f"line {lineno}: the first line must hold a single integer (ambient dimension)")
            header = values[0]
        else:
            rows.append(values)
    if header is None:
        raise ValidationError("missing ambient dimension line")
    return Arrangement(header, rows)


def load_arrangement(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


class Subspace:
    """A rational linear subspace of the cone space.

    Keyed by the canonical reduced row echelon matrix of the linear forms
    vanishing on it, so equality of subspaces is equality of matrices.
    """

    __slots__ = ("ambient_dim", "matrix", "_ech")

    def __init__(self, ambient_dim, matrix):
        self.ambient_dim = ambient_dim
        self.matrix = matrix
        self._ech = None

    @classmethod
    def ambient(cls, ambient_dim):
        return cls(ambient_dim, ())

    @classmethod
    def from_forms(cls, ambient_dim, forms):
        return cls(ambient_dim, rref(forms, ambient_dim))

    @property
    def dim(self):
        return self.ambient_dim - len(self.matrix)

    def _echelon(self):
        # lazily cached; the accumulated rows never change afterwards
        if self._ech is None:
            ech = IntEchelon(self.ambient_dim)
            for row in self.matrix:
                ech.add(int_row(row))
            self._ech = ech
        return self._ech

    def intersect_form(self, form):
        """The subspace cut out here by one more linear form."""
        if self._echelon().contains(int_row(form)):
            return self
        return Subspace(self.ambient_dim,
                        rref(self.matrix + (tuple(form),), self.ambient_dim))

    def contains(self, other):
        """Point-set containment: self is a superset of other."""
        return all(other._echelon().contains(int_row(row)) for row in self.matrix)

    def sort_key(self):
        return (-self.dim, self.matrix)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.ambient_dim, self.matrix))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, matrix={self.matrix})"


class IntersectionLattice:
    """Intersection lattice of a central arrangement.

    ``nodes`` are sorted by (descending dimension, lexicographic matrix
    order); ``mobius[i]`` is the Möbius value of ``nodes[i]``.
    """

    __slots__ = ("ambient_dim", "nodes", "mobius")

    def __init__(self, ambient_dim, nodes, mobius):
        self.ambient_dim = ambient_dim
        self.nodes = tuple(nodes)
        self.mobius = tuple(mobius)

    def __len__(self):
        return len(self.nodes)

    def contains(self, i, j):
        """Order relation: node i contains node j as point sets."""
        return self.nodes[i].contains(self.nodes[j])

    def __repr__(self):
        dims = [node.dim for node in self.nodes]
        return f"IntersectionLattice(ambient_dim={self.ambient_dim}, dims={dims})"


def build_lattice(arr, max_nodes=None):
    """Intersection lattice of ``arr`` with Möbius values.

    Closure of {ambient space} and the hyperplanes under intersection with
    hyperplanes, deduplicated via canonical echelon matrices.  Möbius values
    are computed top-down: the ambient space gets 1, then every node gets
    minus the sum over nodes strictly containing it.

    ``max_nodes`` optionally caps the closure size (rejected with a
    validation error when exceeded).
    """
    ambient = Subspace.ambient(arr.ambient_dim)
    seen = {ambient}
    frontier = [ambient]
    while frontier:
        nxt = []
        for node in frontier:
            for form in arr.forms:
                cut = node.intersect_form(form)
                if cut is node or cut in seen:
                    continue
                seen.add(cut)
                nxt.append(cut)
        if max_nodes is not None and len(seen) > max_nodes:
            raise ValidationError(
                f"intersection lattice exceeds the node cap ({max_nodes})")
        frontier = nxt

    nodes = sorted(seen, key=Subspace.sort_key)
    mobius = []
    for i, node in enumerate(nodes):
        if node.dim == arr.ambient_dim:
            mobius.append(1)
            continue
        total = 0
        for j in range(i):
            if nodes[j].dim > node.dim and nodes[j].contains(node):
                total += mobius[j]
        mobius.append(-total)
    return IntersectionLattice(arr.ambient_dim, nodes, mobius)


class IntPolynomial:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x):
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def deflate(self, root):
        """Quotient and remainder of synthetic division by (t - root)."""
        quotient = []
        carry = 0
        for c in reversed(self.coeffs):
            carry = carry * root + c
            quotient.append(carry)
        remainder = quotient.pop()
        return IntPolynomial(list(reversed(quotient))), remainder

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                base = "t" if k == 1 else f"t^{k}"
                term = base if mag == 1 else f"{mag}*{base}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


def characteristic_polynomial(lat):
    """chi(t) = sum of mobius(x) * t^dim(x) over the lattice nodes."""
    coeffs = [0] * (lat.ambient_dim + 1)
    for node, mu in zip(lat.nodes, lat.mobius):
        coeffs[node.dim] += mu
    return IntPolynomial(coeffs)


class TeraoResult:
    """Outcome of the integer-root factorisation of a characteristic polynomial.

    ``splits`` with the sorted root multiset on success; otherwise carries
    the non-split ``remaining`` factor.  Candidate exponents only: splitting
    does not certify freeness.
    """

    __slots__ = ("splits", "exponents", "remaining")

    def __init__(self, splits, exponents=None, remaining=None):
        self.splits = splits
        self.exponents = exponents
        self.remaining = remaining

    def __eq__(self, other):
        return (isinstance(other, TeraoResult)
                and (self.splits, self.exponents, self.remaining)
                == (other.splits, other.exponents, other.remaining))

    def __repr__(self):
        if self.splits:
            return f"TeraoResult(splits=True, exponents={list(self.exponents)})"
        return f"TeraoResult(splits=False, remaining={self.remaining!r})"


def exponents_via_terao(chi):
    """Integer roots of a monic chi by trial division, with deflation.

    Exponents of a free arrangement are nonnegative and sum to the number of
    hyperplanes d (= minus the second-highest coefficient), so candidates
    range over [0, d].  A nonpositive root on a nonempty arrangement means
    the common center is positive-dimensional (the arrangement is not
    essential) and the Euler-field normalisation does not apply.
    """
    if not chi.is_monic():
        raise ValidationError("characteristic polynomial must be monic")
    d = -chi.coeffs[chi.degree - 1] if chi.degree >= 1 else 0
    roots = []
    poly = chi
    for e in range(0, max(d, 0) + 1):
        while poly.degree > 0 and poly(e) == 0:
            poly, rem = poly.deflate(e)
            assert rem == 0
            roots.append(e)
    if poly.degree > 0:
        return TeraoResult(False, remaining=poly)
    if d >= 1 and any(r <= 0 for r in roots):
        raise InconsistencyError(
            "characteristic polynomial has a nonpositive root "
            f"{sorted(roots)}: the arrangement's center is positive-dimensional "
            "(not essential), so exponent-based formulas do not apply",
            details={"roots": sorted(roots)})
    return TeraoResult(True, exponents=tuple(sorted(roots)))
