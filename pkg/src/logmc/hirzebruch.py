"""Todd transformation and Hirzebruch normalisation on projective space.

Cohomology classes live in Q[h]/(h^{n+1}) with h the hyperplane class; all
series (the exponential, the Todd series) are expanded with exact rational
coefficients, so the evaluation at y = -1 witnesses cancellations exactly.

The pipeline for a K-theory polynomial p(y):

  1. ``grr_transform``: apply the Chern character (the ring map s -> e^{-h})
     coefficientwise in y and multiply by the Todd class
     (h/(1-e^{-h}))^{n+1} of the tangent bundle;
  2. ``normalize``: rescale the h^j component (a cycle of dimension n-j) by
     (1+y)^{-(n-j)}, kept as explicit (numerator, denominator-power)
     bookkeeping;
  3. ``clear_denominator``: divide the denominator power out exactly, with a
     hard error on a nonzero remainder;
  4. evaluate at y = -1: for motivic input this is the
     Chern-Schwartz-MacPherson class of the corresponding constructible set.

Step 3 makes "the normalised class is an honest polynomial in y" a tested
statement rather than an assumption; the classical limit argument for
y -> -1 is subsumed by exact division.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import DivisionRemainderError, ValidationError


class CohClass:
    """Element of Q[h]/(h^{n+1}): exact rational coefficients, length n+1."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=()):
        if n < 0:
            raise ValidationError("projective dimension must be >= 0")
        self.n = n
        c = [Fraction(v) for v in coeffs[:n + 1]]
        c.extend([Fraction(0)] * (n + 1 - len(c)))
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls(n, (1,))

    def _check(self, other):
        if self.n != other.n:
            raise ValidationError("CohClass operands live on different projective spaces")

    def __add__(self, other):
        self._check(other)
        return CohClass(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return CohClass(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CohClass(self.n, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CohClass(self.n, [a * other for a in self.coeffs])
        self._check(other)
        prod = [Fraction(0)] * (self.n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.n + 1 - i):
                b = other.coeffs[j]
                if b:
                    prod[i + j] += a * b
        return CohClass(self.n, prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = CohClass.one(self.n)
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, CohClass)
                and self.n == other.n and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CohClass(n={self.n}, coeffs={[str(c) for c in self.coeffs]})"


class CohPoly:
    """Polynomial in y with CohClass coefficients, divided by (1+y)^delta.

    The stored coefficients are the numerator; ``delta`` >= 0 is the
    denominator exponent.  With delta = 0 the value is an honest polynomial.
    """

    __slots__ = ("n", "coeffs", "delta")

    def __init__(self, n, coeffs=(), delta=0):
        if delta < 0:
            raise ValidationError("denominator exponent must be >= 0")
        coeffs = list(coeffs)
        for c in coeffs:
            if c.n != n:
                raise ValidationError("CohPoly coefficients live on different projective spaces")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.n = n
        self.coeffs = tuple(coeffs)
        self.delta = delta

    @classmethod
    def zero(cls, n):
        return cls(n)

    @property
    def y_degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return CohClass.zero(self.n)

    def at_y(self, value):
        if self.delta != 0:
            raise ValidationError("clear the denominator before evaluating")
        result = CohClass.zero(self.n)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def __eq__(self, other):
        return (isinstance(other, CohPoly)
                and (self.n, self.coeffs, self.delta)
                == (other.n, other.coeffs, other.delta))

    def __repr__(self):
        return f"CohPoly(n={self.n}, y_degree={self.y_degree}, delta={self.delta})"


def _exp_minus_h(n):
    return CohClass(n, [Fraction((-1) ** j, factorial(j)) for j in range(n + 1)])


def chern_character(c):
    """Chern character of a KClass: the ring map determined by s -> e^{-h}."""
    e = _exp_minus_h(c.n)
    result = CohClass.zero(c.n)
    for a in reversed(c.coeffs):
        result = result * e + CohClass(c.n, (a,))
    return result


def todd_class(n):
    """Todd class of the tangent bundle of P^n: (h/(1-e^{-h}))^{n+1}.

    1 - e^{-h} = h * sum_j (-1)^j h^j/(j+1)!, so the base series is the
    exact reciprocal of that sum.
    """
    denom = [Fraction((-1) ** j, factorial(j + 1)) for j in range(n + 1)]
    inv = [Fraction(0)] * (n + 1)
    inv[0] = Fraction(1)
    for k in range(1, n + 1):
        inv[k] = -sum(denom[i] * inv[k - i] for i in range(1, k + 1))
    return CohClass(n, inv) ** (n + 1)


def grr_transform(p):
    """Chern character coefficientwise in y, times the Todd class of P^n."""
    td = todd_class(p.n)
    return CohPoly(p.n, [chern_character(c) * td for c in p.coeffs], delta=0)


def _y_mul_binomial(col, j):
    """Multiply a y-polynomial (list of Fractions) by (1+y)^j."""
    out = [Fraction(0)] * (len(col) + j)
    for k, a in enumerate(col):
        if not a:
            continue
        for i in range(j + 1):
            out[k + i] += a * comb(j, i)
    return out


def _y_div_one_plus_y(col):
    """Quotient and remainder of a y-polynomial under division by (1+y)."""
    if not col:
        return [], Fraction(0)
    if len(col) == 1:
        return [], col[0]
    quotient = [Fraction(0)] * (len(col) - 1)
    quotient[-1] = col[-1]
    for k in range(len(col) - 2, 0, -1):
        quotient[k - 1] = col[k] - quotient[k]
    remainder = col[0] - quotient[0]
    return quotient, remainder


def _columns(p, width):
    ylen = len(p.coeffs)
    return [[p.coefficient(k).coeffs[j] for k in range(ylen)] for j in range(width)]


def _from_columns(n, cols, delta):
    ylen = max((len(col) for col in cols), default=0)
    coeffs = []
    for k in range(ylen):
        coeffs.append(CohClass(n, [col[k] if k < len(col) else Fraction(0) for col in cols]))
    return CohPoly(n, coeffs, delta=delta)


def normalize(p):
    """Hirzebruch normalisation: rescale dimension-i parts by (1+y)^{-i}.

    The h^j component has dimension n-j, so it is multiplied by (1+y)^j in
    the numerator while the denominator exponent is set to n; the h^n
    component (dimension 0) is never rescaled.
    """
    if p.delta != 0:
        raise ValidationError("normalize expects a plain polynomial (delta = 0)")
    if p.is_zero():
        return CohPoly(p.n, (), delta=p.n)
    cols = _columns(p, p.n + 1)
    cols = [_y_mul_binomial(col, j) for j, col in enumerate(cols)]
    return _from_columns(p.n, cols, delta=p.n)


def clear_denominator(p):
    """Divide the stored numerator by (1+y)^delta, exactly.

    Succeeding here is precisely the statement that the normalised class is
    a polynomial in y; a nonzero remainder raises with the remainder and the
    offending h-degree attached.
    """
    if p.delta == 0:
        return p
    cols = _columns(p, p.n + 1)
    out = []
    for j, col in enumerate(cols):
        for _ in range(p.delta):
            col, rem = _y_div_one_plus_y(col)
            if rem != 0:
                raise DivisionRemainderError(
                    f"h^{j} component is not divisible by (1+y)^{p.delta}",
                    remainder=rem)
        out.append(col)
    return _from_columns(p.n, out, delta=0)


def csm_at_minus_one(p):
    """CSM-type class of a K-theory polynomial: the full pipeline at y = -1."""
    return clear_denominator(normalize(grr_transform(p))).at_y(-1)


def euler_characteristic(c):
    """Degree-0 (h^n) coefficient: the Euler characteristic of a CSM class."""
    return c.coeffs[c.n]


def chern_class_free_exponents(exps, n):
    """prod_i (1 + (1-e_i) h) truncated: the expected CSM class of the
    complement when the cone splits with the given exponents."""
    result = CohClass.one(n)
    for e in exps:
        result = result * CohClass(n, (1, 1 - int(e)))
    return result


def _fraction_str(q):
    return str(q)


def cohclass_to_json(c):
    return {"n": c.n, "coeffs": [_fraction_str(v) for v in c.coeffs]}


def cohclass_from_json(data):
    return CohClass(data["n"], [Fraction(v) for v in data["coeffs"]])


def cohpoly_to_json(p):
    return {
        "n": p.n,
        "denominator_power": p.delta,
        "coeffs_y": [[_fraction_str(v) for v in c.coeffs] for c in p.coeffs],
    }


def cohpoly_from_json(data):
    n = data["n"]
    coeffs = [CohClass(n, [Fraction(v) for v in row]) for row in data["coeffs_y"]]
    return CohPoly(n, coeffs, delta=data["denominator_power"])
