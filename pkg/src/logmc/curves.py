"""Isolated plane-curve singularities and per-point difference classes.

For a reduced curve on a smooth surface, the difference between the motivic
Chern class of the complement and the twisted logarithmic-form class is a
sum of point classes, with integer weights determined by local invariants:

    (-delta + r - 1) [O_x]  +  (-tau + delta) [O_x] * y

per singular point, where delta is the delta-invariant, r the number of
local branches and tau the Tjurina number.  Milnor's formula
mu = 2*delta - r + 1 ties these to the Milnor number mu.

The module computes mu and tau as colengths of the Jacobian ideals
(f_x, f_y) and (f, f_x, f_y) in the local ring at the origin, by exact
linear algebra on monomials below a truncation bound.  The bound grows
until two consecutive quotient dimensions agree and the monomial staircase
of the quotient sits strictly inside the truncation window; a Krull-type
argument makes that stopping rule exact, and failure to stabilise by the
cap 2*deg(f)^2 certifies a non-isolated singularity.

Branch counts are computed only where elementary arguments are rigorous:
two-term equations x^a + c y^b (gcd(a, b) branches) and squarefree
homogeneous equations, i.e. products of pairwise non-proportional linear
forms (one branch per factor).  Anything else must be user-supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ._linalg import IntEchelon, int_row
from .errors import (BranchCountRequiredError, InconsistencyError,
                     NonIsolatedSingularityError, ValidationError)


class LocalPolynomial:
    """Bivariate polynomial with exact rational coefficients.

    ``terms`` maps exponent pairs (i, j) for x^i y^j to nonzero Fractions.
    Instances are immutable; arithmetic returns new values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                c = Fraction(c)
                if c:
                    clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def from_string(cls, text):
        return _parse_polynomial(text)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def variable(cls, name):
        if name == "x":
            return cls({(1, 0): Fraction(1)})
        if name == "y":
            return cls({(0, 1): Fraction(1)})
        raise ValidationError(f"unknown variable {name!r}")

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0, 0), Fraction(0))

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=0)

    def order(self):
        """Minimal total degree of a term (valuation at the origin)."""
        return min((i + j for i, j in self.terms), default=0)

    def diff(self, var):
        out = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i > 0:
                out[(i - 1, j)] = out.get((i - 1, j), 0) + c * i
            elif var == "y" and j > 0:
                out[(i, j - 1)] = out.get((i, j - 1), 0) + c * j
        return LocalPolynomial(out)

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return LocalPolynomial(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) - c
        return LocalPolynomial(out)

    def __neg__(self):
        return LocalPolynomial({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LocalPolynomial({k: c * other for k, c in self.terms.items()})
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return LocalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValidationError("negative powers are not polynomials")
        result = LocalPolynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def substitute_linear(self, a, b, c, d):
        """Linear coordinate change x -> a x + b y, y -> c x + d y."""
        nx = LocalPolynomial({(1, 0): Fraction(a), (0, 1): Fraction(b)})
        ny = LocalPolynomial({(1, 0): Fraction(c), (0, 1): Fraction(d)})
        out = LocalPolynomial.zero()
        for (i, j), coeff in self.terms.items():
            out = out + (nx ** i) * (ny ** j) * coeff
        return out

    def __eq__(self, other):
        return isinstance(other, LocalPolynomial) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (k[0] + k[1], -k[0])):
            c = self.terms[(i, j)]
            mono = "*".join(filter(None, [
                f"x^{i}" if i > 1 else ("x" if i == 1 else ""),
                f"y^{j}" if j > 1 else ("y" if j == 1 else "")]))
            mag = abs(c)
            if not mono:
                term = str(mag)
            elif mag == 1:
                term = mono
            else:
                term = f"{mag}*{mono}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"LocalPolynomial({self})"


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch in "xy":
            tokens.append(("var", ch))
            i += 1
        elif ch in "+-*^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise ValidationError(f"unexpected character {ch!r} at position {i} in polynomial")
    return tokens


class _Parser:
    """Recursive descent over: integers, x, y, + - * ^ and parentheses."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ValidationError(f"trailing input after polynomial (token {self.pos})")
        return value

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        value = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            sign = 1 if op == "+" else -1
            while self.peek() in ("+", "-"):
                if self.take()[0] == "-":
                    sign = -sign
            value = value + self.term() * sign
        return value

    def term(self):
        value = self.factor()
        while self.peek() == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        value = self.atom()
        if self.peek() == "^":
            self.take()
            kind, val = self.take() if self.pos < len(self.tokens) else (None, None)
            if kind != "int":
                raise ValidationError("exponent must be a nonnegative integer literal")
            value = value ** val
        return value

    def atom(self):
        if self.peek() is None:
            raise ValidationError("polynomial ended unexpectedly")
        kind, val = self.take()
        if kind == "int":
            return LocalPolynomial.constant(val)
        if kind == "var":
            return LocalPolynomial.variable(val)
        if kind == "(":
            value = self.expr()
            if self.peek() != ")":
                raise ValidationError("missing closing parenthesis")
            self.take()
            return value
        raise ValidationError(f"unexpected token {val!r} in polynomial")


def _parse_polynomial(text):
    tokens = _tokenize(text)
    if not tokens:
        raise ValidationError("empty polynomial")
    return _Parser(tokens).parse()


def _require_local_equation(f):
    if f.is_zero():
        raise ValidationError("local equation must be nonzero")
    if f.constant_term() != 0:
        raise ValidationError("local equation must vanish at the origin")


def _monomials_below(bound):
    return [(d - k, k) for d in range(bound) for k in range(d + 1)]


def _quotient_dim(gens, bound):
    """Dimension of k[x,y] / (ideal + m^bound), plus staircase interiority.

    Rows are all products (monomial of degree < bound) * generator,
    truncated below degree ``bound``; the quotient dimension is the number
    of monomial columns without a pivot.  The staircase is "closed" when no
    such standard monomial sits at the top truncation degree, i.e. the
    quotient basis fits strictly inside the window.
    """
    mons = _monomials_below(bound)
    index = {m: k for k, m in enumerate(mons)}
    ech = IntEchelon(len(mons))
    for g in gens:
        if g.is_zero():
            continue
        if g.order() >= bound:
            continue
        for (mi, mj) in mons:
            if mi + mj + g.order() >= bound:
                continue
            row = [Fraction(0)] * len(mons)
            nonzero = False
            for (gi, gj), c in g.terms.items():
                i, j = gi + mi, gj + mj
                if i + j < bound:
                    row[index[(i, j)]] += c
                    nonzero = True
            if nonzero:
                ech.add(int_row(row))
    standard = [mons[k] for k in range(len(mons)) if k not in ech.pivots]
    dim = len(standard)
    closed = all(i + j < bound - 1 for i, j in standard)
    return dim, closed


def _stable_colength(gens, cap, what):
    prev = None
    for bound in range(1, cap + 1):
        dim, closed = _quotient_dim(gens, bound)
        if prev is not None and dim == prev and closed:
            return dim
        prev = dim
    raise NonIsolatedSingularityError(
        f"{what} did not stabilise below the truncation cap {cap}: "
        "the singularity is not isolated (the local equation is not reduced)")


def local_invariants(f):
    """Milnor and Tjurina numbers of the germ of f at the origin.

    mu = dim O/(f_x, f_y) and tau = dim O/(f, f_x, f_y) in the local ring;
    both are colengths computed by stabilised truncation.  A smooth point
    yields (0, 0).
    """
    _require_local_equation(f)
    cap = max(2 * f.total_degree() ** 2, 2)
    fx, fy = f.diff("x"), f.diff("y")
    mu = _stable_colength([fx, fy], cap, "Milnor number")
    tau = _stable_colength([f, fx, fy], cap, "Tjurina number")
    return mu, tau


def branch_count(f):
    """Number of local analytic branches at the origin, where rigorous.

    Supported families: f = a x^p + b y^q with a, b nonzero (gcd(p, q)
    branches) and squarefree homogeneous f of degree k (k branches, one per
    linear factor over the algebraic closure).  Other shapes raise, asking
    the caller to supply r.
    """
    _require_local_equation(f)
    keys = sorted(f.terms)
    if len(keys) == 2:
        (i1, j1), (i2, j2) = keys
        if j1 == 0 and i2 == 0 and i1 >= 1 and j2 >= 1:
            return gcd(i1, j2)
        if i1 == 0 and j2 == 0 and j1 >= 1 and i2 >= 1:
            return gcd(j1, i2)
    degrees = {i + j for i, j in f.terms}
    if len(degrees) == 1:
        k = degrees.pop()
        if _binary_form_squarefree(f, k):
            return k
        raise BranchCountRequiredError(
            "homogeneous local equation has a repeated linear factor "
            "(not reduced); branch count required: supply r explicitly")
    raise BranchCountRequiredError(
        "branch count required: the local equation is neither two-term "
        "x^p + c*y^q nor squarefree homogeneous; supply r explicitly")


def _binary_form_squarefree(f, k):
    # dehomogenise to g(t) = f(t, 1); f is squarefree iff the leftover
    # power of y is at most 1 and gcd(g, g') is constant
    g = [Fraction(0)] * (k + 1)
    for (i, j), c in f.terms.items():
        g[i] = c
    top = max(i for i in range(k + 1) if g[i])
    if k - top > 1:
        return False
    g = g[:top + 1]
    gp = [g[i] * i for i in range(1, len(g))]
    return len(_poly_gcd(g, gp)) == 1


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a, b):
    a = list(a)
    while len(a) >= len(b):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
        _poly_trim(a)
        if not a:
            break
    return a


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return a


@dataclass(frozen=True)
class CurveSingularity:
    """Invariant tuple (mu, tau, r, delta) of an isolated plane-curve germ."""

    mu: int
    tau: int
    r: int
    delta: int

    def __post_init__(self):
        if self.mu < 0 or self.tau < 0 or self.delta < 0:
            raise ValidationError("mu, tau and delta must be nonnegative")
        if self.r < 1:
            raise ValidationError("branch count r must be positive")
        if self.delta < self.r - 1:
            raise ValidationError(
                f"delta = {self.delta} is below r - 1 = {self.r - 1}")
        if self.tau > self.mu:
            raise ValidationError(
                f"tau = {self.tau} exceeds mu = {self.mu}")
        if self.mu != 2 * self.delta - self.r + 1:
            raise ValidationError(
                f"Milnor's formula fails: mu = {self.mu} but "
                f"2*delta - r + 1 = {2 * self.delta - self.r + 1}")


@dataclass(frozen=True)
class CurveDifferenceClass:
    """Per-singularity weights (a, b) of the class a [O_x] + b [O_x] y."""

    pairs: tuple

    @property
    def total(self):
        return (sum(a for a, _ in self.pairs), sum(b for _, b in self.pairs))

    def is_zero(self):
        return all(a == 0 and b == 0 for a, b in self.pairs)


def delta_from_milnor(mu, r):
    """delta = (mu + r - 1) / 2, from Milnor's formula mu = 2 delta - r + 1."""
    if mu < 0 or r < 1:
        raise ValidationError("need mu >= 0 and r >= 1")
    if (mu + r - 1) % 2:
        raise ValidationError(
            f"invalid invariants: mu + r - 1 = {mu + r - 1} is odd")
    return (mu + r - 1) // 2


def singularity_from_poly(f, r=None):
    """Full invariant tuple of a local equation.

    ``r`` overrides the branch count (required outside the supported
    families); a smooth point always has one branch.
    """
    mu, tau = local_invariants(f)
    if r is None:
        r = 1 if mu == 0 else branch_count(f)
    return CurveSingularity(mu=mu, tau=tau, r=int(r),
                            delta=delta_from_milnor(mu, int(r)))


def difference_class_curve(sings):
    """Difference class of a reduced curve from its singularity invariants.

    Each singular point contributes the pair
    (-delta + r - 1, -tau + delta).
    """
    pairs = tuple((-s.delta + s.r - 1, -s.tau + s.delta) for s in sings)
    return CurveDifferenceClass(pairs)


def csm_minus_chern_curve(sings):
    """Per-point weights tau - mu of the CSM-minus-Chern comparison.

    Also re-asserts that evaluating the difference class at y = -1 gives
    the same weights: tau - 2 delta + r - 1 = tau - mu by Milnor's formula.
    """
    out = []
    for s in sings:
        at_minus_one = (-s.delta + s.r - 1) - (-s.tau + s.delta)
        if at_minus_one != s.tau - s.mu:
            raise InconsistencyError(
                f"difference class at y=-1 gives {at_minus_one}, "
                f"but tau - mu = {s.tau - s.mu}")
        out.append(s.tau - s.mu)
    return out


def genus_defect(sing):
    """-delta + r - 1: local drop from arithmetic to geometric genus."""
    return -sing.delta + sing.r - 1


def singularity_from_json(obj):
    """Build a CurveSingularity from its JSON form.

    Either {"poly": "x^2 - y^3"} (optionally with "r" when the branch count
    cannot be derived) or {"mu": ..., "tau": ..., "r": ...} with delta
    derived via Milnor's formula.
    """
    if not isinstance(obj, dict):
        raise ValidationError("singularity entry must be a JSON object")
    if "poly" in obj:
        f = LocalPolynomial.from_string(obj["poly"])
        return singularity_from_poly(f, r=obj.get("r"))
    missing = [key for key in ("mu", "tau", "r") if key not in obj]
    if missing:
        raise ValidationError(
            f"singularity object needs 'poly' or mu/tau/r (missing {missing})")
    mu, tau, r = int(obj["mu"]), int(obj["tau"]), int(obj["r"])
    return CurveSingularity(mu=mu, tau=tau, r=r, delta=delta_from_milnor(mu, r))
