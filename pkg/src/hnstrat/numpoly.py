"""Exact arithmetic for rational polynomials in one variable.

Everything downstream (Harder-Narasimhan types, polygons, stratification)
reduces to order comparisons between polynomials, so this module is strictly
exact: coefficients are `fractions.Fraction` and no float ever appears.

Two bases matter:

* the monomial basis, used for storage and arithmetic;
* the binomial basis C(lam, k), used to test integrality: a polynomial takes
  integer values at every integer iff its binomial-basis coefficients (its
  iterated finite differences at 0) are all integers.

The order on polynomials is eventual dominance: f <= g iff f(m) <= g(m) for
all sufficiently large integers m.  It is decided exactly by the sign of the
top nonzero coefficient of g - f, and it is what the comparison operators on
`RatPoly` implement.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

# Coefficient field. Fraction already enforces the canonical form
# (positive denominator, lowest terms, arbitrary precision).
Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class _MinusInfinity:
    """Degree of the zero polynomial. Compares strictly below every integer."""

    __slots__ = ()

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __repr__(self):
        return "MINUS_INFINITY"


MINUS_INFINITY = _MinusInfinity()


class Ordering(enum.Enum):
    """Outcome of an eventual comparison."""

    LT = -1
    EQ = 0
    GT = 1


class RatPoly:
    """Polynomial over Q, coefficients stored lowest degree first and trimmed.

    Instances are immutable value objects: arithmetic returns new polynomials,
    equality and hashing follow the coefficient tuple.  The rich comparisons
    implement the eventual-dominance total order, not anything lexicographic.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def from_binomial(coeffs) -> "RatPoly":
        """Build the polynomial sum(c_k * C(lam, k)) from binomial-basis coefficients."""
        total = RatPoly()
        binom = RatPoly((_ONE,))
        for k, c in enumerate(coeffs):
            if k > 0:
                # C(lam, k) = C(lam, k-1) * (lam - (k-1)) / k
                binom = binom * RatPoly((-(k - 1), 1)) * Fraction(1, k)
            if c:
                total = total + binom * Fraction(c)
        return total

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __ne__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs != other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        cs = tuple(-c for c in self.coeffs)
        # negation preserves integrality, no need to recheck
        return NumPoly._trusted(cs) if isinstance(self, NumPoly) else RatPoly(cs)

    def __add__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] += c
        if isinstance(self, NumPoly) and isinstance(other, NumPoly):
            # sums of numerical polynomials are numerical (binomial
            # coefficients add), so skip the recheck
            return NumPoly._trusted(cs)
        return RatPoly(cs)

    def __sub__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatPoly):
            if not self.coeffs or not other.coeffs:
                return RatPoly()
            cs = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    cs[i + j] += a * b
            return RatPoly(cs)
        if isinstance(other, (int, Fraction)):
            return RatPoly(tuple(c * other for c in self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly(tuple(other * c for c in self.coeffs))
        return NotImplemented

    def scale(self, c) -> "RatPoly":
        return self * Fraction(c)

    def evaluate(self, m) -> Fraction:
        """Value at m by Horner's rule, exact."""
        acc = _ZERO
        m = Fraction(m)
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc

    __call__ = evaluate

    def _cmp(self, other) -> int:
        a, b = self.coeffs, other.coeffs
        top = max(len(a), len(b))
        for i in range(top - 1, -1, -1):
            ca = a[i] if i < len(a) else _ZERO
            cb = b[i] if i < len(b) else _ZERO
            if ca != cb:
                return 1 if ca > cb else -1
        return 0

    def __lt__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self._cmp(other) >= 0

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                term = str(abs(c))
            else:
                mag = abs(c)
                coeff = "" if mag == 1 else f"{mag}*"
                term = f"{coeff}x" if k == 1 else f"{coeff}x^{k}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({[str(c) for c in self.coeffs]})"


class NumPoly(RatPoly):
    """Numerical polynomial: integer-valued at every integer.

    Hilbert polynomials live here.  Construction re-checks integrality, so a
    NumPoly in hand is always a certificate; sums and differences of NumPoly
    stay NumPoly (closure under + and - is built into RatPoly arithmetic).
    """

    __slots__ = ()

    def __init__(self, coeffs=()):
        super().__init__(coeffs)
        if not is_numerical(self):
            raise ValueError(f"not a numerical polynomial: {self!r}")

    @classmethod
    def wrap(cls, poly: RatPoly) -> "NumPoly":
        return poly if isinstance(poly, NumPoly) else cls(poly.coeffs)

    @classmethod
    def _trusted(cls, coeffs) -> "NumPoly":
        """Construct without the integrality check.

        Only for results whose integrality is a theorem (sums, differences
        and negations of already-certified numerical polynomials).
        """
        self = object.__new__(cls)
        RatPoly.__init__(self, coeffs)
        return self


def eventual_sign(f: RatPoly) -> int:
    """Sign of f(m) for all sufficiently large integers m: -1, 0 or 1."""
    lead = f.leading
    if not lead:
        return 0
    return 1 if lead > 0 else -1


def eventual_cmp(f: RatPoly, g: RatPoly) -> Ordering:
    """Compare f and g in the eventual-dominance order.

    Returns the sign of f - g at all sufficiently large integers; EQ exactly
    when f and g are identical.
    """
    return Ordering(f._cmp(g))


def to_binomial(f: RatPoly):
    """Coefficients of f in the binomial basis, i.e. the iterated finite
    differences f(0), (Df)(0), (D^2 f)(0), ... computed exactly."""
    d = f.degree
    if d is MINUS_INFINITY:
        return ()
    row = [f(i) for i in range(d + 1)]
    out = []
    while row:
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return tuple(out)


def from_binomial(coeffs) -> RatPoly:
    return RatPoly.from_binomial(coeffs)


def is_numerical(f: RatPoly) -> bool:
    """True iff f maps integers to integers."""
    if all(c.denominator == 1 for c in f.coeffs):
        return True  # integer coefficients need no basis change
    return all(c.denominator == 1 for c in to_binomial(f))


def rank(f: RatPoly) -> int:
    """The integer r(f): leading coefficient times degree!, and 0 for f = 0.

    For a numerical polynomial this is always an integer (it is the top
    binomial-basis coefficient); a non-integral result is rejected.
    """
    if not f:
        return 0
    r = f.leading * math.factorial(f.degree)
    if r.denominator != 1:
        raise ValueError(f"rank of {f!r} is not an integer")
    return r.numerator


def stabilization_bound(f: RatPoly, g: RatPoly) -> int:
    """An integer m0 such that sign(f(m) - g(m)) is constant for all m >= m0.

    Uses the Cauchy root bound of f - g.  Any valid bound satisfies the
    contract; callers must not rely on minimality.
    """
    h = f - g
    if not h:
        raise ValueError("f and g are identical; no sign to stabilize")
    lead = abs(h.coeffs[-1])
    bound = 1 + max((abs(c) / lead for c in h.coeffs[:-1]), default=_ZERO)
    return bound.numerator // bound.denominator + 1


def poly_to_json(f: RatPoly) -> list:
    """JSON form: coefficient strings "p/q" (or "p"), lowest degree first."""
    return [str(c) for c in f.coeffs]


def poly_from_json(data) -> RatPoly:
    return RatPoly(Fraction(str(c)) for c in data)


def numerical_from_json(data) -> NumPoly:
    return NumPoly(Fraction(str(c)) for c in data)
