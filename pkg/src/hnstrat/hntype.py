"""Harder-Narasimhan types, their polygons, and the polygon partial order.

An HN type is the sequence (f_1, ..., f_p) of Hilbert polynomials of the
steps of a Harder-Narasimhan filtration.  Validity means:

(1) 0 < f_1 < ... < f_p in the eventual order,
(2) all f_i share one degree, and
(3) the slope polynomials (f_i - f_{i-1}) / (r_i - r_{i-1}) strictly
    decrease, where r_i = r(f_i).

Condition (3) presupposes strictly increasing ranks (otherwise the quotient
is undefined); that is checked first and reported separately.  All slope
comparisons are done cross-multiplied, so only polynomial arithmetic occurs.

The polygon of a type joins (0, 0) and the points (r_i, f_i) by segments in
Z x Q[lam].  A point (a, f) with integer a lies under the polygon when
0 <= a <= r_p and f is eventually at most the polygon's interpolated value
at a; domination of every vertex defines the partial order on types that
drives semicontinuity and stratification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numpoly import (
    NumPoly,
    RatPoly,
    eventual_sign,
    poly_to_json,
    numerical_from_json,
    rank,
)


class HNTypeError(ValueError):
    """Invalid Harder-Narasimhan type. `index` is the 1-based offending position."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class Condition1Violation(HNTypeError):
    """Positivity or strict increase of the f_i fails."""


class Condition2Violation(HNTypeError):
    """The f_i do not all share one degree."""


class Condition3Violation(HNTypeError):
    """The slope polynomials do not strictly decrease."""


class NonIncreasingRank(HNTypeError):
    """r(f_i) <= r(f_{i-1}), which leaves the slope quotient undefined."""


class OutOfRange(ValueError):
    """Interpolation abscissa outside [0, r_p]."""


class HNType:
    """Validated Harder-Narasimhan type: construction enforces (1)-(3)."""

    __slots__ = ("polys",)

    def __init__(self, polys):
        ps = tuple(NumPoly.wrap(p) for p in polys)
        if not ps:
            raise HNTypeError("a Harder-Narasimhan type is a nonempty sequence")
        if eventual_sign(ps[0]) <= 0:
            raise Condition1Violation(f"f_1 = {ps[0]} is not eventually positive", index=1)
        for i in range(1, len(ps)):
            if not ps[i - 1] < ps[i]:
                raise Condition1Violation(
                    f"f_{i} = {ps[i - 1]} does not eventually stay below f_{i + 1} = {ps[i]}",
                    index=i + 1,
                )
        d = ps[0].degree
        for i in range(1, len(ps)):
            if ps[i].degree != d:
                raise Condition2Violation(
                    f"f_{i + 1} = {ps[i]} has degree {ps[i].degree}, expected {d}", index=i + 1
                )
        ranks = [rank(p) for p in ps]
        for i in range(1, len(ps)):
            if ranks[i] <= ranks[i - 1]:
                raise NonIncreasingRank(
                    f"r(f_{i + 1}) = {ranks[i]} does not exceed r(f_{i}) = {ranks[i - 1]}",
                    index=i + 1,
                )
        # slope_i = (f_i - f_{i-1}) / (r_i - r_{i-1}) with f_0 = 0, r_0 = 0;
        # strict decrease, compared cross-multiplied (denominators positive).
        prev_num, prev_den = ps[0], ranks[0]
        for i in range(1, len(ps)):
            num = ps[i] - ps[i - 1]
            den = ranks[i] - ranks[i - 1]
            if eventual_sign(prev_num * den - num * prev_den) <= 0:
                raise Condition3Violation(
                    f"slope at step {i + 1} does not strictly decrease", index=i + 1
                )
            prev_num, prev_den = num, den
        self.polys = ps

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __eq__(self, other):
        if not isinstance(other, HNType):
            return NotImplemented
        return self.polys == other.polys

    def __hash__(self):
        return hash(self.polys)

    @property
    def ranks(self):
        return tuple(rank(p) for p in self.polys)

    @property
    def total(self) -> NumPoly:
        """Hilbert polynomial of the whole object, f_p."""
        return self.polys[-1]

    @property
    def endpoint(self):
        """Last polygon vertex (r(f_p), f_p)."""
        return (rank(self.polys[-1]), self.polys[-1])

    def __repr__(self):
        return f"HNType({', '.join(str(p) for p in self.polys)})"


def validate_hn_type(polys) -> HNType:
    """Validate a sequence of numerical polynomials as an HN type.

    Raises Condition1Violation / Condition2Violation / Condition3Violation /
    NonIncreasingRank, each carrying the 1-based index where validation fails.
    """
    return HNType(polys)


def quotient_shift(tau: HNType) -> HNType:
    """The type (f_2 - f_1, ..., f_p - f_1) of the quotient by the first step.

    That this is again a valid HN type is a theorem; construction re-checks it.
    """
    if len(tau) < 2:
        raise ValueError("quotient shift needs a type of length at least 2")
    f1 = tau[0]
    return HNType(tuple(f - f1 for f in tau.polys[1:]))


@dataclass(frozen=True)
class PolygonPoint:
    """Point (a, f) of Z x Q[lam]; a is integral at vertices and tested points."""

    a: Fraction
    f: RatPoly

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))


class HNPolygon:
    """Concave polygon through (0, 0) and the points (r_i, f_i)."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = tuple(vertices)
        if len(vs) < 2:
            raise ValueError("a polygon needs at least two vertices")
        for i in range(1, len(vs)):
            if not vs[i - 1].a < vs[i].a:
                raise ValueError("polygon abscissas must strictly increase")
        # strict concavity: successive slopes strictly decrease (cross-multiplied)
        for i in range(1, len(vs) - 1):
            left = (vs[i].f - vs[i - 1].f) * (vs[i + 1].a - vs[i].a)
            right = (vs[i + 1].f - vs[i].f) * (vs[i].a - vs[i - 1].a)
            if eventual_sign(left - right) <= 0:
                raise ValueError(f"polygon is not strictly concave at vertex {i}")
        self.vertices = vs

    @property
    def span(self) -> Fraction:
        return self.vertices[-1].a

    def __eq__(self, other):
        if not isinstance(other, HNPolygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        pts = ", ".join(f"({v.a}, {v.f})" for v in self.vertices)
        return f"HNPolygon({pts})"


def polygon_of(tau: HNType) -> HNPolygon:
    """The polygon with vertices (0, 0), (r(f_1), f_1), ..., (r(f_p), f_p)."""
    vertices = [PolygonPoint(0, RatPoly())]
    vertices.extend(PolygonPoint(r, f) for r, f in zip(tau.ranks, tau.polys))
    return HNPolygon(vertices)


def interpolate_at(polygon: HNPolygon, a) -> RatPoly:
    """The unique h with (a, h) on the polygon, as an exact convex combination.

    Locates the segment containing a and returns t*f_i + (1-t)*f_{i+1} with
    t = (a_{i+1} - a) / (a_{i+1} - a_i).  At a vertex this reproduces the
    vertex polynomial exactly.
    """
    a = Fraction(a)
    vs = polygon.vertices
    if a < 0 or a > vs[-1].a:
        raise OutOfRange(f"abscissa {a} outside [0, {vs[-1].a}]")
    for i in range(len(vs) - 1):
        lo, hi = vs[i], vs[i + 1]
        if lo.a <= a <= hi.a:
            t = (hi.a - a) / (hi.a - lo.a)
            return lo.f * t + hi.f * (1 - t)
    raise OutOfRange(f"abscissa {a} not located")  # unreachable on valid polygons


def lies_under(point: PolygonPoint, polygon: HNPolygon) -> bool:
    """Whether (a, f) lies under the polygon: a in range and f eventually at
    most the interpolated value.  The abscissa must be an integer."""
    if point.a.denominator != 1:
        raise ValueError(f"lies_under needs an integer abscissa, got {point.a}")
    if point.a < 0 or point.a > polygon.span:
        return False
    return point.f <= interpolate_at(polygon, point.a)


def hnt_leq(tau1: HNType, tau2: HNType) -> bool:
    """Partial order on types: every vertex of tau1 lies under tau2's polygon."""
    poly2 = polygon_of(tau2)
    return all(
        lies_under(PolygonPoint(r, f), poly2) for r, f in zip(tau1.ranks, tau1.polys)
    )


def type_to_json(tau: HNType) -> list:
    return [poly_to_json(f) for f in tau.polys]


def type_from_json(data) -> HNType:
    return HNType([numerical_from_json(p) for p in data])


def polygon_to_json(polygon: HNPolygon) -> list:
    return [{"r": int(v.a), "f": poly_to_json(v.f)} for v in polygon.vertices]
