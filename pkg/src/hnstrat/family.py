"""Discrete families of lattice objects over finite topological spaces.

A finite topological space is the same thing as a preorder on its points:
(s', s) in `specializes` says s lies in the closure of {s'}.  Opens are the
generization-closed subsets, closeds the specialization-closed ones.

A `SheafFamily` assigns a subobject lattice to each point, with constant
total Hilbert polynomial on every connected component (the combinatorial
residue of flatness).  On such families this module verifies Shatz
semicontinuity (the HN type can only rise under specialization), computes
the stratification of the space into level sets of the HN function, runs
the recursive stratification that mirrors the inductive construction of the
schematic strata (restrict to the open locus of types at most tau, pass to
the sublocus carrying a forced first step, quotient, recurse with the
shifted type), and produces relative HN filtrations when the type is
constant.  The recursion asserts at every level that it reproduces the
direct level set; a failure raises InductionMismatch and signals a bug, not
a data problem.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hntype import HNType, hnt_leq, quotient_shift, type_to_json
from .lattice import (
    LatticeError,
    SplittingType,
    SubobjectLattice,
    forced_first_step,
    hn_filtration,
    hn_type,
    interval_quotient,
    is_semistable,
    lattice_from_json,
    lattice_from_splitting,
    validate_lattice,
)


class FamilyError(Exception):
    pass


class FamilyValidationError(FamilyError):
    """A family invariant failed at load time."""


class SemicontinuityRequired(FamilyError):
    """Stratification assertions failed; run check_semicontinuity first."""


class InductionMismatch(FamilyError):
    """The recursive stratum differs from the direct level set (a bug)."""


class FiniteSpace:
    """Finite topological space, encoded by its specialization preorder.

    Construction takes generating pairs (s', s), meaning s is in the closure
    of {s'}, and closes them reflexively and transitively.
    """

    __slots__ = ("points", "_down", "_up")

    def __init__(self, points, specializes=()):
        self.points = tuple(points)
        pset = set(self.points)
        if len(pset) != len(self.points):
            raise ValueError("duplicate points")
        succ = {p: {p} for p in self.points}
        for a, b in specializes:
            if a not in pset or b not in pset:
                raise ValueError(f"specialization mentions unknown point {a!r} or {b!r}")
            succ[a].add(b)
        down = {}
        for p in self.points:
            seen = {p}
            stack = [p]
            while stack:
                w = stack.pop()
                for u in succ[w]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            down[p] = frozenset(seen)
        self._down = down
        up = {p: set() for p in self.points}
        for p, closure in down.items():
            for q in closure:
                up[q].add(p)
        self._up = {p: frozenset(s) for p, s in up.items()}

    def specializes(self, s_prime, s) -> bool:
        """True when s lies in the closure of {s_prime}."""
        return s in self._down[s_prime]

    def specializations(self, p) -> frozenset:
        """The closure of {p}."""
        return self._down[p]

    def generizations(self, p) -> frozenset:
        return self._up[p]

    def strict_pairs(self):
        """All specialization pairs (s', s) with s' != s, in point order."""
        for p in self.points:
            for q in self.points:
                if p != q and q in self._down[p]:
                    yield (p, q)

    def is_open(self, subset) -> bool:
        sub = set(subset)
        return all(self._up[p] <= sub for p in sub)

    def is_closed(self, subset) -> bool:
        sub = set(subset)
        return all(self._down[p] <= sub for p in sub)

    def restrict(self, subset) -> "FiniteSpace":
        """The subspace on `subset` with the induced preorder."""
        keep = set(subset)
        pts = tuple(p for p in self.points if p in keep)
        pairs = [(p, q) for p in pts for q in pts if q in self._down[p]]
        return FiniteSpace(pts, pairs)

    def components(self):
        """Connected components (of the underlying undirected relation)."""
        seen = set()
        out = []
        for p in self.points:
            if p in seen:
                continue
            comp = {p}
            stack = [p]
            while stack:
                w = stack.pop()
                for u in self._down[w] | self._up[w]:
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            out.append(frozenset(comp))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "points": [str(p) for p in self.points],
            "specializes": sorted(
                [str(a), str(b)] for a, b in self.strict_pairs()
            ),
        }

    @classmethod
    def from_json(cls, data) -> "FiniteSpace":
        points = [str(p) for p in data["points"]]
        pairs = [(str(a), str(b)) for a, b in data.get("specializes", [])]
        return cls(points, pairs)

    def __repr__(self):
        return f"FiniteSpace({len(self.points)} points)"


@dataclass(frozen=True)
class SemicontinuityWitness:
    """A specialization pair whose HN types fail to rise."""

    generic: object
    special: object
    generic_type: HNType
    special_type: HNType

    def to_json(self) -> dict:
        return {
            "generic": str(self.generic),
            "special": str(self.special),
            "generic_type": type_to_json(self.generic_type),
            "special_type": type_to_json(self.special_type),
        }


@dataclass(frozen=True)
class Stratification:
    """Level sets of the HN function, with the open sets of types at most tau."""

    space: FiniteSpace
    strata: dict
    leq_opens: dict

    def types(self):
        return tuple(self.strata)

    def to_json(self) -> dict:
        def block(mapping):
            rows = [
                {"type": type_to_json(tau), "points": sorted(str(p) for p in pts)}
                for tau, pts in mapping.items()
            ]
            rows.sort(key=lambda row: row["type"])
            return rows

        return {"strata": block(self.strata), "opens": block(self.leq_opens)}


class SheafFamily:
    """A family of lattice objects over a finite space.

    `fibers` maps each point to a SubobjectLattice or a SplittingType (the
    latter is converted on load).  Validation checks each fiber, rejects zero
    fibers, requires one common dimension, and requires the total Hilbert
    polynomial to be constant on every connected component.
    """

    def __init__(self, space: FiniteSpace, fibers, *, validate=True):
        self.space = space
        converted = {}
        for p in space.points:
            if p not in fibers:
                raise FamilyValidationError(f"missing fiber at point {p!r}")
            fib = fibers[p]
            if isinstance(fib, SplittingType):
                fib = lattice_from_splitting(fib)
            converted[p] = fib
        self.fibers = converted
        self._hn = None
        if validate:
            self._validate()

    def _validate(self):
        degree = None
        for p in self.space.points:
            fib = self.fibers[p]
            try:
                validate_lattice(fib)
            except LatticeError as exc:
                raise FamilyValidationError(f"invalid fiber at point {p!r}: {exc}") from exc
            if fib.is_zero_object():
                raise FamilyValidationError(f"zero fiber at point {p!r}")
            d = fib.P(fib.top).degree
            if degree is None:
                degree = d
            elif d != degree:
                raise FamilyValidationError(
                    f"fiber at {p!r} has dimension {d}, expected {degree}"
                )
        for comp in self.space.components():
            totals = {self.fibers[p].P(self.fibers[p].top) for p in comp}
            if len(totals) > 1:
                raise FamilyValidationError(
                    f"total Hilbert polynomial is not constant on component {sorted(map(str, comp))}"
                )

    def hn_function(self) -> dict:
        """The per-point HN type; lattice failures name the offending point."""
        if self._hn is None:
            out = {}
            for p in self.space.points:
                try:
                    out[p] = hn_type(self.fibers[p])
                except LatticeError as exc:
                    raise FamilyError(f"HN type failed at point {p!r}: {exc}") from exc
            self._hn = out
        return self._hn

    def check_semicontinuity(self):
        """None if the HN type rises along every specialization, else a witness."""
        hn = self.hn_function()
        for s_prime, s in self.space.strict_pairs():
            if not hnt_leq(hn[s_prime], hn[s]):
                return SemicontinuityWitness(s_prime, s, hn[s_prime], hn[s])
        return None

    def stratify(self) -> Stratification:
        """Level sets of the HN function, with the Shatz open/closed assertions.

        Each set of points of type at most tau must be open, and each stratum
        must be closed inside it; a family violating semicontinuity fails
        those assertions and raises SemicontinuityRequired.
        """
        hn = self.hn_function()
        strata = {}
        for p in self.space.points:
            strata.setdefault(hn[p], set()).add(p)
        strata = {tau: frozenset(pts) for tau, pts in strata.items()}
        leq_opens = {
            tau: frozenset(p for p in self.space.points if hnt_leq(hn[p], tau))
            for tau in strata
        }
        for tau, opens in leq_opens.items():
            if not self.space.is_open(opens):
                raise SemicontinuityRequired(
                    f"points of type at most {tau!r} are not open; "
                    "the family violates semicontinuity"
                )
            for p in strata[tau]:
                for q in self.space.specializations(p):
                    if q in opens and q not in strata[tau]:
                        raise SemicontinuityRequired(
                            f"stratum of {tau!r} is not closed in its open set at {q!r}"
                        )
        return Stratification(self.space, strata, leq_opens)

    def recursive_stratify(self, tau: HNType) -> frozenset:
        """The stratum of tau, computed by the inductive quotient construction.

        Length 1: the points with a semistable fiber of Hilbert polynomial
        f_1.  Length >= 2: restrict to U = {HN type <= tau}, keep the points
        whose fiber has a forced first step with P = f_1 and whose quotient
        has the polynomial that the type prescribes, form the quotient family
        there, and recurse with the shifted type.  Every level asserts the
        result equals the direct level set; InductionMismatch means a bug.
        """
        hn = self.hn_function()
        if len(tau) == 1:
            f1 = tau[0]
            result = frozenset(
                p
                for p in self.space.points
                if self.fibers[p].P(self.fibers[p].top) == f1
                and is_semistable(self.fibers[p])
            )
        else:
            total = tau.total
            quotients = {}
            for p in self.space.points:
                if not hnt_leq(hn[p], tau):
                    continue
                fib = self.fibers[p]
                step = forced_first_step(fib, tau)
                if step is None:
                    continue
                if fib.P(fib.top) != total:
                    # the quotient must have polynomial f_l - f_1; a fiber with a
                    # different total cannot carry the prescribed quotient
                    continue
                quotients[p] = interval_quotient(fib, step)
            sub = SheafFamily(
                self.space.restrict(quotients), quotients, validate=False
            )
            result = sub.recursive_stratify(quotient_shift(tau))
        expected = frozenset(p for p in self.space.points if hn[p] == tau)
        if result != expected:
            raise InductionMismatch(
                f"recursive stratum {sorted(map(str, result))} differs from the "
                f"level set {sorted(map(str, expected))} for {tau!r}"
            )
        return result

    def relative_hn(self, tau: HNType):
        """Per-point filtrations when the whole family has constant type tau,
        else None.  On a reduced (discrete) base, constant type suffices."""
        if self.recursive_stratify(tau) != frozenset(self.space.points):
            return None
        return {p: hn_filtration(self.fibers[p]) for p in self.space.points}

    def restrict(self, subset) -> "SheafFamily":
        """The family over the subspace on `subset` (fibers shared)."""
        sub = self.space.restrict(subset)
        return SheafFamily(
            sub, {p: self.fibers[p] for p in sub.points}, validate=False
        )

    def base_change_check(self, subset, tau: HNType) -> bool:
        """Whether restriction commutes with stratification for tau."""
        restricted = self.restrict(subset).recursive_stratify(tau)
        ambient = self.recursive_stratify(tau)
        return restricted == (frozenset(subset) & ambient)

    def to_json(self) -> dict:
        return {
            "points": [str(p) for p in self.space.points],
            "specializes": self.space.to_json()["specializes"],
            "fibers": {str(p): self.fibers[p].to_json() for p in self.space.points},
        }

    def __repr__(self):
        return f"SheafFamily({len(self.space.points)} points)"


def family_from_json(data) -> SheafFamily:
    space = FiniteSpace.from_json(data)
    fibers = {}
    for p in space.points:
        raw = data["fibers"][p]
        if "degrees" in raw:
            fibers[p] = SplittingType.from_json(raw)
        else:
            fibers[p] = lattice_from_json(raw)
    return SheafFamily(space, fibers)
