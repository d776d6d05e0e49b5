"""Finite subobject lattices with Hilbert-polynomial labels.

A `SubobjectLattice` is the computable stand-in for a pure coherent sheaf:
nodes model subsheaves of the top node E, the bottom node is 0, and each node
carries a numerical polynomial label P.  The labels must satisfy the
identities that exact sequences impose on genuine subsheaves:

* P(0) = 0, and F < G implies P(F) < P(G) eventually (strict monotonicity);
* P(F v G) + P(F ^ G) = P(F) + P(G) (modular additivity);
* all nonzero labels share one degree d (pure dimension).

Those identities are exactly what the existence and uniqueness arguments for
Harder-Narasimhan filtrations consume, so semistability, the maximal
destabilizer and the full filtration are computed by a direct scan plus
recursion on interval quotients, with every claimed property asserted at
runtime.  `enumerate_admissible_chains` is the brute-force counterpart used
to cross-check uniqueness.

`SplittingType` instantiates the model concretely: split bundles
O(a_1) + ... + O(a_n) on the projective line, whose subobject lattice is the
lattice of sub-multisets of the degree multiset.  Grouping equal degrees in
decreasing order gives a closed-form filtration (`hn_closed_form`) that is
computed without touching the lattice recursion and serves as its oracle.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .numpoly import NumPoly, RatPoly, eventual_sign, poly_to_json, numerical_from_json, rank
from .hntype import HNType, hnt_leq


class LatticeError(Exception):
    pass


class LatticeValidationError(LatticeError):
    """An invariant failed; `witnesses` names the offending nodes."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class BoundednessViolation(LatticeValidationError):
    """Not a bounded lattice: order axiom broken or a meet/join is missing."""


class ZeroLabelViolation(LatticeValidationError):
    """P(0) != 0."""


class StrictMonotonicityViolation(LatticeValidationError):
    """Some F < G with P(F) not eventually below P(G)."""


class ModularAdditivityViolation(LatticeValidationError):
    """P(F v G) + P(F ^ G) != P(F) + P(G) for some pair."""


class PurityViolation(LatticeValidationError):
    """Nonzero labels of mixed degree."""


class EmptyObject(LatticeError):
    """The zero object (bottom == top) was passed where a nonzero one is required."""


class NonUniqueMaximizer(LatticeError):
    """Two distinct maximizers survived; the input lattice is not a valid model."""


class HypothesisViolation(LatticeError):
    """forced_first_step was called with hn_type(L) not below the given type."""


class SubobjectLattice:
    """Finite bounded lattice of subobjects of E, labelled by Hilbert polynomials.

    `leq` is a callable (a, b) -> bool giving the order; it is queried lazily,
    so large node sets (e.g. sub-multiset lattices) never pay for the full
    relation unless validation demands it.  Instances are treated as immutable
    once validated; all derived data is cached.
    """

    def __init__(self, nodes, leq, labels, *, bottom=None, top=None):
        self._nodes = tuple(nodes)
        self._node_set = frozenset(self._nodes)
        if len(self._node_set) != len(self._nodes):
            raise ValueError("duplicate node identifiers")
        if not self._nodes:
            raise ValueError("a subobject lattice needs at least one node")
        self._leq = leq
        self._labels = {}
        for v in self._nodes:
            if v not in labels:
                raise ValueError(f"missing label for node {v!r}")
            self._labels[v] = NumPoly.wrap(labels[v])
        self.bottom = self._locate_extreme(bottom, lower=True)
        self.top = self._locate_extreme(top, lower=False)
        self._uppers = {}
        self._lowers = {}
        self._meets = {}
        self._joins = {}
        self._ranks = {}
        self._hn = None
        self._validated = False

    def _locate_extreme(self, given, *, lower):
        leq = self._leq
        if given is not None:
            if given not in self._node_set:
                raise ValueError(f"node {given!r} is not in the lattice")
            return given
        for v in self._nodes:
            if all((leq(v, w) if lower else leq(w, v)) for w in self._nodes):
                return v
        kind = "bottom" if lower else "top"
        raise BoundednessViolation(f"no {kind} node")

    @classmethod
    def from_relation(cls, nodes, pairs, labels, *, covers=False):
        """Build from an explicit relation.

        With covers=False the pairs are the full order relation (reflexive
        pairs may be omitted); with covers=True they are covering pairs and
        the reflexive-transitive closure is taken.
        """
        nodes = tuple(nodes)
        node_set = set(nodes)
        succ = {v: {v} for v in nodes}
        for a, b in pairs:
            if a not in node_set or b not in node_set:
                raise ValueError(f"relation mentions unknown node {a!r} or {b!r}")
            succ[a].add(b)
        if covers:
            rel = {}
            for v in nodes:
                seen = {v}
                stack = [v]
                while stack:
                    w = stack.pop()
                    for u in succ[w]:
                        if u not in seen:
                            seen.add(u)
                            stack.append(u)
                rel[v] = frozenset(seen)
        else:
            rel = {v: frozenset(succ[v]) for v in nodes}
        return cls(nodes, lambda a, b: b in rel[a], labels)

    @property
    def nodes(self):
        return self._nodes

    def __len__(self):
        return len(self._nodes)

    def __contains__(self, v):
        return v in self._node_set

    def leq(self, a, b) -> bool:
        return self._leq(a, b)

    def P(self, v) -> NumPoly:
        """Hilbert-polynomial label of a node."""
        return self._labels[v]

    def rank_of(self, v) -> int:
        r = self._ranks.get(v)
        if r is None:
            r = self._ranks[v] = rank(self._labels[v])
        return r

    def is_zero_object(self) -> bool:
        return self.bottom == self.top

    def uppers(self, v) -> frozenset:
        got = self._uppers.get(v)
        if got is None:
            leq = self._leq
            got = self._uppers[v] = frozenset(w for w in self._nodes if leq(v, w))
        return got

    def lowers(self, v) -> frozenset:
        got = self._lowers.get(v)
        if got is None:
            leq = self._leq
            got = self._lowers[v] = frozenset(w for w in self._nodes if leq(w, v))
        return got

    def interval(self, lo, hi):
        """Nodes in [lo, hi], in the lattice's node order."""
        leq = self._leq
        return tuple(v for v in self._nodes if leq(lo, v) and leq(v, hi))

    def join(self, a, b):
        """Least upper bound, or None if it does not exist."""
        key = (a, b)
        if key in self._joins:
            return self._joins[key]
        common = self.uppers(a) & self.uppers(b)
        out = None
        if common:
            # the minimum of `common`, if any, has the inclusion-largest upper set
            cand = max(common, key=lambda v: len(self.uppers(v)))
            if common <= self.uppers(cand):
                out = cand
        self._joins[key] = self._joins[(b, a)] = out
        return out

    def meet(self, a, b):
        """Greatest lower bound, or None if it does not exist."""
        key = (a, b)
        if key in self._meets:
            return self._meets[key]
        common = self.lowers(a) & self.lowers(b)
        out = None
        if common:
            cand = max(common, key=lambda v: len(self.lowers(v)))
            if common <= self.lowers(cand):
                out = cand
        self._meets[key] = self._meets[(b, a)] = out
        return out

    def to_json(self) -> dict:
        by_name = {str(v): v for v in self._nodes}
        order = sorted(by_name)
        pairs = [
            [a, b]
            for a in order
            for b in order
            if a != b and self._leq(by_name[a], by_name[b])
        ]
        return {
            "nodes": order,
            "leq": pairs,
            "covers": False,
            "P": {str(v): poly_to_json(self._labels[v]) for v in self._nodes},
        }

    def __repr__(self):
        return f"SubobjectLattice({len(self._nodes)} nodes, top P = {self.P(self.top)})"


def lattice_from_json(data) -> SubobjectLattice:
    nodes = [str(v) for v in data["nodes"]]
    pairs = [(str(a), str(b)) for a, b in data["leq"]]
    labels = {str(v): numerical_from_json(p) for v, p in data["P"].items()}
    covers = bool(data.get("covers", False))
    return SubobjectLattice.from_relation(nodes, pairs, labels, covers=covers)


def validate_lattice(L: SubobjectLattice) -> SubobjectLattice:
    """Exhaustively check the lattice invariants; returns L on success.

    Raises a LatticeValidationError subclass naming the violated invariant and
    witness nodes: bounded-lattice structure, P(0) = 0 with strict
    monotonicity, modular additivity, and purity of dimension.
    """
    if L._validated:
        return L
    nodes = L.nodes
    # order axioms; a broken order cannot be a bounded lattice
    for v in nodes:
        if v not in L.uppers(v):
            raise BoundednessViolation(f"order is not reflexive at {v!r}", (v,))
    for v in nodes:
        for w in L.uppers(v):
            if w != v and v in L.uppers(w):
                raise BoundednessViolation(f"order is not antisymmetric on {v!r}, {w!r}", (v, w))
            if not L.uppers(w) <= L.uppers(v):
                raise BoundednessViolation(f"order is not transitive at {v!r} <= {w!r}", (v, w))
    for v in nodes:
        if not L.leq(L.bottom, v):
            raise BoundednessViolation(f"bottom is not below {v!r}", (v,))
        if not L.leq(v, L.top):
            raise BoundednessViolation(f"top is not above {v!r}", (v,))
    if L.P(L.bottom):
        raise ZeroLabelViolation(f"P(0) = {L.P(L.bottom)} is nonzero", (L.bottom,))
    for v in nodes:
        pv = L.P(v)
        for w in L.uppers(v):
            if w != v and eventual_sign(L.P(w) - pv) <= 0:
                raise StrictMonotonicityViolation(
                    f"{v!r} < {w!r} but P does not strictly increase", (v, w)
                )
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            if L.leq(a, b) or L.leq(b, a):
                continue  # additivity is trivial for comparable pairs
            j = L.join(a, b)
            if j is None:
                raise BoundednessViolation(f"{a!r} and {b!r} have no join", (a, b))
            m = L.meet(a, b)
            if m is None:
                raise BoundednessViolation(f"{a!r} and {b!r} have no meet", (a, b))
            if L.P(j) + L.P(m) != L.P(a) + L.P(b):
                raise ModularAdditivityViolation(
                    f"P(join) + P(meet) != P({a!r}) + P({b!r})", (a, b)
                )
    degree = None
    witness = None
    for v in nodes:
        p = L.P(v)
        if not p:
            continue
        if degree is None:
            degree, witness = p.degree, v
        elif p.degree != degree:
            raise PurityViolation(
                f"labels of {witness!r} and {v!r} have degrees {degree} and {p.degree}",
                (witness, v),
            )
    L._validated = True
    return L


def is_semistable(L: SubobjectLattice) -> bool:
    """Gieseker semistability: r(E) P(F) <= r(F) P(E) for every proper nonzero F."""
    if L.is_zero_object():
        raise EmptyObject("the zero object has no semistability")
    pe = L.P(L.top)
    re = L.rank_of(L.top)
    for f in L.nodes:
        if f == L.bottom or f == L.top:
            continue
        if eventual_sign(L.P(f) * re - pe * L.rank_of(f)) > 0:
            return False
    return True


def max_destabilizer(L: SubobjectLattice):
    """The node maximizing the reduced polynomial P(F)/r(F), ties broken by
    maximal rank.  Uniqueness of the winner is asserted: modular additivity
    makes a surviving tie impossible in a valid lattice."""
    if L.is_zero_object():
        raise EmptyObject("the zero object has no destabilizer")
    best = None
    ties = []
    for f in L.nodes:
        if f == L.bottom:
            continue
        if best is None:
            best = f
            continue
        s = eventual_sign(L.P(f) * L.rank_of(best) - L.P(best) * L.rank_of(f))
        if s > 0:
            best, ties = f, []
        elif s == 0:
            if L.rank_of(f) > L.rank_of(best):
                best, ties = f, []
            elif L.rank_of(f) == L.rank_of(best):
                ties.append(f)
    if ties:
        raise NonUniqueMaximizer(f"{best!r} ties with {ties!r}")
    return best


def _interval_lattice(L: SubobjectLattice, lo, hi) -> SubobjectLattice:
    """The lattice on [lo, hi] with labels shifted by -P(lo); models hi/lo."""
    shift = L.P(lo)
    nodes = L.interval(lo, hi)
    labels = {v: L.P(v) - shift for v in nodes}
    degree = None
    witness = None
    for v in nodes:
        p = labels[v]
        if not p:
            continue
        if degree is None:
            degree, witness = p.degree, v
        elif p.degree != degree:
            raise PurityViolation(
                f"quotient labels of {witness!r} and {v!r} have mixed degree", (witness, v)
            )
    out = SubobjectLattice(nodes, L._leq, labels, bottom=lo, top=hi)
    # intervals of a valid lattice inherit every invariant; purity was just checked
    out._validated = L._validated
    return out


def interval_quotient(L: SubobjectLattice, f) -> SubobjectLattice:
    """The quotient object E/F as the lattice on [F, E] with shifted labels.

    Raises PurityViolation if the shifted labels have mixed degree, which
    cannot happen when F is the maximal destabilizer.
    """
    if f not in L:
        raise ValueError(f"node {f!r} is not in the lattice")
    if f == L.bottom:
        return L
    return _interval_lattice(L, f, L.top)


@dataclass(frozen=True)
class HNFiltration:
    """Chain 0 = HN_0 < ... < HN_l = E with the graded Hilbert polynomials."""

    steps: tuple
    graded: tuple

    def __len__(self):
        return len(self.graded)

    def type(self) -> HNType:
        """The HN type (P(HN_1), ..., P(HN_l)), i.e. cumulative graded sums."""
        totals = []
        acc = None
        for g in self.graded:
            acc = g if acc is None else acc + g
            totals.append(acc)
        return HNType(totals)


def hn_filtration(L: SubobjectLattice) -> HNFiltration:
    """The Harder-Narasimhan filtration, by iterated maximal destabilizers.

    Each step takes the maximal destabilizer of the current interval quotient.
    The defining properties of the result (graded pieces semistable, reduced
    graded slopes strictly decreasing) are asserted before returning.
    """
    if L.is_zero_object():
        raise EmptyObject("the zero object has no filtration")
    if L._hn is not None:
        return L._hn
    steps = [L.bottom]
    graded = []
    current = L
    while steps[-1] != L.top:
        f = max_destabilizer(current)
        g = current.P(f)
        if graded:
            prev = graded[-1]
            if eventual_sign(prev * rank(g) - g * rank(prev)) <= 0:
                raise AssertionError("reduced graded slopes failed to decrease")
        steps.append(f)
        graded.append(g)
        current = interval_quotient(current, f)
    for i in range(1, len(steps)):
        if not is_semistable(_interval_lattice(L, steps[i - 1], steps[i])):
            raise AssertionError("graded piece is not semistable")
    filt = HNFiltration(tuple(steps), tuple(graded))
    L._hn = filt
    return filt


def hn_type(L: SubobjectLattice) -> HNType:
    """The HN type of the lattice object; always validates, by the theorem."""
    return hn_filtration(L).type()


def forced_first_step(L: SubobjectLattice, tau: HNType):
    """Under hn_type(L) <= tau, a subobject with P = f_1 is forced to be the
    maximal destabilizer; return it, or None when no such node exists.

    Raises HypothesisViolation when hn_type(L) <= tau fails.  Uniqueness of
    the matching node and its agreement with the maximal destabilizer are
    theorems of the model and are asserted.
    """
    if L.is_zero_object():
        raise EmptyObject("the zero object has no first step")
    if not hnt_leq(hn_type(L), tau):
        raise HypothesisViolation(f"hn_type(L) = {hn_type(L)!r} is not below {tau!r}")
    f1 = tau[0]
    matches = [v for v in L.nodes if v != L.bottom and L.P(v) == f1]
    if not matches:
        return None
    if len(matches) > 1:
        raise AssertionError(f"distinct nodes {matches!r} share the forced polynomial {f1}")
    found = matches[0]
    if found != max_destabilizer(L):
        raise AssertionError(f"forced step {found!r} is not the maximal destabilizer")
    return found


def _interval_semistable(L: SubobjectLattice, lo, hi) -> bool:
    p_lo = L.P(lo)
    q = L.P(hi) - p_lo
    rq = rank(q)
    leq = L._leq
    for v in L.nodes:
        if v == lo or v == hi or not (leq(lo, v) and leq(v, hi)):
            continue
        h = L.P(v) - p_lo
        if eventual_sign(h * rq - q * rank(h)) > 0:
            return False
    return True


def enumerate_admissible_chains(L: SubobjectLattice):
    """All strictly increasing chains 0 < c_1 < ... < E whose graded pieces are
    semistable with strictly decreasing reduced slopes.

    Brute-force oracle for uniqueness of the HN filtration; exponential in
    general, intended for small lattices.
    """
    if L.is_zero_object():
        raise EmptyObject("the zero object has no chains")
    semistable_memo = {}

    def interval_ok(lo, hi):
        key = (lo, hi)
        got = semistable_memo.get(key)
        if got is None:
            got = semistable_memo[key] = _interval_semistable(L, lo, hi)
        return got

    chains = []
    leq = L._leq

    def extend(chain, prev_g, prev_r):
        last = chain[-1]
        if last == L.top:
            chains.append(tuple(chain))
            return
        for v in L.nodes:
            if v == last or not leq(last, v):
                continue
            g = L.P(v) - L.P(last)
            rg = rank(g)
            if prev_g is not None and eventual_sign(prev_g * rg - g * prev_r) <= 0:
                continue
            if not interval_ok(last, v):
                continue
            chain.append(v)
            extend(chain, g, rg)
            chain.pop()

    extend([L.bottom], None, None)
    return chains


class SplittingType:
    """Multiset of integers a_i, modeling O(a_1) + ... + O(a_n) on the line."""

    __slots__ = ("degrees",)

    def __init__(self, degrees):
        ds = tuple(sorted((int(a) for a in degrees), reverse=True))
        if not ds:
            raise ValueError("a splitting type needs at least one summand")
        self.degrees = ds

    def __eq__(self, other):
        if not isinstance(other, SplittingType):
            return NotImplemented
        return self.degrees == other.degrees

    def __hash__(self):
        return hash(self.degrees)

    def __repr__(self):
        return f"SplittingType{self.degrees}"

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees)}

    @classmethod
    def from_json(cls, data) -> "SplittingType":
        return cls(data["degrees"])


def hilbert_poly_splitting(a: int) -> NumPoly:
    """Hilbert polynomial of O(a) on the projective line: lam + a + 1."""
    return NumPoly((a + 1, 1))


def _sum_label(degrees) -> NumPoly:
    if not degrees:
        return NumPoly()
    return NumPoly((sum(a + 1 for a in degrees), len(degrees)))


def lattice_from_splitting(s: SplittingType) -> SubobjectLattice:
    """The lattice of sub-multisets of the degree multiset, ordered by
    multiset inclusion, with P(node) the sum of the summand polynomials."""
    counts = Counter(s.degrees)
    distinct = sorted(counts, reverse=True)
    nodes = []
    for mults in itertools.product(*(range(counts[a] + 1) for a in distinct)):
        node = tuple(
            a for a, m in zip(distinct, mults) for _ in range(m)
        )
        nodes.append(node)
    labels = {node: _sum_label(node) for node in nodes}
    as_counter = {node: Counter(node) for node in nodes}
    leq = lambda a, b: as_counter[a] <= as_counter[b]
    return SubobjectLattice(nodes, leq, labels, bottom=(), top=s.degrees)


def hn_closed_form(s: SplittingType) -> HNFiltration:
    """Closed-form filtration of a split bundle: group equal degrees in
    decreasing order.  Independent of the lattice recursion; its oracle."""
    steps = [()]
    graded = []
    acc = []
    for a, group in itertools.groupby(s.degrees):
        block = list(group)
        acc.extend(block)
        steps.append(tuple(acc))
        graded.append(_sum_label(block))
    return HNFiltration(tuple(steps), tuple(graded))
