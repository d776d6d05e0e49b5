"""Shared randomized generators for the test suite.

Everything is driven by an explicit random.Random so tests stay
reproducible.  Valid lattices come from splitting types, optionally thinned
to a random meet/join-closed sublattice (which inherits every invariant).
Semicontinuity-respecting families assign each point a degree multiset from
a dominance-increasing chain; for splitting types with a fixed summand count
and total degree, dominance of sorted degree sequences is exactly the HN
polygon order, so types rise along specializations by construction.
"""

from __future__ import annotations

import random

from hnstrat import (
    FiniteSpace,
    SheafFamily,
    SplittingType,
    SubobjectLattice,
    lattice_from_splitting,
    validate_lattice,
)

_LATTICE_CACHE = {}


def make_splitting(rng: random.Random, max_summands=8, lo=-5, hi=5, min_summands=1):
    n = rng.randint(min_summands, max_summands)
    return SplittingType(rng.randint(lo, hi) for _ in range(n))


def splitting_with_distinct(rng: random.Random, n_distinct, lo=-5, hi=5, max_extra=3):
    """A splitting type with exactly n_distinct distinct degrees."""
    degrees = rng.sample(range(lo, hi + 1), n_distinct)
    out = []
    for a in degrees:
        out.extend([a] * rng.randint(1, max_extra))
    return SplittingType(out)


def cached_lattice(degrees) -> SubobjectLattice:
    """Validated lattice for a degree multiset, shared across tests/points."""
    key = tuple(sorted(degrees, reverse=True))
    got = _LATTICE_CACHE.get(key)
    if got is None:
        got = validate_lattice(lattice_from_splitting(SplittingType(key)))
        _LATTICE_CACHE[key] = got
    return got


def make_valid_lattice(rng: random.Random, max_summands=6) -> SubobjectLattice:
    """A validated lattice: a splitting lattice or a sublattice of one."""
    base = cached_lattice(make_splitting(rng, max_summands=max_summands).degrees)
    if rng.random() < 0.4 or len(base) <= 4:
        return base
    keep = {base.bottom, base.top}
    for v in base.nodes:
        if rng.random() < 0.5:
            keep.add(v)
    # close under meet and join so the invariants are inherited
    changed = True
    while changed:
        changed = False
        for a in list(keep):
            for b in list(keep):
                for c in (base.meet(a, b), base.join(a, b)):
                    if c not in keep:
                        keep.add(c)
                        changed = True
    nodes = tuple(v for v in base.nodes if v in keep)
    sub = SubobjectLattice(
        nodes,
        base.leq,
        {v: base.P(v) for v in nodes},
        bottom=base.bottom,
        top=base.top,
    )
    return validate_lattice(sub)


def dominance_step(rng: random.Random, degrees, lo=-5, hi=5):
    """One dominance-increasing move: +1 on a larger entry, -1 on a smaller."""
    degs = sorted(degrees, reverse=True)
    options = [
        (i, j)
        for i in range(len(degs))
        for j in range(len(degs))
        if i != j and degs[i] >= degs[j] and degs[i] < hi and degs[j] > lo
    ]
    if not options:
        return tuple(degs)
    i, j = rng.choice(options)
    degs[i] += 1
    degs[j] -= 1
    return tuple(sorted(degs, reverse=True))


def make_space(rng: random.Random, n_points) -> FiniteSpace:
    points = [f"s{i}" for i in range(n_points)]
    pairs = []
    for j in range(1, n_points):
        for i in range(j):
            if rng.random() < 2.0 / (j + 1):
                pairs.append((points[i], points[j]))
    return FiniteSpace(points, pairs)


def make_family(rng: random.Random, n_points=None, max_summands=4) -> SheafFamily:
    """A semicontinuity-respecting family over a random finite space."""
    if n_points is None:
        n_points = rng.randint(5, 15)
    space = make_space(rng, n_points)
    n = rng.randint(2, max_summands)
    current = tuple(sorted((rng.randint(-5, 5) for _ in range(n)), reverse=True))
    depth = {p: len(space.generizations(p)) for p in space.points}
    chain = [current]
    for _ in range(max(depth.values())):
        if rng.random() < 0.7:
            current = dominance_step(rng, current)
        chain.append(current)
    fibers = {
        p: cached_lattice(chain[min(depth[p] - 1, len(chain) - 1)])
        for p in space.points
    }
    return SheafFamily(space, fibers)
