"""Permutation groups: Schreier-Sims, normal closures, Frattini ranks, classes.

Permutations are tuples of images on ``range(n)``.  Products act on the
right: ``mul(a, b)`` applies ``a`` first, then ``b``, so ``mul(a, b)[i] ==
b[a[i]]``.  Everything here is deterministic; randomness only enters through
an explicitly passed :class:`random.Random`.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Perm = tuple  # tuple[int, ...]

CLASS_BOUND = 10 ** 6


class BoundExceeded(RuntimeError):
    """A configured size bound (order, classes, degree) would be exceeded."""

    def __init__(self, bound: str, value, limit):
        super().__init__(f"{bound} bound exceeded: {value} > {limit}")
        self.bound = bound
        self.value = value
        self.limit = limit


# --- permutation primitives ---------------------------------------------------

def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(a: Perm) -> bool:
    return all(i == x for i, x in enumerate(a))


def mul(a: Perm, b: Perm) -> Perm:
    return tuple(map(b.__getitem__, a))


def inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def power(a: Perm, k: int) -> Perm:
    if k < 0:
        a, k = inv(a), -k
    result = identity(len(a))
    while k:
        if k & 1:
            result = mul(result, a)
        k >>= 1
        if k:
            a = mul(a, a)
    return result


def conj(a: Perm, g: Perm) -> Perm:
    """g^-1 a g."""
    return mul(mul(inv(g), a), g)


def cycles(a: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i]:
            continue
        c = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            seen[j] = True
            c.append(j)
            j = a[j]
        out.append(tuple(c))
    return out


def cycle_type(a: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(a)), reverse=True))


def order(a: Perm) -> int:
    return math.lcm(*(len(c) for c in cycles(a))) if a else 1


def from_cycles(n: int, *cs: Sequence[int]) -> Perm:
    img = list(range(n))
    for c in cs:
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    return tuple(img)


def check_perm(a: Sequence[int], n: int | None = None) -> Perm:
    a = tuple(a)
    if sorted(a) != list(range(len(a))):
        raise ValueError(f"not a permutation: {a!r}")
    if n is not None and len(a) != n:
        raise ValueError(f"permutation of degree {len(a)} where {n} expected")
    return a


def key(a: Perm):
    """Compact hashable fingerprint."""
    return bytes(a) if len(a) <= 256 else a


# --- groups -----------------------------------------------------------------

@dataclass
class _Level:
    point: int
    gens: list
    transversal: dict  # orbit point -> coset rep mapping base point there


class PermGroup:
    """A permutation group given by generators; BSGS computed on demand."""

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None,
                 name: str | None = None):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            check_perm(g, degree)
        self.degree = degree
        self.generators = [g for g in gens if not is_identity(g)]
        self.name = name
        self._levels: list[_Level] | None = None

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    # Schreier-Sims
    @property
    def bsgs(self) -> list[_Level]:
        if self._levels is None:
            self._levels = _schreier_sims(self.generators, self.degree)
        return self._levels

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.bsgs]

    @property
    def strong_generators(self) -> list[Perm]:
        seen, out = set(), []
        for lv in self.bsgs:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def order(self) -> int:
        return math.prod(len(lv.transversal) for lv in self.bsgs)

    def is_trivial(self) -> bool:
        return not self.generators

    def sift(self, g: Perm) -> tuple[Perm, int]:
        for i, lv in enumerate(self.bsgs):
            b = g[lv.point]
            u = lv.transversal.get(b)
            if u is None:
                return g, i
            g = mul(g, inv(u))
        return g, len(self.bsgs)

    def __contains__(self, g) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        h, _ = self.sift(g)
        return is_identity(h)

    def random_element(self, rng: random.Random) -> Perm:
        g = identity(self.degree)
        for lv in reversed(self.bsgs):
            reps = lv.transversal
            g = mul(g, reps[rng.choice(sorted(reps))])
        return g

    def elements(self) -> list[Perm]:
        elems = [identity(self.degree)]
        for lv in reversed(self.bsgs):
            reps = [lv.transversal[b] for b in sorted(lv.transversal)]
            elems = [mul(x, u) for x in elems for u in reps]
        return elems

    def subgroup(self, gens, name=None) -> PermGroup:
        gens = [tuple(g) for g in gens]
        for g in gens:
            if g not in self:
                raise ValueError("generator is not an element of the group")
        return PermGroup(gens, self.degree, name)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(g in other for g in self.generators)

    def is_normal_in(self, other: PermGroup) -> bool:
        return all(conj(h, g) in self for h in self.generators for g in other.generators)

    def is_3group(self) -> bool:
        return _is_power_of(self.order(), 3)

    def exponent_of_generators(self) -> int:
        return math.lcm(1, *(order(g) for g in self.generators))

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            orb = [i]
            seen[i] = True
            for x in orb:
                for g in self.generators:
                    y = g[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
            out.append(sorted(orb))
        return out


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _orbit_transversal(point: int, gens: list, n: int) -> dict:
    reps = {point: identity(n)}
    queue = [point]
    for x in queue:
        ux = reps[x]
        for g in gens:
            y = g[x]
            if y not in reps:
                reps[y] = mul(ux, g)
                queue.append(y)
    return reps


def _schreier_sims(gens: list, n: int, abort_unless_power_of: int | None = None):
    """Deterministic Schreier-Sims.

    With ``abort_unless_power_of=p`` the construction stops (returning None)
    as soon as a basic orbit length that is not a power of p shows up.
    """
    levels: list[_Level] = []

    def new_level(g):
        for i, x in enumerate(g):
            if x != i:
                return i
        raise AssertionError("identity has no moved point")

    for g in gens:
        if all(g[lv.point] == lv.point for lv in levels):
            if not is_identity(g):
                levels.append(_Level(new_level(g), [], {}))
    if not levels:
        return []
    for i, lv in enumerate(levels):
        base = [l.point for l in levels[:i]]
        lv.gens = [g for g in gens if all(g[b] == b for b in base)]
        lv.transversal = _orbit_transversal(lv.point, lv.gens, n)
        if abort_unless_power_of and not _is_power_of(len(lv.transversal), abort_unless_power_of):
            return None

    def strip(g, start):
        for j in range(start, len(levels)):
            lv = levels[j]
            u = lv.transversal.get(g[lv.point])
            if u is None:
                return g, j
            g = mul(g, inv(u))
        return g, len(levels)

    # checked[i]: set of (orbit point, generator index) already verified at level i
    checked = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        restart = None
        for b in sorted(lv.transversal):
            ub = lv.transversal[b]
            for gi, s in enumerate(lv.gens):
                if (b, gi) in checked[i]:
                    continue
                bs = s[b]
                sch = mul(mul(ub, s), inv(lv.transversal[bs]))
                h, j = strip(sch, i + 1)
                if j < len(levels) or not is_identity(h):
                    if j == len(levels):
                        levels.append(_Level(new_level(h), [], {}))
                        checked.append(set())
                    for l in range(i + 1, j + 1):
                        levels[l].gens.append(h)
                        levels[l].transversal = _orbit_transversal(
                            levels[l].point, levels[l].gens, n)
                        checked[l] = set()
                        if abort_unless_power_of and not _is_power_of(
                                len(levels[l].transversal), abort_unless_power_of):
                            return None
                    restart = j
                    break
                checked[i].add((b, gi))
            if restart is not None:
                break
        if restart is not None:
            i = restart
        else:
            i -= 1
    return levels


def bsgs_build(G: PermGroup) -> PermGroup:
    """Populate the base and strong generating set of G (idempotent)."""
    G.bsgs
    return G


def generates_p_group(gens: list, degree: int, p: int) -> bool:
    """True iff <gens> is a p-group; bails out early on a bad orbit length."""
    for g in gens:
        if not _is_power_of(order(g), p):
            return False
    return _schreier_sims([g for g in gens if not is_identity(g)], degree, p) is not None


def normal_closure(G: PermGroup, seeds: Iterable[Sequence[int]]) -> PermGroup:
    """Smallest normal subgroup of G containing the seeds."""
    seeds = [tuple(s) for s in seeds]
    for s in seeds:
        if s not in G:
            raise ValueError("seed is not an element of the group")
    N = PermGroup([s for s in seeds if not is_identity(s)], G.degree)
    queue = list(N.generators)
    while queue:
        h = queue.pop()
        for g in G.generators:
            c = conj(h, g)
            if c not in N:
                N = PermGroup(N.generators + [c], G.degree)
                queue.append(c)
    return N


def commutator(a: Perm, b: Perm) -> Perm:
    """a^-1 b^-1 a b."""
    return mul(mul(inv(a), inv(b)), mul(a, b))


def frattini_subgroup_3group(P: PermGroup) -> PermGroup:
    gens = P.generators
    seeds = [commutator(a, b) for a, b in itertools.combinations(gens, 2)]
    seeds += [power(a, 3) for a in gens]
    return normal_closure(P, seeds)


def frattini_rank_3group(P: PermGroup) -> int:
    """d with |P : Phi(P)| = 3^d (the minimal number of generators)."""
    n = P.order()
    if not _is_power_of(n, 3):
        raise ValueError(f"group of order {n} is not a 3-group")
    if n == 1:
        return 0
    index = n // frattini_subgroup_3group(P).order()
    d = 0
    while index > 1:
        index //= 3
        d += 1
    return d


# --- conjugacy classes ----------------------------------------------------------

@dataclass
class ConjClasses:
    group: PermGroup
    reps: list
    sizes: list
    elements: list  # elements[i]: every member of class i, representative first
    locator: dict = field(repr=False)  # key(g) -> class index

    def __len__(self):
        return len(self.reps)

    def index(self, g: Perm) -> int:
        return self.locator[key(g)]

    def rep_orders(self) -> list[int]:
        return [order(r) for r in self.reps]


def conjugacy_classes(G: PermGroup, bound: int = CLASS_BOUND) -> ConjClasses:
    """All conjugacy classes by orbit enumeration.

    Each class is represented by its lexicographically least element and
    classes are listed in increasing order of representative, so the
    identity class comes first.
    """
    n = G.order()
    if n > bound:
        raise BoundExceeded("class enumeration order", n, bound)
    elems = sorted(G.elements())
    gens = G.generators
    ginv = [inv(g) for g in gens]
    locator: dict = {}
    reps, sizes, members = [], [], []
    for g in elems:
        if key(g) in locator:
            continue
        idx = len(reps)
        locator[key(g)] = idx
        cls = [g]
        for x in cls:
            for s, si in zip(gens, ginv):
                y = mul(mul(si, x), s)
                ky = key(y)
                if ky not in locator:
                    locator[ky] = idx
                    cls.append(y)
        reps.append(g)
        sizes.append(len(cls))
        members.append(cls)
    return ConjClasses(G, reps, sizes, members, locator)


def power_map(cc: ConjClasses, k: int) -> list[int]:
    """Class of g^k for each class of g."""
    return [cc.index(power(r, k)) for r in cc.reps]
