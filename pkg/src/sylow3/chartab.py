"""Exact character tables.

``dixon_table`` works for any permutation group whose elements can be
enumerated: the class algebra is reduced modulo a prime l = 1 (mod exponent),
its common eigenvectors give the central characters modulo l, and each
character value is lifted to Q(zeta_e) through its eigenvalue multiplicities.

``sn_table`` and ``an_table`` are combinatorial (Murnaghan-Nakayama on
beta-sets, then Clifford theory for the alternating group).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime

from . import modp
from .cyclo import Cyclotomic, GaloisMap, galois_apply, reduce_modl
from .permgrp import (CLASS_BOUND, ConjClasses, PermGroup, conjugacy_classes, inv, key, mul,
                      power_map)


@dataclass
class CharacterTable:
    name: str
    order: int
    exponent: int
    class_labels: list
    class_sizes: list
    rep_orders: list
    power_maps: dict  # prime -> list of class indices
    irr: list  # rows of Cyclotomic with conductor = exponent
    classes: ConjClasses | None = field(default=None, repr=False)
    source: str = "dixon"

    @property
    def degrees(self) -> list[int]:
        return [row[0].rational_value() for row in self.irr]

    @property
    def centralizer_orders(self) -> list[int]:
        return [self.order // s for s in self.class_sizes]

    def __len__(self):
        return len(self.class_sizes)

    def inverse_classes(self) -> list[int]:
        """Class of g^-1, read off from the table (complex conjugate columns)."""
        cols = [tuple(row[c] for row in self.irr) for c in range(len(self))]
        index = {}
        for c, col in enumerate(cols):
            index.setdefault(col, c)
        return [index[tuple(x.conjugate() for x in col)] for col in cols]

    def to_json(self) -> dict:
        return {
            "group": self.name,
            "order": self.order,
            "exponent": self.exponent,
            "classes": [{"label": lab, "rep_order": o, "size": s}
                        for lab, o, s in zip(self.class_labels, self.rep_orders, self.class_sizes)],
            "power_maps": {str(p): list(m) for p, m in sorted(self.power_maps.items())},
            "irreducibles": [[x.to_json() for x in row] for row in self.irr],
            "source": self.source,
        }

    @classmethod
    def from_json(cls, d: dict) -> CharacterTable:
        return cls(
            name=d["group"], order=d["order"], exponent=d["exponent"],
            class_labels=[c.get("label", str(i)) for i, c in enumerate(d["classes"])],
            class_sizes=[c["size"] for c in d["classes"]],
            rep_orders=[c["rep_order"] for c in d["classes"]],
            power_maps={int(p): list(m) for p, m in d["power_maps"].items()},
            irr=[[Cyclotomic.from_json(x) for x in row] for row in d["irreducibles"]],
            source=d.get("source", "json"),
        )


def _row_key(row):
    deg = row[0].rational_value()
    trivial = all(x == 1 for x in row)
    return (deg, not trivial, tuple(x.sort_key() for x in row))


# --- Dixon ----------------------------------------------------------------------

def dixon_prime(exponent: int, order: int) -> int:
    """Least prime l = 1 (mod exponent) with l > 2 ceil(sqrt(|G|))."""
    bound = 2 * math.isqrt(order - 1) + 2 if order > 1 else 2
    ell = exponent + 1
    while ell <= bound or not isprime(ell):
        ell += exponent
    return ell


class _ClassAlgebra:
    """Class multiplication coefficients c_{s r t}, one matrix per class s."""

    def __init__(self, cc: ConjClasses, ell: int):
        self.cc = cc
        self.ell = ell
        self.r = len(cc)
        self.inverse = [cc.index(inv(g)) for g in cc.reps]
        self._cache: dict = {}

    def matrix(self, s: int) -> list:
        """M_s[r][t] = #{x in C_s : x^-1 z_t in C_r} mod l."""
        M = self._cache.get(s)
        if M is not None:
            return M
        cc, r = self.cc, self.r
        cols = []
        xs_inv = cc.elements[self.inverse[s]]  # inverses of the members of C_s
        locate = cc.locator
        for t in range(r):
            z = cc.reps[t]
            col = [0] * r
            for xi in xs_inv:
                col[locate[key(mul(xi, z))]] += 1
            cols.append(col)
        M = [[cols[t][row] % self.ell for t in range(r)] for row in range(r)]
        self._cache[s] = M
        return M


def _split_spaces(alg: _ClassAlgebra, order_of_classes: list) -> list:
    """Common eigenvectors of all class matrices, each normalised at the identity class."""
    ell, r = alg.ell, alg.r
    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]  # rref basis of F_l^r
    rng = random.Random(0)
    for s in order_of_classes:
        if all(len(V) == 1 for V in spaces):
            break
        M = alg.matrix(s)
        new_spaces = []
        for V in spaces:
            if len(V) == 1:
                new_spaces.append(V)
                continue
            basis, pivots = modp.rref(V, ell)
            images = [modp.matmul_vec(M, b, ell) for b in basis]
            d = len(basis)
            # A[j][i] = coordinate j of M b_i
            A = [[images[i][pivots[j]] for i in range(d)] for j in range(d)]
            eig = modp.roots(modp.charpoly(A, ell), ell, rng)
            if len(eig) == 1:
                new_spaces.append(basis)
                continue
            for lam in eig:
                shifted = [[(A[j][i] - (lam if i == j else 0)) % ell for i in range(d)]
                           for j in range(d)]
                coords = modp.nullspace(shifted, ell)
                vecs = [[sum(c[i] * basis[i][k] for i in range(d)) % ell for k in range(r)]
                        for c in coords]
                new_spaces.append(modp.rref(vecs, ell)[0])
        spaces = new_spaces
    if len(spaces) != r or any(len(V) != 1 for V in spaces):
        raise RuntimeError("eigenspace splitting did not reach one-dimensional spaces")
    out = []
    for (v,) in spaces:
        if not v[0]:
            raise RuntimeError("eigenvector vanishes at the identity class")
        inv0 = pow(v[0], -1, ell)
        out.append([x * inv0 % ell for x in v])
    return out


def dixon_table(G: PermGroup, bound: int = CLASS_BOUND, name: str | None = None,
                cc: ConjClasses | None = None) -> CharacterTable:
    if cc is None:
        cc = conjugacy_classes(G, bound)
    order = G.order()
    r = len(cc)
    rep_orders = cc.rep_orders()
    e = math.lcm(*rep_orders)
    ell = dixon_prime(e, order)
    sizes = cc.sizes
    alg = _ClassAlgebra(cc, ell)
    by_size = sorted(range(1, r), key=lambda s: (sizes[s], s))
    omegas = _split_spaces(alg, by_size)

    # lifting data: the class of g^j for every j, and zeta_e -> z mod l
    z = pow(modp.primitive_root(ell, list(factorint(ell - 1))), (ell - 1) // e, ell)
    pow_classes = []
    for c, g in enumerate(cc.reps):
        n = rep_orders[c]
        seq, x = [], tuple(range(G.degree))
        for _ in range(n):
            seq.append(cc.index(x))
            x = mul(x, g)
        pow_classes.append(seq)

    inverse = alg.inverse
    size_inv = [pow(s, -1, ell) for s in sizes]
    irr = []
    isq = math.isqrt(order)
    for w in omegas:
        norm = sum(w[t] * w[inverse[t]] * size_inv[t] for t in range(r)) % ell
        d2 = order * pow(norm, -1, ell) % ell
        deg = next((d for d in range(1, isq + 1) if d * d % ell == d2), None)
        if deg is None:
            raise RuntimeError("no admissible degree for a central character")
        chi = [w[t] * deg * size_inv[t] % ell for t in range(r)]
        row = []
        for c in range(r):
            n = rep_orders[c]
            zn = pow(z, e // n, ell)
            ninv = pow(n, -1, ell)
            vals = [chi[pc] for pc in pow_classes[c]]
            coeffs = {}
            for k in range(n):
                # multiplicity of the eigenvalue zeta_n^k
                m = sum(v * pow(zn, (-j * k) % n, ell) for j, v in enumerate(vals)) * ninv % ell
                if m > deg:
                    raise RuntimeError("eigenvalue multiplicity out of range")
                if m:
                    coeffs[k * (e // n)] = m
            val = Cyclotomic(e, coeffs)
            if reduce_modl(val, ell, z) != chi[c]:
                raise RuntimeError("lifted value does not reduce to the modular one")
            row.append(val)
        irr.append(row)
    irr.sort(key=_row_key)
    primes = sorted(factorint(order)) if order > 1 else []
    pmaps = {p: power_map(cc, p) for p in primes}
    labels = [_perm_class_label(o, i) for i, o in enumerate(rep_orders)]
    return CharacterTable(name or G.name or "G", order, e, labels, list(sizes), rep_orders,
                          pmaps, irr, cc, "dixon")


def _perm_class_label(o, i):
    return f"{o}_{i}"


# --- symmetric groups ------------------------------------------------------------

def partitions(n: int) -> list[tuple]:
    """Partitions of n in descending lexicographic order."""
    out = []

    def rec(rem, maxp, prefix):
        if rem == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rem, maxp), 0, -1):
            rec(rem - p, p, prefix + [p])

    rec(n, n, [])
    return out


def conjugate_partition(lam) -> tuple:
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0])) if lam else ()


def centralizer_order(mu) -> int:
    out = 1
    for i in set(mu):
        m = mu.count(i)
        out *= i ** m * math.factorial(m)
    return out


def _beta(lam) -> tuple:
    k = len(lam)
    return tuple(sorted((lam[i] + k - 1 - i for i in range(k)), reverse=True))


@lru_cache(maxsize=None)
def _mn(beta: tuple, mu: tuple) -> int:
    """Murnaghan-Nakayama on a beta-set: remove rim hooks of lengths mu[0], mu[1], ..."""
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        t = b - r
        if t < 0 or t in beads:
            continue
        sign = -1 if sum(1 for x in beta if t < x < b) % 2 else 1
        nb = tuple(sorted((beads - {b}) | {t}, reverse=True))
        total += sign * _mn(nb, rest)
    return total


def sn_character(lam, mu) -> int:
    return _mn(_beta(tuple(lam)), tuple(mu))


def _type_of_power(mu, k) -> tuple:
    parts = []
    for i in mu:
        g = math.gcd(i, k)
        parts += [i // g] * g
    return tuple(sorted(parts, reverse=True))


def sn_table(n: int) -> CharacterTable:
    if not 1 <= n <= 15:
        raise ValueError(f"symmetric tables supported for 1 <= n <= 15, got {n}")
    rows = partitions(n)
    cols = sorted(partitions(n))
    order = math.factorial(n)
    e = math.lcm(*range(1, n + 1))
    irr = [[Cyclotomic.rational(e, sn_character(lam, mu)) for mu in cols] for lam in rows]
    sizes = [order // centralizer_order(mu) for mu in cols]
    orders = [math.lcm(*mu) for mu in cols]
    col_index = {mu: i for i, mu in enumerate(cols)}
    primes = sorted(factorint(order)) if order > 1 else []
    pmaps = {p: [col_index[_type_of_power(mu, p)] for mu in cols] for p in primes}
    labels = ["(" + ",".join(map(str, mu)) + ")" for mu in cols]
    t = CharacterTable(f"S{n}", order, e, labels, sizes, orders, pmaps, irr, None, "symmetric")
    t.partitions = rows  # row labels
    t.cycle_types = cols
    return t


# --- alternating groups ------------------------------------------------------------

def _is_split_type(mu) -> bool:
    return all(x % 2 for x in mu) and len(set(mu)) == len(mu)


def diagonal_hooks(lam) -> tuple:
    conj = conjugate_partition(lam)
    return tuple(lam[i] + conj[i] - 2 * i - 1 for i in range(len(lam)) if lam[i] > i)


def _gauss_sqrt(m: int, e: int) -> Cyclotomic:
    """sqrt(m) for m = 1 (mod 4), as an integer times a product of quadratic Gauss sums."""
    if m % 4 != 1:
        raise ValueError(f"{m} is not 1 mod 4")
    f = factorint(abs(m))
    square = math.prod(p ** (k // 2) for p, k in f.items())
    result = Cyclotomic.rational(e, square)
    for p, k in sorted(f.items()):
        if k % 2 == 0:
            continue
        g = Cyclotomic(e, {a * (e // p): _legendre(a, p) for a in range(1, p)})
        result = result * g
    # the Gauss-sum product squares to the product of p* = +-p, which equals m / square^2
    return result


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def an_table(n: int) -> CharacterTable:
    if not 5 <= n <= 15:
        raise ValueError(f"alternating tables supported for 5 <= n <= 15, got {n}")
    order = math.factorial(n) // 2
    even_types = [mu for mu in sorted(partitions(n)) if (n - len(mu)) % 2 == 0]
    cols, labels, sizes, orders = [], [], [], []
    for mu in even_types:
        size = math.factorial(n) // centralizer_order(mu)
        lab = "(" + ",".join(map(str, mu)) + ")"
        if _is_split_type(mu):
            for sgn in ("+", "-"):
                cols.append((mu, sgn))
                labels.append(lab + sgn)
                sizes.append(size // 2)
                orders.append(math.lcm(*mu))
        else:
            cols.append((mu, ""))
            labels.append(lab)
            sizes.append(size)
            orders.append(math.lcm(*mu))
    e = math.lcm(*orders)
    irr = []
    done = set()
    for lam in partitions(n):
        if lam in done:
            continue
        lam_c = conjugate_partition(lam)
        done.update({lam, lam_c})
        if lam != lam_c:
            irr.append([Cyclotomic.rational(e, sn_character(lam, mu)) for mu, _ in cols])
            continue
        h = diagonal_hooks(lam)
        eps = -1 if ((n - len(h)) // 2) % 2 else 1
        root = _gauss_sqrt(eps * math.prod(h), e)
        plus, minus = [], []
        for mu, sgn in cols:
            if mu == tuple(sorted(h, reverse=True)):
                a = (Cyclotomic.rational(e, eps) + root) / 2
                b = (Cyclotomic.rational(e, eps) - root) / 2
                plus.append(a if sgn == "+" else b)
                minus.append(b if sgn == "+" else a)
            else:
                v = Cyclotomic.rational(e, Fraction(sn_character(lam, mu), 2))
                plus.append(v)
                minus.append(v)
        irr += [plus, minus]
    irr.sort(key=_row_key)
    t = CharacterTable(f"A{n}", order, e, labels, sizes, orders, {}, irr, None, "alternating")
    t.power_maps = _an_power_maps(t, cols)
    return t


def _an_power_maps(t: CharacterTable, cols) -> dict:
    """Power maps of A_n: cycle type of g^p, with split classes resolved by Galois action."""
    col_vals = [tuple(row[c] for row in t.irr) for c in range(len(cols))]
    by_type: dict = {}
    for i, (mu, _) in enumerate(cols):
        by_type.setdefault(mu, []).append(i)
    primes = sorted(factorint(t.order))
    out = {}
    for p in primes:
        pm = []
        for i, (mu, _) in enumerate(cols):
            target = by_type[_type_of_power(mu, p)]
            if len(target) == 1:
                pm.append(target[0])
                continue
            # g^p = g^k for the least k = p (mod |g|) that is a unit mod e
            o = t.rep_orders[i]
            k = p
            while math.gcd(k, t.exponent) != 1:
                k += o
            gal = GaloisMap(t.exponent, k)
            image = tuple(galois_apply(gal, x) for x in col_vals[i])
            match = [j for j in target if col_vals[j] == image]
            if len(match) != 1:
                raise RuntimeError("could not resolve a split-class power map")
            pm.append(match[0])
        out[p] = pm
    return out


def symbolic_table(family: str, n: int) -> CharacterTable:
    return sn_table(n) if family == "sym" else an_table(n)


# --- validation ------------------------------------------------------------------------

def _inner(a: list, b: list, sizes: list, N: int):
    """sum_c |C_c| a_c conj(b_c), exact."""
    if all(x.is_rational() for x in a) and all(y.is_rational() for y in b):
        return Cyclotomic.rational(N, sum(s * x.rational_value() * y.rational_value()
                                          for s, x, y in zip(sizes, a, b)))
    acc = Cyclotomic.rational(N, 0)
    for s, x, y in zip(sizes, a, b):
        if x.is_zero() or y.is_zero():
            continue
        acc = acc + (x * y.conjugate()) * s
    return acc


def validate(table: CharacterTable) -> list[str]:
    """All violated table identities (empty when the table is consistent)."""
    out = []
    irr, sizes, order = table.irr, table.class_sizes, table.order
    r = len(sizes)
    N = table.exponent
    if len(irr) != r:
        out.append(f"{len(irr)} rows for {r} classes")
    if sum(sizes) != order:
        out.append("class sizes do not sum to the group order")
    degs = []
    for i, row in enumerate(irr):
        if len(row) != r:
            out.append(f"row {i} has {len(row)} entries")
            continue
        d = row[0]
        if not d.is_rational() or not isinstance(d.rational_value(), int) or d.rational_value() < 1:
            out.append(f"row {i}: degree {d} is not a positive integer")
            continue
        degs.append(d.rational_value())
        if order % d.rational_value():
            out.append(f"row {i}: degree {d} does not divide |G|")
    if irr and not all(x == 1 for x in irr[0]):
        out.append("first row is not the trivial character")
    if sum(d * d for d in degs) != order:
        out.append(f"sum of squared degrees {sum(d * d for d in degs)} != {order}")
    if out:
        return out
    for i in range(r):
        for j in range(i, r):
            v = _inner(irr[i], irr[j], sizes, N)
            want = order if i == j else 0
            if v != want:
                out.append(f"rows {i},{j}: inner product {v} != {want}")
    cols = [[row[c] for row in irr] for c in range(r)]
    ones = [1] * r
    for a in range(r):
        for b in range(a, r):
            v = _inner(cols[a], cols[b], ones, N)
            want = order // sizes[a] if a == b else 0
            if v != want:
                out.append(f"columns {a},{b}: sum {v} != {want}")
    for i, row in enumerate(irr):
        deg = row[0].rational_value()
        for c in range(r):
            w = row[c] * Fraction(sizes[c], deg)
            if not w.is_integral():
                out.append(f"row {i}, class {c}: central character {w} is not integral")
    return out


def galois_stable(table: CharacterTable) -> bool:
    """Every Galois automorphism of Q(zeta_e) permutes the rows."""
    e = table.exponent
    rows = {tuple(r) for r in table.irr}
    for k in range(2, e):
        if math.gcd(k, e) != 1:
            continue
        g = GaloisMap(e, k)
        if any(tuple(galois_apply(g, x) for x in row) not in rows for row in table.irr):
            return False
    return True


def tables_match(a: CharacterTable, b: CharacterTable) -> bool:
    """Equal up to a permutation of rows and columns (columns matched by size and order)."""
    if a.order != b.order or len(a) != len(b) or a.exponent != b.exponent:
        return False
    r = len(a)

    def col_signatures(t):
        return [(t.class_sizes[c], t.rep_orders[c]) for c in range(r)]

    sa, sb = col_signatures(a), col_signatures(b)
    if sorted(sa) != sorted(sb):
        return False

    # search a column bijection preserving signatures under which the row sets agree
    def candidates(c):
        return [d for d in range(r) if sb[d] == sa[c]]

    def try_assign(assign, c, used):
        if c == r:
            rb = sorted(tuple(x.sort_key() for x in (row[assign[k]] for k in range(r)))
                        for row in b.irr)
            ra = sorted(tuple(x.sort_key() for x in row) for row in a.irr)
            return ra == rb
        for d in candidates(c):
            if d in used:
                continue
            # prune: the multiset of column values must agree
            if sorted(x.sort_key() for x in (row[c] for row in a.irr)) != \
                    sorted(x.sort_key() for x in (row[d] for row in b.irr)):
                continue
            assign[c] = d
            used.add(d)
            if try_assign(assign, c + 1, used):
                return True
            used.discard(d)
        return False

    return try_assign([None] * r, 0, set())
