"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is a sparse map from exponents j (mod N) to rational
coefficients, always kept in a canonical basis so that equal numbers have
equal representations.  Write N as a product of prime powers p^a.  By CRT an
exponent j corresponds to a tuple of residues j mod p^a, and the basis
consists of the exponents whose every residue has leading base-p digit at
most p - 2 (the tensor product of the power bases of the Q(zeta_{p^a})).  A
monomial outside the basis is rewritten with the relation

    zeta^j = -(sum of zeta^j' over the p - 2 other leading digits),

which comes from the vanishing of the sum of all p-th roots of unity.
Coefficients are Python ints where possible and Fractions otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint

from .finfield import FFElem, field_create


@lru_cache(maxsize=None)
def _layout(N: int):
    """Prime powers of N with their CRT idempotents."""
    parts = []
    for p, a in sorted(factorint(N).items()):
        pa = p ** a
        rest = N // pa
        idem = rest * pow(rest, -1, pa) % N
        parts.append((p, a, pa, idem))
    return tuple(parts)


@lru_cache(maxsize=1 << 20)
def _reduce_monomial(N: int, j: int) -> tuple:
    """zeta_N^j as a tuple of (basis exponent, sign)."""
    terms = [(j % N, 1)]
    for p, a, pa, idem in _layout(N):
        top = pa // p
        out = []
        for e, s in terms:
            r = e % pa
            if r // top != p - 1:
                out.append((e, s))
                continue
            base = e - r * idem  # component at p set to zero
            low = r % top
            for d in range(p - 1):
                out.append(((base + (low + d * top) * idem) % N, -s))
        terms = out
    return tuple(terms)


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Cyclotomic:
    """An element of Q(zeta_N) in canonical form."""

    __slots__ = ("N", "c", "_hash")

    def __init__(self, N: int, coeffs: dict | None = None, _canonical: bool = False):
        if N < 1:
            raise ValueError(f"conductor must be positive, got {N}")
        self.N = N
        self._hash = None
        if _canonical:
            self.c = coeffs
            return
        acc: dict = {}
        for j, v in (coeffs or {}).items():
            if not v:
                continue
            for e, s in _reduce_monomial(N, j):
                acc[e] = acc.get(e, 0) + s * v
        self.c = {e: _norm_coeff(v) for e, v in acc.items() if v}

    # constructors
    @classmethod
    def rational(cls, N: int, r) -> Cyclotomic:
        r = _norm_coeff(Fraction(r)) if not isinstance(r, int) else r
        return cls(N, {0: r} if r else {}, _canonical=True)

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> Cyclotomic:
        return cls(N, {k % N: 1})

    # predicates
    def is_rational(self) -> bool:
        return not self.c or (len(self.c) == 1 and 0 in self.c)

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c.get(0, 0)

    def is_integral(self) -> bool:
        """Algebraic integer test: integer coefficients in the canonical basis."""
        return all(isinstance(v, int) for v in self.c.values())

    def is_zero(self) -> bool:
        return not self.c

    # arithmetic
    def _coerce(self, other) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            if other.N != self.N:
                raise ValueError(f"conductor mismatch: {self.N} vs {other.N}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(self.N, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.c)
        for j, v in o.c.items():
            w = out.get(j, 0) + v
            if w:
                out[j] = _norm_coeff(w)
            else:
                out.pop(j, None)
        return Cyclotomic(self.N, out, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, {j: -v for j, v in self.c.items()}, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyclotomic(self.N, {}, _canonical=True)
            return Cyclotomic(self.N, {j: _norm_coeff(v * other) for j, v in self.c.items()},
                              _canonical=True)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            return self * o.c.get(0, 0)
        if self.is_rational():
            return o * self.c.get(0, 0)
        N = self.N
        acc: dict = {}
        for j, v in self.c.items():
            for k, w in o.c.items():
                vw = v * w
                for e, s in _reduce_monomial(N, j + k):
                    acc[e] = acc.get(e, 0) + s * vw
        return Cyclotomic(N, {e: _norm_coeff(v) for e, v in acc.items() if v}, _canonical=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                raise TypeError("division only by rational numbers is supported")
            other = other.rational_value()
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.rational(self.N, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conjugate(self) -> Cyclotomic:
        """Complex conjugate (zeta -> zeta^-1)."""
        return galois_apply(GaloisMap(self.N, -1 % self.N if self.N > 1 else 0), self)

    def embed(self, M: int) -> Cyclotomic:
        """The same number viewed in Q(zeta_M), N | M."""
        if M % self.N:
            raise ValueError(f"cannot embed Q(zeta_{self.N}) into Q(zeta_{M})")
        f = M // self.N
        return Cyclotomic(M, {j * f: v for j, v in self.c.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c.get(0, 0) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.N == other.N and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, tuple(sorted(self.c.items()))))
        return self._hash

    def sort_key(self):
        """A deterministic total order (exponent-sorted coefficient list)."""
        return tuple((j, float(v), str(v)) for j, v in sorted(self.c.items()))

    def __repr__(self):
        if self.is_rational():
            return str(self.c.get(0, 0))
        terms = " + ".join(f"{v}*z{self.N}^{j}" for j, v in sorted(self.c.items()))
        return f"({terms})"

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": {str(j): (v if isinstance(v, int) else str(v))
                                        for j, v in sorted(self.c.items())}}

    @classmethod
    def from_json(cls, d: dict) -> Cyclotomic:
        return cls(d["N"], {int(j): (v if isinstance(v, int) else _norm_coeff(Fraction(v)))
                            for j, v in d["coeffs"].items()})

    def __complex__(self):
        return sum(complex(float(v)) * complex(math.cos(2 * math.pi * j / self.N),
                                                math.sin(2 * math.pi * j / self.N))
                   for j, v in self.c.items()) + 0j


def as_cyclotomic(N: int, x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x if x.N == N else x.embed(N)
    return Cyclotomic.rational(N, x)


# --- Galois maps ------------------------------------------------------------------

@dataclass(frozen=True)
class GaloisMap:
    """zeta_N -> zeta_N^e."""

    N: int
    e: int

    def __post_init__(self):
        if math.gcd(self.e, self.N) != 1 and self.N > 1:
            raise ValueError(f"exponent {self.e} is not a unit mod {self.N}")
        object.__setattr__(self, "e", self.e % self.N if self.N > 1 else 0)

    def compose(self, other: GaloisMap) -> GaloisMap:
        if other.N != self.N:
            raise ValueError("conductor mismatch")
        return GaloisMap(self.N, self.e * other.e)

    def inverse(self) -> GaloisMap:
        return GaloisMap(self.N, pow(self.e, -1, self.N) if self.N > 1 else 0)

    def power(self, k: int) -> GaloisMap:
        return GaloisMap(self.N, pow(self.e, k, self.N) if self.N > 1 else 0)

    def is_identity(self) -> bool:
        return self.N <= 2 or self.e == 1

    def order(self) -> int:
        if self.N <= 2:
            return 1
        k, x = 1, self.e
        while x != 1:
            x = x * self.e % self.N
            k += 1
        return k

    def __call__(self, x: Cyclotomic) -> Cyclotomic:
        return galois_apply(self, x)


def sigma(N: int) -> GaloisMap:
    """Fixes 3'-roots of unity and raises 3-power roots of unity to the 4th power."""
    if N < 1:
        raise ValueError(f"conductor must be positive, got {N}")
    a, rest = 0, N
    while rest % 3 == 0:
        rest //= 3
        a += 1
    if a <= 1:
        return GaloisMap(N, 1 if N > 1 else 0)
    pa = 3 ** a
    # CRT: e = 4 mod 3^a, e = 1 mod rest
    e = (4 * rest * pow(rest, -1, pa) + pa * pow(pa, -1, rest)) % N if rest > 1 else 4 % N
    return GaloisMap(N, e)


def galois_apply(m: GaloisMap, x: Cyclotomic) -> Cyclotomic:
    if not isinstance(x, Cyclotomic):
        return x
    if x.N != m.N:
        raise ValueError(f"conductor mismatch: map on {m.N}, element in {x.N}")
    if m.is_identity() or x.is_rational():
        return x
    return Cyclotomic(x.N, {j * m.e: v for j, v in x.c.items()})


# --- reductions --------------------------------------------------------------------

def split_three(N: int) -> tuple[int, int]:
    """N = 3^a N' with 3 not dividing N'; returns (a, N')."""
    a = 0
    while N % 3 == 0:
        N //= 3
        a += 1
    return a, N


def residue_degree(N: int) -> int:
    """Multiplicative order of 3 modulo the 3'-part of N."""
    _, Np = split_three(N)
    if Np == 1:
        return 1
    m, x = 1, 3 % Np
    while x != 1:
        x = x * 3 % Np
        m += 1
    return m


class Mod3Reduction:
    """Ring homomorphism Z[zeta_N] -> F_{3^m} with zeta_N -> a primitive N'-th root.

    By default the root is the field's canonical one (see
    :meth:`FieldCtx.root_of_unity`); ``twist`` replaces it by its
    ``twist``-th power, which must be coprime to N'.
    """

    def __init__(self, N: int, twist: int = 1):
        self.N = N
        _, self.Np = split_three(N)
        if math.gcd(twist, self.Np) != 1:
            raise ValueError(f"twist {twist} is not coprime to {self.Np}")
        self.ctx = field_create(3, residue_degree(N))
        base = self.ctx.root_of_unity(self.Np).value
        self.root = self.ctx.pow(base, twist % self.Np if self.Np > 1 else 1)
        self._powers: dict = {}

    def _power(self, j: int) -> int:
        j %= self.Np
        v = self._powers.get(j)
        if v is None:
            v = self._powers[j] = self.ctx.pow(self.root, j)
        return v

    def __call__(self, x) -> FFElem:
        ctx = self.ctx
        if not isinstance(x, Cyclotomic):
            x = Cyclotomic.rational(self.N, x)
        if x.N != self.N:
            raise ValueError(f"conductor mismatch: {x.N} vs {self.N}")
        if not x.is_integral():
            raise ValueError(f"{x} is not an algebraic integer")
        acc = 0
        for j, v in x.c.items():
            term = self._power(j)
            acc = ctx.add(acc, ctx.mul(v % 3, term))
        return ctx(acc)


@lru_cache(maxsize=None)
def _mod3(N: int, twist: int) -> Mod3Reduction:
    return Mod3Reduction(N, twist)


def reduce_mod3(x: Cyclotomic, twist: int = 1) -> FFElem:
    """Reduce an algebraic integer modulo a fixed prime over 3."""
    return _mod3(x.N, twist)(x)


def alternative_twist(N: int) -> int:
    """Least k > 1 coprime to N' (1 when N' <= 2, where no other root exists)."""
    _, Np = split_three(N)
    if Np <= 2:
        return 1
    k = 2
    while math.gcd(k, Np) != 1:
        k += 1
    return k


def reduce_modl(x: Cyclotomic, ell: int, omega: int) -> int:
    """Image in F_ell under zeta_N -> omega (omega a primitive N-th root mod ell)."""
    if (ell - 1) % x.N:
        raise ValueError(f"{ell} is not 1 modulo {x.N}")
    acc = 0
    for j, v in x.c.items():
        if isinstance(v, Fraction):
            if v.denominator % ell == 0:
                raise ValueError(f"denominator of {x} is divisible by {ell}")
            v = v.numerator * pow(v.denominator, -1, ell)
        acc += v * pow(omega, j, ell)
    return acc % ell
