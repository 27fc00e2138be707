"""Finite fields F_p and F_{p^k}.

Elements of a field of order q = p^k are encoded as integers in ``range(q)``:
the integer ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` stands for the residue
class of ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` modulo the defining
polynomial.  The integer-level methods on :class:`FieldCtx` work directly on
this encoding and are what the matrix-group code uses; :class:`FFElem` is a
thin context-tagged wrapper with operator overloading.

The defining polynomial is the least monic irreducible polynomial of degree k,
ordering candidates by the integer encoding of their non-leading coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, isprime

# fields up to this size get full log/antilog tables
_TABLE_LIMIT = 1 << 16


# --- polynomials over F_p as coefficient lists, lowest degree first ---------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pmod(a, m, p):
    """Remainder of a modulo m (m need not be monic)."""
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), m, p)
    return result


def is_irreducible(f, p):
    """Ben-Or irreducibility test for a polynomial over F_p."""
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = _ppowmod(h, p, f, p)
        if len(_pgcd(f, _psub(h, x, p), p)) > 1:
            return False
    return True


def _least_irreducible(p, k):
    if k == 1:
        return (0, 1)
    for t in range(p ** k):
        tail = []
        for _ in range(k):
            t, r = divmod(t, p)
            tail.append(r)
        f = tail + [1]
        # cheap root screen before the full test
        if f[0] == 0 or any(sum(c * pow(a, i, p) for i, c in enumerate(f)) % p == 0
                            for a in range(p)):
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over F_{p}")


# --- field contexts --------------------------------------------------------

class FieldCtx:
    """The field F_{p^k} with a fixed defining polynomial."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p ** k
        self._log = None
        self._exp = None
        self._add = None
        self._mul = None
        if self.order <= _TABLE_LIMIT and k > 1:
            self._build_log_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # encoding
    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs) -> int:
        if len(coeffs) > self.k:
            coeffs = _pmod(list(coeffs), list(self.modulus), self.p)
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + c % self.p
        return v

    def _build_log_tables(self):
        q = self.order
        # find a primitive element by brute force on the slow path
        for g in range(2, q):
            seen = 1
            x = g
            while x != 1:
                x = self._slow_mul(x, g)
                seen += 1
            if seen == q - 1:
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = x
            log[x] = i
            x = self._slow_mul(x, g)
        self._exp, self._log = exp, log

    def _slow_mul(self, a, b):
        prod = _pmul(list(self.coeffs(a)), list(self.coeffs(b)), self.p)
        return self.encode(_pmod(prod, list(self.modulus), self.p))

    # integer-level arithmetic
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.encode([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._log is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            return self._exp[self._log[a] * e % (self.order - 1)]
        res = _ppowmod(list(self.coeffs(a)), e, list(self.modulus), self.p)
        return self.encode(res)

    def add_table(self):
        """Full addition table (list of lists); only sensible for small fields."""
        if self._add is None:
            q = self.order
            self._add = [[self.add(a, b) for b in range(q)] for a in range(q)]
        return self._add

    def mul_table(self):
        if self._mul is None:
            q = self.order
            self._mul = [[self.mul(a, b) for b in range(q)] for a in range(q)]
        return self._mul

    # element-level API
    def __call__(self, x) -> FFElem:
        if isinstance(x, FFElem):
            if x.ctx is not self:
                raise ValueError(f"element of {x.ctx} used in {self}")
            return x
        if isinstance(x, int):
            if self.k == 1:
                return FFElem(self, (x % self.p,))
            return FFElem(self, self.coeffs(x % self.order))
        coeffs = list(x)
        return FFElem(self, self.coeffs(self.encode(coeffs)))

    @property
    def zero(self) -> FFElem:
        return self(0)

    @property
    def one(self) -> FFElem:
        return self(1)

    @property
    def gen(self) -> FFElem:
        """The class of x modulo the defining polynomial (a field generator when k > 1)."""
        return self([0, 1])

    def elements(self):
        return [self(a) for a in range(self.order)]

    def random_element(self, rng: random.Random) -> FFElem:
        return self(rng.randrange(self.order))

    @lru_cache(maxsize=None)
    def _group_factors(self):
        return factorint(self.order - 1)

    def primitive_element(self) -> FFElem:
        """Least (by integer encoding) generator of the multiplicative group."""
        n = self.order - 1
        primes = list(self._group_factors())
        for a in range(1, self.order):
            if all(self.pow(a, n // r) != 1 for r in primes):
                return self(a)
        raise RuntimeError("no primitive element")  # unreachable

    def root_of_unity(self, n: int) -> FFElem:
        """Canonical primitive n-th root of unity.

        Taken as a^((q-1)/n) for the least nonzero encoding a for which that
        power has order exactly n; this only needs the factorisation of n,
        which keeps large extension fields usable.
        """
        if (self.order - 1) % n:
            raise ValueError(f"{self} has no primitive {n}-th root of unity")
        cof = (self.order - 1) // n
        primes = list(factorint(n)) if n > 1 else []
        for a in range(1, self.order):
            y = self.pow(a, cof)
            if all(self.pow(y, n // r) != 1 for r in primes):
                return self(y)
        raise RuntimeError("no root of unity found")  # unreachable


@dataclass(frozen=True)
class FFElem:
    ctx: FieldCtx
    coeffs: tuple[int, ...]

    @property
    def value(self) -> int:
        return self.ctx.encode(self.coeffs)

    def _other(self, other):
        if isinstance(other, int):
            return self.ctx(other).value
        if not isinstance(other, FFElem):
            return NotImplemented
        if other.ctx is not self.ctx:
            raise ValueError(f"cannot combine elements of {self.ctx} and {other.ctx}")
        return other.value

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx(self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx(self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx(self.ctx.sub(b, self.value))

    def __neg__(self):
        return self.ctx(self.ctx.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx(self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self.ctx(self.ctx.mul(self.value, self.ctx.inv(b)))

    def __pow__(self, e: int):
        return self.ctx(self.ctx.pow(self.value, e))

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.ctx(other).value
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __repr__(self):
        return f"{self.ctx}({self.value})"


@lru_cache(maxsize=None)
def field_create(p: int, k: int = 1) -> FieldCtx:
    """Return the (cached) field of order p^k."""
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"field characteristic must be prime, got {p!r}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k!r}")
    return FieldCtx(p, k, _least_irreducible(p, k))


def gf(q: int) -> FieldCtx:
    """Field of order q, q a prime power."""
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, k), = f.items()
    return field_create(p, k)


def frobenius(ctx: FieldCtx, x: FFElem, q: int) -> FFElem:
    """x -> x^q on F_{q^2}; an involution fixing the subfield F_q."""
    if q * q != ctx.order:
        raise ValueError(f"{ctx} is not a quadratic extension of a field of size {q}")
    return ctx(ctx.pow(ctx(x).value, q))


def multiplicative_order(ctx: FieldCtx, x) -> int:
    a = ctx(x).value
    if a == 0:
        raise ValueError("zero has no multiplicative order")
    n = ctx.order - 1
    for r, e in ctx._group_factors().items():
        for _ in range(e):
            if ctx.pow(a, n // r) == 1:
                n //= r
            else:
                break
    return n
