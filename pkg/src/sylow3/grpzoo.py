"""Concrete groups: symmetric, alternating, classical matrix groups, wreath towers.

Matrix groups are turned into permutation groups by their action on nonzero
row vectors (``gl``, ``sl``, ``gu``, ``su``, ``sp``) or on projective points
(``pgl``, ``psl``, ``pgu``, ``psu``, ``psp``).  Points are listed in
lexicographic order of their coordinate encodings, projective points being
normalised so that the first nonzero coordinate is 1.

Sylow 3-subgroups are built from explicit generators whenever the structure
is known (symmetric groups, linear and unitary groups away from
characteristic 3, unitriangular matrices in characteristic 3) and by a seeded
randomized ascent otherwise.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .finfield import FieldCtx, gf
from .permgrp import BoundExceeded, PermGroup, generates_p_group, mul, order, power

MAX_DEGREE = 5000
SYLOW_BUDGET = 10 ** 5
BSGS_ORDER_BOUND = 10 ** 9

LINEAR = {"gl", "sl", "pgl", "psl"}
UNITARY = {"gu": "gl", "su": "sl", "pgu": "pgl", "psu": "psl"}
BUILDABLE = LINEAR | set(UNITARY) | {"sym", "alt", "sp", "psp", "wreath_tower", "external"}


class SylowSearchFailed(RuntimeError):
    pass


def v3(n: int) -> int:
    n = abs(n)
    if n == 0:
        raise ValueError("3-adic valuation of 0")
    a = 0
    while n % 3 == 0:
        n //= 3
        a += 1
    return a


def three_part(n: int) -> int:
    return 3 ** v3(n)


def prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return (q, 1)


@dataclass(frozen=True)
class GroupSpec:
    """Symbolic description of a group.

    ``n`` is the degree for sym/alt and the dimension of the natural module
    for matrix families (so PSp_6(q) has n = 6).  ``ext`` names the outer
    automorphisms adjoined to a simple group and is only read by the
    classification layer.
    """

    family: str
    n: int = 0
    q: int = 0
    eps: int = 1
    tower: tuple = ()
    label: str = ""
    path: str = ""
    ext: str = "none"

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps!r}")
        object.__setattr__(self, "tower", tuple(self.tower))
        if self.family in UNITARY and self.eps != -1:
            object.__setattr__(self, "eps", -1)

    @property
    def base_family(self) -> str:
        """gl/sl/pgl/psl for linear and unitary groups, else the family."""
        return UNITARY.get(self.family, self.family)

    def name(self) -> str:
        f = self.family
        if f == "sym":
            return f"S{self.n}"
        if f == "alt":
            return f"A{self.n}"
        if f == "wreath_tower":
            return "wr".join(f"C{3 ** a}" for a in self.tower)
        if f == "external":
            return self.label or Path(self.path).stem
        base = self.base_family
        if base in LINEAR:
            letters = base.upper()
            if self.eps == -1:
                letters = letters.replace("L", "U")
            return f"{letters}({self.n},{self.q})"
        tag = f.upper().replace("-PLUS", "+").replace("-MINUS", "-")
        if self.q:
            return f"{tag}({self.n},{self.q})" if self.n else f"{tag}({self.q})"
        return tag + (f"({self.n})" if self.n else "")

    def to_dict(self) -> dict:
        d = {"family": self.family, "n": self.n, "q": self.q, "eps": self.eps}
        if self.tower:
            d["tower"] = list(self.tower)
        if self.label:
            d["label"] = self.label
        if self.path:
            d["path"] = self.path
        if self.ext != "none":
            d["ext"] = self.ext
        return d

    @classmethod
    def from_dict(cls, d: dict) -> GroupSpec:
        return cls(d["family"], d.get("n", 0), d.get("q", 0), d.get("eps", 1),
                   tuple(d.get("tower", ())), d.get("label", ""), d.get("path", ""),
                   d.get("ext", "none"))


# --- order polynomials --------------------------------------------------------

def gl_order(n: int, q: int, eps: int = 1) -> int:
    return q ** (n * (n - 1) // 2) * math.prod(q ** i - eps ** i for i in range(1, n + 1))


def sp_order(n: int, q: int) -> int:
    m = n // 2
    return q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def group_order(spec: GroupSpec) -> int | None:
    """Order from the standard formula; None for external groups."""
    f, n, q, eps = spec.base_family, spec.n, spec.q, spec.eps
    if f == "sym":
        return math.factorial(n)
    if f == "alt":
        return max(1, math.factorial(n) // 2)
    if f == "wreath_tower":
        return wreath_order(spec.tower)
    if f == "gl":
        return gl_order(n, q, eps)
    if f in ("sl", "pgl"):
        return gl_order(n, q, eps) // (q - eps)
    if f == "psl":
        return gl_order(n, q, eps) // (q - eps) // math.gcd(n, q - eps)
    if f == "sp":
        return sp_order(n, q)
    if f == "psp":
        return sp_order(n, q) // math.gcd(2, q - 1)
    return None


def wreath_order(tower) -> int:
    deg, size = 1, 1
    for a in tower:
        c = 3 ** a
        size = size ** c * c if deg > 1 else c
        deg *= c
    return size


# --- permutation constructors ---------------------------------------------------

def cyclic(m: int) -> PermGroup:
    return PermGroup([tuple((i + 1) % m for i in range(m))], m, f"C{m}")


def symmetric(n: int) -> PermGroup:
    if n < 2:
        return PermGroup([], max(n, 1), f"S{n}")
    gens = [tuple((i + 1) % n for i in range(n))]
    if n > 2:
        gens.append((1, 0) + tuple(range(2, n)))
    return PermGroup(gens, n, f"S{n}")


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], max(n, 1), f"A{n}")
    three = (1, 2, 0) + tuple(range(3, n))
    if n % 2:
        long = tuple((i + 1) % n for i in range(n))
    else:
        long = (0,) + tuple(1 + i % (n - 1) for i in range(1, n))
    return PermGroup([three, long] if n > 3 else [three], n, f"A{n}")


def _tower_perms(i: int, offset: int, n: int) -> list:
    """Generators of C3 wr ... wr C3 (i factors) on points offset..offset+3^i-1."""
    gens = []
    for j in range(1, i + 1):
        size, step = 3 ** j, 3 ** (j - 1)
        img = list(range(n))
        for x in range(size):
            img[offset + x] = offset + (x + step) % size
        gens.append(tuple(img))
    return gens


def sym_sylow_perms(n: int) -> list:
    """Generators of a Sylow 3-subgroup of S_n, one wreath tower per 3-adic digit."""
    gens, offset, i, m = [], 0, 0, n
    digits = []
    while m:
        digits.append(m % 3)
        m //= 3
    for i in reversed(range(len(digits))):
        for _ in range(digits[i]):
            gens += _tower_perms(i, offset, n)
            offset += 3 ** i
    return gens


def wreath_tower(tower, p: int = 3) -> PermGroup:
    """C_{p^a_1} wr C_{p^a_2} wr ... as an iterated imprimitive group.

    The first factor acts inside the smallest blocks and the last one
    permutes the largest blocks.
    """
    tower = tuple(tower)
    if not tower or any(a < 1 for a in tower):
        raise ValueError(f"tower exponents must be positive, got {tower!r}")
    deg = math.prod(p ** a for a in tower)
    gens = []
    inner = 1
    for a in tower:
        c = p ** a
        size = inner * c
        img = list(range(deg))
        for x in range(size):
            img[x] = (x + inner) % size
        gens.append(tuple(img))
        inner = size
    name = "wr".join(f"C{p ** a}" for a in tower)
    return PermGroup(gens, deg, name)


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    """A x B acting on the disjoint union of the two domains."""
    n, m = A.degree, B.degree
    gens = [tuple(g) + tuple(range(n, n + m)) for g in A.generators]
    gens += [tuple(range(n)) + tuple(x + n for x in g) for g in B.generators]
    name = f"{A.name}x{B.name}" if A.name and B.name else None
    return PermGroup(gens, n + m, name)


# --- external generator files -----------------------------------------------------

def _resolve(path) -> Path:
    p = Path(path)
    if p.exists():
        return p
    data = resources.files("sylow3") / "data"
    for cand in (data / p.name, data / str(path)):
        if Path(str(cand)).exists():
            return Path(str(cand))
    raise FileNotFoundError(f"generator file not found: {path}")


def parse_generators(text: str) -> tuple[str, int, list]:
    label, degree, gens = None, None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if label is None:
            head, _, rest = line.partition(" ")
            if head != "name" or not rest.strip():
                raise ValueError(f"line {lineno}: expected 'name <label>'")
            label = rest.strip()
        elif degree is None:
            head, _, rest = line.partition(" ")
            if head != "degree" or not rest.strip().isdigit() or int(rest) < 1:
                raise ValueError(f"line {lineno}: expected 'degree <n>'")
            degree = int(rest)
        else:
            try:
                img = tuple(int(t) for t in line.split())
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer image") from None
            if len(img) != degree or sorted(img) != list(range(degree)):
                raise ValueError(f"line {lineno}: not a permutation of 0..{degree - 1}")
            gens.append(img)
    if label is None or degree is None:
        raise ValueError("missing 'name' or 'degree' header")
    return label, degree, gens


def load_external(path) -> PermGroup:
    p = _resolve(path)
    label, degree, gens = parse_generators(p.read_text())
    return PermGroup(gens, degree, label)


# --- matrices -------------------------------------------------------------------

@dataclass
class MatGroup:
    """Matrices over ``ctx`` (F_q, or F_{q^2} for unitary groups)."""

    ctx: FieldCtx
    dim: int
    generators: list
    q: int
    form: str = "linear"  # linear | unitary | symplectic
    _conj: list = field(default=None, repr=False)

    def conj(self, a: int) -> int:
        if self._conj is None:
            self._conj = [self.ctx.pow(x, self.q) for x in range(self.ctx.order)]
        return self._conj[a]

    def preserves_form(self, M) -> bool:
        if self.form == "linear":
            return True
        if self.form == "unitary":
            Mbar_t = tuple(tuple(self.conj(M[j][i]) for j in range(self.dim))
                           for i in range(self.dim))
            return mat_mul(self.ctx, M, Mbar_t) == mat_identity(self.dim)
        J = symplectic_form(self.ctx, self.dim)
        return mat_mul(self.ctx, mat_mul(self.ctx, M, J), mat_transpose(M)) == J


def mat_identity(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_transpose(M):
    return tuple(zip(*M))


def mat_mul(ctx: FieldCtx, A, B):
    n, m = len(A), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = 0
            for k in range(len(B)):
                if A[i][k] and B[k][j]:
                    s = ctx.add(s, ctx.mul(A[i][k], B[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_pow(ctx: FieldCtx, A, e: int):
    result = mat_identity(len(A))
    while e:
        if e & 1:
            result = mat_mul(ctx, result, A)
        e >>= 1
        if e:
            A = mat_mul(ctx, A, A)
    return result


def mat_order(ctx: FieldCtx, A, cap: int) -> int | None:
    I = mat_identity(len(A))
    X = A
    for k in range(1, cap + 1):
        if X == I:
            return k
        X = mat_mul(ctx, X, A)
    return None


def mat_det(ctx: FieldCtx, A) -> int:
    M = [list(r) for r in A]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = ctx.neg(det)
        det = ctx.mul(det, M[c][c])
        inv = ctx.inv(M[c][c])
        for r in range(c + 1, n):
            if M[r][c]:
                f = ctx.mul(M[r][c], inv)
                M[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def _diag(n, entries: dict):
    return tuple(tuple(entries.get(i, 1) if i == j else 0 for j in range(n)) for i in range(n))


def _elementary(n, i, j, lam):
    return tuple(tuple(1 if r == c else (lam if (r, c) == (i, j) else 0) for c in range(n))
                 for r in range(n))


def _perm_matrix(ctx, perm, signs=None):
    """Row-vector convention: e_i M = sign_i e_{perm(i)}."""
    n = len(perm)
    signs = signs or {}
    return tuple(tuple(signs.get(i, 1) if perm[i] == j else 0 for j in range(n))
                 for i in range(n))


def _signed_generators(ctx: FieldCtx, n: int):
    """Determinant-one monomial matrices mapping onto S_n."""
    if n < 2:
        return []
    minus = ctx.neg(1)
    cyc = tuple((i + 1) % n for i in range(n))
    out = [_perm_matrix(ctx, cyc, {0: minus} if n % 2 == 0 else None)]
    if n > 2:
        out.append(_perm_matrix(ctx, (1, 0) + tuple(range(2, n)), {0: minus}))
    return out


def _basis_scalars(ctx: FieldCtx):
    """An F_p-basis of the field, as integer encodings."""
    return [ctx.p ** i for i in range(ctx.k)]


def symplectic_form(ctx: FieldCtx, n: int):
    m = n // 2
    minus = ctx.neg(1)
    return tuple(tuple(1 if j == i + m else (minus if i == j + m else 0) for j in range(n))
                 for i in range(n))


def _su2_generators(ctx: FieldCtx, q: int):
    """Canonical matrices [[a, b], [-b^q, a^q]] with a a^q + b b^q = 1 generating SU_2(q).

    Candidates are scanned in encoding order and kept only when they enlarge
    the group generated so far.
    """
    conj = [ctx.pow(x, q) for x in range(ctx.order)]
    norm = [ctx.mul(x, conj[x]) for x in range(ctx.order)]
    target = q * (q * q - 1)
    pts = _points(ctx, 2, False)
    gens, perms = [], []
    G = PermGroup([], len(pts.points))
    for a in range(ctx.order):
        for b in range(1, ctx.order):
            if ctx.add(norm[a], norm[b]) != 1:
                continue
            M = ((a, b), (ctx.neg(conj[b]), conj[a]))
            g = _act(ctx, M, pts)
            if g in G:
                continue
            gens.append(M)
            perms.append(g)
            G = PermGroup(perms, len(pts.points))
            if G.order() == target:
                return gens
    raise RuntimeError(f"could not generate SU_2({q})")


def linear_generators(spec: GroupSpec) -> MatGroup:
    """Generators of GL/SL (linear or unitary), Sp as matrices."""
    f, n, q, eps = spec.base_family, spec.n, spec.q, spec.eps
    if prime_power(q) is None:
        raise ValueError(f"q = {q} is not a prime power")
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if f in ("sp", "psp"):
        if n % 2:
            raise ValueError("symplectic groups need even dimension")
        ctx = gf(q)
        m = n // 2
        gens = []
        glm = linear_generators(GroupSpec("gl", m, q))
        for A in glm.generators:
            Ainv_t = mat_transpose(_mat_inverse(ctx, A))
            gens.append(tuple(tuple(A[i][j] if i < m and j < m else
                                    (Ainv_t[i - m][j - m] if i >= m and j >= m else 0)
                                    for j in range(n)) for i in range(n)))
        J = symplectic_form(ctx, n)
        for v_idx in (0, m):
            for lam in _basis_scalars(ctx):
                # x -> x + lam B(x, v) v, i.e. I + lam J v^T v
                col = [J[i][v_idx] for i in range(n)]
                gens.append(tuple(tuple(ctx.add(int(i == j), ctx.mul(lam, ctx.mul(col[i], int(j == v_idx))))
                                        for j in range(n)) for i in range(n)))
        return MatGroup(ctx, n, [g for g in gens if g != mat_identity(n)], q, "symplectic")
    if eps == 1:
        ctx = gf(q)
        gens = []
        if n >= 2:
            gens += [_elementary(n, 0, 1, lam) for lam in _basis_scalars(ctx)]
            gens += _signed_generators(ctx, n)
        if f in ("gl", "pgl") and q > 2:
            gens.append(_diag(n, {0: ctx.primitive_element().value}))
        return MatGroup(ctx, n, gens, q, "linear")
    ctx = gf(q * q)
    gens = []
    if n >= 2:
        for B in _su2_generators(ctx, q):
            gens.append(tuple(tuple(B[i][j] if i < 2 and j < 2 else int(i == j)
                                    for j in range(n)) for i in range(n)))
        gens += _signed_generators(ctx, n)
    if n >= 3 and q == 2:
        # over F_4 every SU_2 block is monomial; a 3 x 3 block is not
        base3 = [tuple(tuple(B[i][j] if i < 2 and j < 2 else int(i == j) for j in range(3))
                       for i in range(3)) for B in _su2_generators(ctx, q)]
        base3 += _signed_generators(ctx, 3)
        for B in _su3_over_f4(ctx, base3):
            gens.append(tuple(tuple(B[i][j] if i < 3 and j < 3 else int(i == j)
                                    for j in range(n)) for i in range(n)))
    if f in ("gl", "pgl"):
        nu = ctx.root_of_unity(q + 1).value
        gens.append(_diag(n, {0: nu}))
    return MatGroup(ctx, n, gens, q, "unitary")


def _full_unitary_blocks(ctx: FieldCtx, q: int, k: int = 3):
    """k x k determinant-one matrices with orthonormal rows and a zero-free first row, in order."""
    conj = [ctx.pow(x, q) for x in range(ctx.order)]

    def dot(u, v):
        s = 0
        for x, y in zip(u, v):
            s = ctx.add(s, ctx.mul(x, conj[y]))
        return s

    units = [v for v in itertools.product(range(ctx.order), repeat=k) if dot(v, v) == 1]

    def extend(rows):
        if len(rows) == k:
            yield tuple(rows)
            return
        for v in units:
            if all(dot(v, r) == 0 for r in rows):
                yield from extend(rows + [v])

    for first in units:
        if all(first):
            for M in extend([first]):
                if mat_det(ctx, M) == 1:
                    yield M


def _su3_over_f4(ctx: FieldCtx, base: list):
    """Blocks completing the given SU_3(2) generators to the whole group."""
    pts = _points(ctx, 3, False)
    perms = [_act(ctx, M, pts) for M in base]
    extra = []
    G = PermGroup(perms, len(pts.points))
    for M in _full_unitary_blocks(ctx, 2):
        g = _act(ctx, M, pts)
        if g in G:
            continue
        extra.append(M)
        perms.append(g)
        G = PermGroup(perms, len(pts.points))
        if G.order() == gl_order(3, 2, -1) // 3:
            return extra
    raise RuntimeError("could not generate SU_3(2)")


def _mat_inverse(ctx, A):
    n = len(A)
    M = [list(A[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c])
        M[c], M[piv] = M[piv], M[c]
        inv = ctx.inv(M[c][c])
        M[c] = [ctx.mul(inv, x) for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(M[r], M[c])]
    return tuple(tuple(r[n:]) for r in M)


# --- matrix actions -------------------------------------------------------------

class _Points:
    def __init__(self, ctx: FieldCtx, n: int, projective: bool):
        q = ctx.order
        pts = []
        for v in itertools.product(range(q), repeat=n):
            if not any(v):
                continue
            if projective and next(x for x in v if x) != 1:
                continue
            pts.append(v)
        self.points = pts
        self.index = {v: i for i, v in enumerate(pts)}
        self.projective = projective
        self.ctx = ctx
        self.n = n


def _points(ctx, n, projective) -> _Points:
    return _Points(ctx, n, projective)


def _act(ctx: FieldCtx, M, P: _Points):
    """Permutation induced by v -> vM on the point set."""
    n = P.n
    if ctx.order <= 256:
        addt, mult = ctx.add_table(), ctx.mul_table()
    else:
        addt = mult = None
    img = []
    rows = [M[i] for i in range(n)]
    for v in P.points:
        w = [0] * n
        for i, c in enumerate(v):
            if not c:
                continue
            row = rows[i]
            if mult is not None:
                mc = mult[c]
                for j in range(n):
                    w[j] = addt[w[j]][mc[row[j]]]
            else:
                for j in range(n):
                    w[j] = ctx.add(w[j], ctx.mul(c, row[j]))
        if P.projective:
            lead = next(x for x in w if x)
            if lead != 1:
                li = ctx.inv(lead)
                w = [ctx.mul(li, x) for x in w]
        img.append(P.index[tuple(w)])
    return tuple(img)


def point_count(spec: GroupSpec) -> int:
    f = spec.base_family
    field_size = spec.q ** 2 if spec.eps == -1 and f in LINEAR else spec.q
    total = field_size ** spec.n - 1
    return total // (field_size - 1) if f in ("pgl", "psl", "psp") else total


# --- build ------------------------------------------------------------------------

def build(spec: GroupSpec, max_degree: int = MAX_DEGREE) -> PermGroup:
    """Faithful permutation group for a buildable spec."""
    f = spec.base_family
    if spec.family not in BUILDABLE:
        raise ValueError(f"family {spec.family!r} cannot be constructed")
    if f == "sym":
        _check_degree(spec.n, max_degree)
        return symmetric(spec.n)
    if f == "alt":
        _check_degree(spec.n, max_degree)
        return alternating(spec.n)
    if f == "wreath_tower":
        _check_degree(math.prod(3 ** a for a in spec.tower), max_degree)
        return wreath_tower(spec.tower)
    if f == "external":
        G = load_external(spec.path or spec.label)
        _check_degree(G.degree, max_degree)
        return G
    _check_matrix_spec(spec)
    _check_degree(point_count(spec), max_degree)
    mg = linear_generators(spec)
    P = _points(mg.ctx, spec.n, f in ("pgl", "psl", "psp"))
    gens = [_act(mg.ctx, M, P) for M in mg.generators]
    return PermGroup(gens, len(P.points), spec.name())


def _check_degree(d, bound):
    if d > bound:
        raise BoundExceeded("degree", d, bound)


def _check_matrix_spec(spec: GroupSpec):
    if prime_power(spec.q) is None:
        raise ValueError(f"q = {spec.q} is not a prime power")
    if spec.n < 1:
        raise ValueError(f"dimension must be positive, got {spec.n}")
    if spec.base_family in ("sp", "psp") and (spec.n % 2 or spec.eps != 1):
        raise ValueError("symplectic groups need even dimension and eps = +1")


def matrix_group(spec: GroupSpec) -> MatGroup:
    _check_matrix_spec(spec)
    return linear_generators(spec)


# --- Sylow 3-subgroups -------------------------------------------------------------

def _sylow_matrices(spec: GroupSpec, ctx: FieldCtx):
    """Explicit Sylow 3-generators of GL^eps or SL^eps, or None if no recipe applies."""
    f, n, q, eps = spec.base_family, spec.n, spec.q, spec.eps
    special = f in ("sl", "psl")
    if q % 3 == 0:
        if eps == -1:
            return None
        return [_elementary(n, i, i + 1, lam) for i in range(n - 1) for lam in _basis_scalars(ctx)]
    if (q - eps) % 3 == 0:
        z = ctx.root_of_unity(three_part(q - eps)).value
        zi = ctx.inv(z)
        gens = []
        if special:
            gens += [_diag(n, {i: z, i + 1: zi}) for i in range(n - 1)]
        else:
            gens += _block_starts_diag(n, 1, lambda s: _diag(n, {s: z}))
        gens += [_perm_matrix(ctx, p) for p in sym_sylow_perms(n)]
        return gens
    # 3 | q + eps: a 2x2 block of order (q^2 - 1)_3 and block permutations
    m = n // 2
    if m == 0:
        return []
    t = _two_block(ctx, q, eps)

    def embed(s):
        return tuple(tuple(t[i - 2 * s][j - 2 * s] if 2 * s <= i < 2 * s + 2 and 2 * s <= j < 2 * s + 2
                           else int(i == j) for j in range(n)) for i in range(n))

    gens = _block_starts_diag(m, 1, embed)
    for p in sym_sylow_perms(m):
        big = list(range(n))
        for j in range(m):
            big[2 * j] = 2 * p[j]
            big[2 * j + 1] = 2 * p[j] + 1
        gens.append(_perm_matrix(ctx, tuple(big)))
    return gens


def _block_starts_diag(n, _unit, make):
    """One torus generator at the first coordinate of each 3-adic digit block."""
    out, offset, digits, m = [], 0, [], n
    while m:
        digits.append(m % 3)
        m //= 3
    for i in reversed(range(len(digits))):
        for _ in range(digits[i]):
            out.append(make(offset))
            offset += 3 ** i
    return out


def _two_block(ctx: FieldCtx, q: int, eps: int):
    """A determinant-one 2x2 matrix of order (q^2-1)_3 in GL_2(q) or GU_2(q)."""
    target = three_part(q * q - 1)
    if eps == 1:
        minus = ctx.neg(1)
        candidates = (((0, 1), (minus, t)) for t in range(ctx.order))
    else:
        conj = [ctx.pow(x, q) for x in range(ctx.order)]
        norm = [ctx.mul(x, conj[x]) for x in range(ctx.order)]
        candidates = (((a, b), (ctx.neg(conj[b]), conj[a]))
                      for a in range(ctx.order) for b in range(ctx.order)
                      if ctx.add(norm[a], norm[b]) == 1)
    for C in candidates:
        o = mat_order(ctx, C, 2 * (q * q + 1))
        if o and o % target == 0:
            return mat_pow(ctx, C, o // target)
    raise RuntimeError(f"no 2x2 block of order {target} found")


def syl3(spec: GroupSpec, G: PermGroup | None = None, seed: int = 0,
         budget: int = SYLOW_BUDGET) -> PermGroup:
    """A Sylow 3-subgroup of the group built from ``spec``.

    The result is checked to have order exactly the 3-part of |G|;
    :class:`SylowSearchFailed` is raised otherwise.
    """
    if G is None:
        G = build(spec)
    f = spec.base_family
    target_order = group_order(spec)
    if f in ("sym", "alt"):
        gens = sym_sylow_perms(spec.n)
        P = PermGroup(gens, G.degree, f"Syl3({spec.name()})")
    elif f == "wreath_tower":
        P = PermGroup(G.generators, G.degree, G.name)
    elif f in LINEAR:
        ctx = gf(spec.q ** 2 if spec.eps == -1 else spec.q)
        mats = _sylow_matrices(spec, ctx)
        if mats is None:
            return _random_sylow(G, target_order, seed, budget)
        pts = _points(ctx, spec.n, f in ("pgl", "psl"))
        P = PermGroup([_act(ctx, M, pts) for M in mats], G.degree, f"Syl3({spec.name()})")
    else:
        return _random_sylow(G, target_order, seed, budget)
    want = three_part(target_order or G.order())
    if P.order() != want:
        raise SylowSearchFailed(f"constructed subgroup of order {P.order()}, expected {want}")
    return P


def _three_element(g):
    o = order(g)
    return power(g, o // three_part(o)) if o % 3 == 0 else None


def _random_sylow(G: PermGroup, known_order, seed: int, budget: int) -> PermGroup:
    """Seeded ascent: adjoin 3-parts of random elements while the result stays a 3-group."""
    total = known_order or G.order()
    want = three_part(total)
    if want == 1:
        return PermGroup([], G.degree, "trivial")
    if total > BSGS_ORDER_BOUND:
        raise BoundExceeded("order for randomized Sylow search", total, BSGS_ORDER_BOUND)
    rng = random.Random(seed)
    gens: list = []
    P = PermGroup([], G.degree)
    for _ in range(budget):
        if P.order() == want:
            return PermGroup(gens, G.degree, f"Syl3({G.name})" if G.name else None)
        h = _three_element(G.random_element(rng))
        if h is None or h in P:
            continue
        # cheap filter before the full check
        if not all(_is_3power(order(mul(h, g))) for g in gens):
            continue
        if generates_p_group(gens + [h], G.degree, 3):
            gens.append(h)
            P = PermGroup(gens, G.degree)
    if P.order() == want:
        return PermGroup(gens, G.degree, f"Syl3({G.name})" if G.name else None)
    raise SylowSearchFailed(
        f"randomized search reached order {P.order()} of {want} within {budget} iterations")


def _is_3power(n: int) -> bool:
    return three_part(n) == n


def three_group_is_valid(P: PermGroup) -> bool:
    return all(_is_3power(order(g)) for g in P.generators) and _is_3power(P.order())


# --- samples for the semidirect product property ---------------------------------

def semidirect_samples() -> list[tuple[str, PermGroup, PermGroup]]:
    """Twenty pairs (R, Q) with R = P x| Q for nontrivial 3-groups P, Q.

    Q is returned as an explicit subgroup of R so that both Frattini ranks
    can be computed in the same permutation representation.
    """
    out = []
    c3, c9 = cyclic(3), cyclic(9)
    w2 = wreath_tower((1, 1))
    small = [("C3", c3), ("C9", c9), ("C3xC3", direct_product(c3, c3)), ("C3wrC3", w2)]

    # direct products P x Q
    for (pn, P), (qn, Q) in [(small[0], small[0]), (small[0], small[1]), (small[1], small[2]),
                             (small[2], small[3]), (small[3], small[0])]:
        R = direct_product(P, Q)
        Qsub = PermGroup([tuple(range(P.degree)) + tuple(x + P.degree for x in g)
                          for g in Q.generators], R.degree)
        out.append((f"{pn} x {qn}", R, Qsub))

    # base group P^m permuted by a transitive Q <= S_m
    for (pn, P), (qn, Q) in [(small[0], small[0]), (small[1], small[0]), (small[0], small[1]),
                             (small[2], small[0]), (small[0], small[3]), (small[1], small[1])]:
        R, Qsub = _permuted_copies(P, Q)
        out.append((f"{pn}^{Q.degree} x| {qn}", R, Qsub))

    # affine groups Z/3^k x| <x -> u x> with u a 3-power-order unit
    for k, u in [(2, 4), (3, 4), (3, 10), (4, 4), (4, 28)]:
        n = 3 ** k
        t = tuple((x + 1) % n for x in range(n))
        mu = tuple(x * u % n for x in range(n))
        R = PermGroup([t, mu], n)
        out.append((f"Z/{n} x| <{u}>", R, PermGroup([mu], n)))

    # F_3^k x| unitriangular matrices
    for k, which in [(2, "all"), (3, "all"), (3, "one"), (4, "one")]:
        R, Qsub = _affine_unitriangular(k, which)
        out.append((f"F3^{k} x| U{k}({which})", R, Qsub))
    return out


def _permuted_copies(P: PermGroup, Q: PermGroup):
    m, d = Q.degree, P.degree
    n = m * d
    gens = [tuple(g[x] if x < d else x for x in range(d)) + tuple(range(d, n)) for g in P.generators]
    top = [tuple(q[x // d] * d + x % d for x in range(n)) for q in Q.generators]
    return PermGroup(gens + top, n), PermGroup(top, n)


def _affine_unitriangular(k: int, which: str):
    vecs = list(itertools.product(range(3), repeat=k))
    index = {v: i for i, v in enumerate(vecs)}

    def perm_of(fn):
        return tuple(index[fn(v)] for v in vecs)

    translations = [perm_of(lambda v, i=i: tuple((x + (j == i)) % 3 for j, x in enumerate(v)))
                    for i in range(k)]

    def elem(i, j):
        # v -> v E_ij(1): adds v_i to coordinate j
        return perm_of(lambda v: tuple((x + (v[i] if c == j else 0)) % 3 for c, x in enumerate(v)))

    if which == "all":
        lin = [elem(i, i + 1) for i in range(k - 1)]
    else:
        lin = [elem(0, k - 1)]
    n = len(vecs)
    return PermGroup(translations + lin, n), PermGroup(lin, n)


def with_family(spec: GroupSpec, family: str) -> GroupSpec:
    return replace(spec, family=family)
