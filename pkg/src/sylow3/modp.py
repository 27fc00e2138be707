"""Linear algebra and polynomial roots over a prime field F_l.

Matrices are lists of rows of ints in ``range(l)``; polynomials are
coefficient lists with the constant term first.
"""

from __future__ import annotations

import random

from .finfield import _pgcd, _pmod, _pmul, _ppowmod, _psub, _trim


def rref(vectors: list, ell: int) -> tuple[list, list]:
    """Reduced row echelon basis of the span and its pivot columns."""
    rows = [list(v) for v in vectors]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, ell)
        rows[r] = [x * inv % ell for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % ell for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(A: list, ell: int) -> list:
    """Basis of {x : A x = 0} as column vectors (lists)."""
    n = len(A[0]) if A else 0
    R, pivots = rref(A, ell)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = -row[f] % ell
        basis.append(x)
    return basis


def charpoly(A: list, ell: int) -> list:
    """Characteristic polynomial det(xI - A) via reduction to Hessenberg form."""
    n = len(A)
    H = [list(r) for r in A]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = pow(H[m][m - 1], -1, ell)
        for i in range(m + 1, n):
            if H[i][m - 1]:
                u = H[i][m - 1] * inv % ell
                H[i] = [(x - u * y) % ell for x, y in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[i]) % ell
    # p_k = charpoly of the leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        pk = _pmul([-H[k - 1][k - 1] % ell, 1], polys[k - 1], ell)
        t = 1
        for i in range(1, k):
            t = t * H[k - i][k - i - 1] % ell
            coef = t * H[k - i - 1][k - 1] % ell
            pk = _psub(pk, [c * coef % ell for c in polys[k - i - 1]], ell)
        polys.append(pk)
    return polys[n]


def roots(f: list, ell: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots in F_l of f, sorted (Cantor-Zassenhaus splitting)."""
    f = _trim([c % ell for c in f])
    if len(f) <= 1:
        return []
    rng = rng or random.Random(0)
    # g = gcd(f, x^l - x): product of (x - r) over the distinct roots
    xl = _ppowmod([0, 1], ell, f, ell)
    g = _pgcd(f, _psub(xl, [0, 1], ell), ell)
    out = []
    _split(g, ell, rng, out)
    return sorted(out)


def _split(g, ell, rng, out):
    d = len(g) - 1
    if d == 0:
        return
    if d == 1:
        out.append(-g[0] * pow(g[1], -1, ell) % ell)
        return
    if ell == 2:
        for r in (0, 1):
            if sum(g[i] * r ** i for i in range(len(g))) % 2 == 0:
                out.append(r)
        return
    while True:
        a = rng.randrange(ell)
        h = _ppowmod([a, 1], (ell - 1) // 2, g, ell)
        h = _pgcd(g, _psub(h, [1], ell), ell)
        if 0 < len(h) - 1 < d:
            _split(h, ell, rng, out)
            q = _pdiv(g, h, ell)
            _split(q, ell, rng, out)
            return


def _pdiv(a, b, ell):
    """Exact quotient a / b."""
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, ell)
    q = [0] * (len(a) - db)
    for i in reversed(range(len(q))):
        c = a[i + db] * inv % ell
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] = (a[i + j] - c * y) % ell
    assert not _trim(a), "inexact polynomial division"
    return q


def matmul_vec(M: list, v: list, ell: int) -> list:
    return [sum(x * y for x, y in zip(row, v)) % ell for row in M]


def primitive_root(ell: int, factors) -> int:
    """Least generator of F_l^*, given the primes dividing l - 1."""
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // r, ell) != 1 for r in factors):
            return g
    return 1


__all__ = ["rref", "nullspace", "charpoly", "roots", "matmul_vec", "primitive_root", "_pmod"]
