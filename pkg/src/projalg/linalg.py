"""Exact linear algebra over a field given as a :class:`~projalg.rings.Ring`.

Matrices are lists of rows of field payloads.
"""

from __future__ import annotations


def rref(K, rows):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    zero, one = K.zero, K.one
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = K.inv(rows[r][col])
        if inv != one:
            rows[r] = [K.mul(inv, x) for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f != zero:
                    rows[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(rows[i], prow)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(K, rows) -> int:
    return len(rref(K, rows)[1])


def nullspace(K, rows, ncols: int):
    """Basis of {x : rows . x = 0}; basis vector for free column f has a 1 at f."""
    red, pivots = rref(K, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [K.zero] * ncols
        v[f] = K.one
        for i, pc in enumerate(pivots):
            v[pc] = K.neg(red[i][f])
        basis.append(tuple(v))
    return basis


def solve(K, mat, rhs):
    """One solution x of mat . x = rhs, or None if inconsistent."""
    if not mat:
        return None
    ncols = len(mat[0])
    aug = [list(r) + [b] for r, b in zip(mat, rhs)]
    red, pivots = rref(K, aug)
    if ncols in pivots:
        return None
    x = [K.zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return x


def matmul(K, a, b):
    return [[_dot(K, row, [b[k][j] for k in range(len(b))]) for j in range(len(b[0]))] for row in a]


def matvec(K, a, v):
    return [_dot(K, row, v) for row in a]


def _dot(K, u, v):
    s = K.zero
    for x, y in zip(u, v):
        if x != K.zero and y != K.zero:
            s = K.add(s, K.mul(x, y))
    return s


def identity(K, n):
    return [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]


def inverse(K, mat):
    """Inverse of a square matrix, or None if singular."""
    n = len(mat)
    aug = [list(r) + e for r, e in zip(mat, identity(K, n))]
    red, pivots = rref(K, aug)
    if pivots[:n] != list(range(n)):
        return None
    return [r[n:] for r in red]
