"""Exact dense linear algebra over Q and quadratic extensions.

Matrices are tuples of row tuples.  Nothing here is clever; everything is
exact Gaussian elimination, which is all the small pencils need.
"""

from __future__ import annotations

from ..polyring.scalars import canon, fdiv


def mat(rows):
    return tuple(tuple(canon(x) if type(x) is not int else x for x in row) for row in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(r, c):
    return tuple((0,) * c for _ in range(r))


def shape(m):
    return (len(m), len(m[0]) if m else 0)


def transpose(m):
    return tuple(zip(*m)) if m and m[0] else ()


def matmul(a, b):
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        out.append(tuple(_dot(row, col) for col in bt))
    return tuple(out)


def matvec(a, v):
    return tuple(_dot(row, v) for row in a)


def _dot(u, v):
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s = s + x * y
    return canon(s) if not isinstance(s, int) else s


dot = _dot


def inner(u, v, gram=None):
    if gram is None:
        return _dot(u, v)
    return _dot(u, matvec(gram, v))


def matadd(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matscale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def congruence(t, a):
    """``t^T a t``."""
    return matmul(transpose(t), matmul(a, t))


def is_symmetric(m):
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def is_zero_matrix(m):
    return all(not x for row in m for x in row)


def rref(m):
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m]
    if not rows:
        return (), []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [fdiv(x, p) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [canon(x - f * y) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows), pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m, ncols=None):
    """Basis of {v : m v = 0}; each vector has a 1 in one free column."""
    if not m:
        n = ncols or 0
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    n = len(m[0])
    red, piv = rref(m)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row_i, pc in enumerate(piv):
            v[pc] = canon(-red[row_i][fc])
        basis.append(tuple(v))
    return basis


def span_basis(vectors):
    """Row-reduced basis of the span of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    red, piv = rref(vectors)
    return [red[i] for i in range(len(piv))]


def orth_complement(vectors, n, gram=None):
    """Basis of the ``gram``-orthogonal complement of span(vectors) in dimension ``n``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    rows = [v if gram is None else matvec(gram, v) for v in vectors]
    return nullspace(rows, n)


def gram_schmidt(vectors, gram=None):
    """Pairwise ``gram``-orthogonal vectors with the same flag of spans (no normalization)."""
    out = []
    norms = []
    for v in vectors:
        w = list(v)
        for u, nu in zip(out, norms):
            c = fdiv(inner(u, w, gram), nu)
            if c:
                w = [canon(x - c * y) for x, y in zip(w, u)]
        w = tuple(w)
        nw = inner(w, w, gram)
        if not nw:
            raise ValueError("Gram-Schmidt met an isotropic or dependent vector")
        out.append(w)
        norms.append(nw)
    return out


def det(m):
    """Determinant by exact elimination over the field."""
    n = len(m)
    if n == 0:
        return 1
    rows = [list(r) for r in m]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        p = rows[c][c]
        d = d * p
        for i in range(c + 1, n):
            if rows[i][c]:
                f = fdiv(rows[i][c], p)
                rows[i] = [canon(x - f * y) for x, y in zip(rows[i], rows[c])]
    return canon(d)


def inverse(m):
    n = len(m)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def columns(m):
    return [tuple(col) for col in zip(*m)]


def from_columns(cols):
    return tuple(zip(*cols)) if cols else ()


def submatrix(m, rows, cols):
    return tuple(tuple(m[i][j] for j in cols) for i in rows)
