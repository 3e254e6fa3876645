"""Matrices with polynomial entries: determinants, adjugates and minors."""

from __future__ import annotations

from itertools import combinations

from ..errors import RingMismatch
from ..polyring import Poly, exact_div
from . import linalg


class PolyMatrix:
    """Dense ``rows x cols`` grid of :class:`Poly` sharing one ring."""

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, entries, ring=None):
        grid = [list(r) for r in entries]
        if ring is None:
            ring = next((e.ring for r in grid for e in r if isinstance(e, Poly)), None)
            if ring is None:
                raise ValueError("cannot infer the ring of a matrix without Poly entries")
        ring = tuple(ring)
        out = []
        for r in grid:
            row = []
            for e in r:
                if not isinstance(e, Poly):
                    e = Poly.const(ring, e)
                elif e.ring != ring:
                    raise RingMismatch("matrix entries live in different rings")
                row.append(e)
            out.append(tuple(row))
        if len({len(r) for r in out}) > 1:
            raise ValueError("ragged matrix")
        self.entries = tuple(out)
        self.rows = len(out)
        self.cols = len(out[0]) if out else 0
        self.ring = ring

    @classmethod
    def identity(cls, n, ring):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ring)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries and self.ring == other.ring

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix([{body}])"

    @property
    def is_square(self):
        return self.rows == self.cols

    def transpose(self):
        return PolyMatrix([list(c) for c in zip(*self.entries)] if self.entries else [], self.ring)

    @property
    def T(self):
        return self.transpose()

    def is_symmetric(self):
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.rows)
        )

    def __add__(self, other):
        return PolyMatrix([[a + b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)], self.ring)

    def __sub__(self, other):
        return PolyMatrix([[a - b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.entries, other.entries)], self.ring)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            cols = list(zip(*other.entries))
            out = []
            for row in self.entries:
                new = []
                for col in cols:
                    s = Poly.zero(self.ring)
                    for a, b in zip(row, col):
                        if a and b:
                            s = s + a * b
                    new.append(s)
                out.append(new)
            return PolyMatrix(out, self.ring)
        return PolyMatrix([[e * other for e in row] for row in self.entries], self.ring)

    __rmul__ = __mul__

    def submatrix(self, rows, cols):
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.ring)

    def map(self, fn):
        return PolyMatrix([[fn(e) for e in row] for row in self.entries], self.ring)

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def det(self):
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.entries, self.ring)

    def adjugate(self):
        return adjugate(self)

    def eval_at(self, point):
        return tuple(tuple(e.eval(point) for e in row) for row in self.entries)

    def rank_at(self, point):
        return linalg.rank(self.eval_at(point))


def bareiss_det(entries, ring):
    """Fraction-free Bareiss elimination; every division is exact."""
    n = len(entries)
    if n == 0:
        return Poly.const(ring, 1)
    a = [list(r) for r in entries]
    sign = 1
    prev = Poly.const(ring, 1)
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return Poly.zero(ring)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = akk * row_i[j]
                if aik and row_k[j]:
                    num = num - aik * row_k[j]
                row_i[j] = exact_div(num, prev) if num else num
            row_i[k] = Poly.zero(ring)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def det(m: PolyMatrix) -> Poly:
    return m.det()


def cofactor(m: PolyMatrix, i, j) -> Poly:
    rows = [r for r in range(m.rows) if r != i]
    cols = [c for c in range(m.cols) if c != j]
    d = bareiss_det([[m.entries[r][c] for c in cols] for r in rows], m.ring)
    return d if (i + j) % 2 == 0 else -d


def adjugate_column(m: PolyMatrix, j):
    """Column ``j`` of adj(m): the cofactors of row ``j``."""
    return [cofactor(m, j, i) for i in range(m.rows)]


def adjugate(m: PolyMatrix) -> PolyMatrix:
    if not m.is_square:
        raise ValueError("adjugate of a non-square matrix")
    n = m.rows
    if n == 1:
        return PolyMatrix([[1]], m.ring)
    cols = [adjugate_column(m, j) for j in range(n)]
    return PolyMatrix([[cols[j][i] for j in range(n)] for i in range(n)], m.ring)


def minors(m: PolyMatrix, k, principal_only=False):
    """Yield ``(rows, cols, minor)`` for all k x k minors in lexicographic index order."""
    if not 1 <= k <= min(m.rows, m.cols):
        raise ValueError(f"minor size {k} out of range for a {m.rows}x{m.cols} matrix")
    if principal_only and not m.is_square:
        raise ValueError("principal minors need a square matrix")
    for rows in combinations(range(m.rows), k):
        col_sets = [rows] if principal_only else combinations(range(m.cols), k)
        for cols in col_sets:
            sub = [[m.entries[i][j] for j in cols] for i in rows]
            yield rows, tuple(cols), bareiss_det(sub, m.ring)
