"""Symmetric matrix pencils A0 + A1*x1 + ... + An*xn with exact scalar data."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import HypothesisViolation
from ..polyring import Poly
from ..polyring.scalars import canon, fdiv
from . import linalg
from .polymatrix import PolyMatrix


@dataclass(frozen=True)
class SymPencil:
    """``constant + sum(coefficients[i] * var_names[i])``.

    ``constant`` is the identity for monic pencils.  The kernel-reduction and
    canonical-form steps may produce a positive definite diagonal constant
    instead (see :func:`common_kernel_reduce`).
    """

    var_names: tuple
    constant: tuple
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "constant", linalg.mat(self.constant))
        object.__setattr__(self, "coefficients", tuple(linalg.mat(a) for a in self.coefficients))
        r = len(self.constant)
        if len(self.coefficients) != len(self.var_names):
            raise ValueError("one coefficient matrix per variable is required")
        for a in (self.constant,) + self.coefficients:
            if len(a) != r or any(len(row) != r for row in a):
                raise ValueError(f"all matrices must be {r}x{r}")
            if not linalg.is_symmetric(a):
                raise ValueError("pencil matrices must be symmetric")

    @classmethod
    def monic(cls, var_names, coefficients):
        coefficients = tuple(coefficients)
        r = len(coefficients[0]) if coefficients else 0
        return cls(var_names, linalg.identity(r), coefficients)

    @property
    def size(self):
        return len(self.constant)

    @property
    def is_monic(self):
        return self.constant == linalg.identity(self.size)

    def scalar_field(self):
        """Radicands of the quadratic extension containing all data (``()`` for Q)."""
        from ..polyring.scalars import field_of

        best = ()
        for a in (self.constant,) + self.coefficients:
            for row in a:
                for x in row:
                    f = field_of(x)
                    if len(f) > len(best):
                        best = f
        return best

    def linear_part(self):
        return SymPencil(self.var_names, linalg.zeros(self.size, self.size), self.coefficients)

    def with_constant(self, constant):
        return SymPencil(self.var_names, constant, self.coefficients)

    def evaluate(self, point, include_constant=True):
        """Scalar matrix at ``point``."""
        r = self.size
        out = [list(row) if include_constant else [0] * r for row in self.constant]
        for a, t in zip(self.coefficients, point):
            if t:
                for i in range(r):
                    for j in range(r):
                        if a[i][j]:
                            out[i][j] = out[i][j] + a[i][j] * t
        return linalg.mat(out)

    def congruent(self, t):
        """Pencil ``t^T P t`` (``t`` is r x s)."""
        return SymPencil(
            self.var_names,
            linalg.congruence(t, self.constant),
            tuple(linalg.congruence(t, a) for a in self.coefficients),
        )


def pencil_to_matrix(p: SymPencil, form="affine", hvar="x0") -> PolyMatrix:
    """Assemble the pencil as a :class:`PolyMatrix`.

    ``affine``: A0 + sum Ai*xi.  ``homogeneous``: A0*x0 + sum Ai*xi with
    ``hvar`` first in the ring.  ``linear_part``: sum Ai*xi.
    """
    if form not in ("affine", "homogeneous", "linear_part"):
        raise ValueError(f"unknown pencil form {form!r}")
    ring = ((hvar,) + p.var_names) if form == "homogeneous" else p.var_names
    gens = Poly.gens(ring)
    xs = gens[1:] if form == "homogeneous" else gens
    r = p.size
    grid = []
    for i in range(r):
        row = []
        for j in range(r):
            e = Poly.zero(ring)
            c0 = p.constant[i][j]
            if c0 and form != "linear_part":
                e = e + (gens[0] * c0 if form == "homogeneous" else Poly.const(ring, c0))
            for a, x in zip(p.coefficients, xs):
                if a[i][j]:
                    e = e + x * a[i][j]
            row.append(e)
        grid.append(row)
    return PolyMatrix(grid, ring)


def normalized_det(p: SymPencil) -> Poly:
    """det(A0 + sum Ai xi) / det(A0); equals det(I + ...) for monic pencils."""
    d = pencil_to_matrix(p, "affine").det()
    d0 = linalg.det(p.constant)
    if not d0:
        raise HypothesisViolation("constant term of the pencil is singular")
    return d if d0 == 1 else d / d0


def generic_rank(p: SymPencil, seed=0, trials=3) -> int:
    """Max rank of sum Ai*ti over a few seeded random integer points."""
    if not p.coefficients or p.size == 0:
        return 0
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        t = [rng.randint(-10, 10) or 1 for _ in p.coefficients]
        best = max(best, linalg.rank(p.evaluate(t, include_constant=False)))
    return best


def common_kernel(p: SymPencil):
    """Basis of the intersection of the kernels of the coefficient matrices."""
    stacked = [row for a in p.coefficients for row in a]
    return linalg.nullspace(stacked, p.size)


def common_kernel_reduce(p: SymPencil):
    """Restrict the pencil to a complement of the common kernel of the Ai.

    Returns ``(reduced, basis)`` where ``basis`` is the r x r' matrix whose
    columns span the ``A0``-orthogonal complement of the common kernel and
    ``reduced = basis^T P basis``.  ``normalized_det`` is preserved exactly.
    The complement basis comes from :func:`orthogonal_basis`, so the reduced
    constant is diagonal, and it is the identity whenever a rational
    orthonormal basis turns up (always for kernels spanned by coordinate
    vectors).
    """
    r = p.size
    ker = common_kernel(p)
    if not ker:
        return p, linalg.identity(r)
    gram = None if p.is_monic else p.constant
    basis_cols = orthogonal_basis(linalg.orth_complement(ker, r, gram), gram)
    if not basis_cols:
        return SymPencil(p.var_names, (), tuple(() for _ in p.coefficients)), tuple(() for _ in range(r))
    t = linalg.from_columns(basis_cols)
    return p.congruent(t), t


def orthogonal_basis(vectors, gram=None, bound=3):
    """``gram``-orthogonal basis of span(vectors), preferring unit vectors.

    Small integer combinations (coefficients up to ``bound``) of the current
    basis are searched for a vector whose squared length is a rational
    square; it is normalized and the search continues in its orthogonal
    complement.  Once the search fails the remaining vectors are orthogonalized
    and rescaled by :func:`normalize_lengths`.
    """
    from ..polyring.scalars import rational_sqrt

    basis = linalg.gram_schmidt(linalg.span_basis(vectors), gram) if vectors else []
    units = []
    while basis:
        found = None
        if len(basis) > 1:
            for c in _small_combinations(len(basis), bound):
                v = tuple(canon(sum(ci * b[j] for ci, b in zip(c, basis))) for j in range(len(basis[0])))
                s = rational_sqrt(linalg.inner(v, v, gram))
                if s:
                    found = tuple(fdiv(x, s) for x in v)
                    break
        else:
            v = basis[0]
            s = rational_sqrt(linalg.inner(v, v, gram))
            if s:
                found = tuple(fdiv(x, s) for x in v)
        if found is None:
            break
        units.append(found)
        # continue in the orthogonal complement of ``found`` inside the span
        proj = []
        for b in basis:
            c = linalg.inner(found, b, gram)
            proj.append(tuple(x - c * y for x, y in zip(b, found)))
        proj = linalg.span_basis(proj) if any(any(v) for v in proj) else []
        basis = linalg.gram_schmidt(proj, gram) if proj else []
    return units + normalize_lengths(basis, gram)


def _small_combinations(d, bound):
    """Integer vectors in [-bound, bound]^d, nonzero, first nonzero entry positive,
    ordered by max norm then lexicographically."""
    from itertools import product

    out = []
    for c in product(range(-bound, bound + 1), repeat=d):
        nz = next((x for x in c if x), 0)
        if nz > 0:
            out.append(c)
    out.sort(key=lambda c: (max(abs(x) for x in c), c))
    return out


def normalize_lengths(vectors, gram=None):
    """Rescale each vector by a rational so its squared length becomes squarefree-ish.

    For a vector with squared length ``s^2 * k`` (``s`` rational) the vector is
    divided by ``s``; vectors whose squared length is a rational square come
    out with length one.
    """
    from ..polyring.scalars import is_rational, rational_sqrt

    out = []
    for v in vectors:
        n2 = linalg.inner(v, v, gram)
        if is_rational(n2):
            s = rational_sqrt(n2)
            if s is None:
                s = _square_part(n2)
            if s != 1:
                v = tuple(fdiv(x, s) for x in v)
        out.append(tuple(v))
    return out


def _square_part(q):
    """Rational s with q / s^2 a squarefree integer (trial division, small factors only)."""
    from fractions import Fraction

    q = Fraction(q)
    n, d = q.numerator, q.denominator
    return Fraction(_int_square_root_part(n * d), d)


def _int_square_root_part(n):
    n = abs(n)
    s, k = 1, 2
    while k * k <= n and k < 10_000:
        while n % (k * k) == 0:
            n //= k * k
            s *= k
        k += 1
    return s
