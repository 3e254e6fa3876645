"""Cubic determinantal surfaces det(I + A x + B y + C z).

Rank bounds for the linear part, the arrow normal form of a rank-3 pencil,
the two singular points it forces, and the reduction to size at most five.

Kernel reduction and the normal form are done with congruences by rational
matrices.  Exact orthonormal bases need square roots in general, so the
constant term is allowed to become a positive definite diagonal matrix G
(the Gram matrix of the chosen basis); every statement below is made for
det(G + L) / det(G), which equals det(I + A x + B y + C z) throughout.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import (
    DegreeNotThree,
    HypothesisViolation,
    InternalCheckFailed,
    NormalizationRequired,
    NotCompression,
    RankTooHigh,
    RankTooLow,
    SizeExceeded,
    UnsupportedField,
)
from .matpoly import (
    PolyMatrix,
    SymPencil,
    bareiss_det,
    common_kernel,
    common_kernel_reduce,
    generic_rank,
    linalg,
    normalized_det,
    pencil_to_matrix,
)
from .matpoly.pencil import _square_part, orthogonal_basis
from .polyring import Poly, QuadExt, canon, is_rational, sqrt_in_field
from .polyring.scalars import fdiv

XYZ = ("x", "y", "z")


def _as_pencil(P, var_names=XYZ):
    """Accept a SymPencil or a triple (A, B, C) of coefficient matrices."""
    if isinstance(P, SymPencil):
        return P
    mats = tuple(P)
    return SymPencil.monic(var_names, mats)


# -- rank bound ---------------------------------------------------------------


@dataclass
class RankCheck:
    passed: bool
    size: int
    vacuous: bool = False
    violation: tuple = None

    def __bool__(self):
        return self.passed


def rank_bound_check(P, d: int) -> RankCheck:
    """Every (d+1)-minor of the linear part is the zero polynomial.

    This certifies rk(sum Ai pi) <= d for all p at once.
    """
    P = _as_pencil(P)
    k = d + 1
    if k > P.size:
        return RankCheck(True, k, vacuous=True)
    L = pencil_to_matrix(P, "linear_part")
    for rows in combinations(range(P.size), k):
        for cols in combinations(range(P.size), k):
            minor = bareiss_det([[L.entries[i][j] for j in cols] for i in rows], L.ring)
            if minor:
                return RankCheck(False, k, violation=(rows, cols))
    return RankCheck(True, k)


# -- arrow normal form ----------------------------------------------------------


@dataclass
class CompressionForm:
    """G + L = gram + arrow(alpha, beta, l, g1, g2, g3) after the congruence T.

    ``l`` holds the r-2 border forms, ``g1, g2, g3`` the lower-right block;
    ``gram`` is the diagonal of T^T G T (all ones for an orthonormal T).
    """

    r: int
    l: list
    alpha: object
    beta: object
    g1: Poly
    g2: Poly
    g3: Poly
    transform: tuple
    gram: tuple = None
    source: SymPencil = None

    def __post_init__(self):
        if self.gram is None:
            self.gram = tuple([1] * self.r)

    @property
    def is_orthonormal(self):
        return all(g == 1 for g in self.gram)

    def arrow_matrix(self) -> PolyMatrix:
        r, k = self.r, self.r - 2
        ring = self.g1.ring
        z = Poly.zero(ring)
        m = [[z] * r for _ in range(r)]
        for i, li in enumerate(self.l):
            m[i][k] = m[k][i] = li * self.alpha
            m[i][k + 1] = m[k + 1][i] = li * self.beta
        m[k][k] = self.g1
        m[k][k + 1] = m[k + 1][k] = self.g2
        m[k + 1][k + 1] = self.g3
        return PolyMatrix(m, ring)

    def pencil(self) -> SymPencil:
        """The arrow pencil gram + arrow as a SymPencil."""
        a = self.arrow_matrix()
        var_names = a.ring
        coefs = []
        for v in var_names:
            e = tuple(1 if w == v else 0 for w in var_names)
            coefs.append([[a.entries[i][j].coefficient(e) for j in range(self.r)] for i in range(self.r)])
        const = [[self.gram[i] if i == j else 0 for j in range(self.r)] for i in range(self.r)]
        return SymPencil(var_names, const, coefs)


def _rank3_elements(P: SymPencil, rng, count=3, tries=50):
    mats = P.coefficients
    out = []
    for _ in range(count):
        for _ in range(tries):
            t = [rng.randint(-10, 10) for _ in mats]
            if not any(t):
                continue
            m = P.evaluate(t, include_constant=False)
            if linalg.rank(m) == 3:
                out.append(m)
                break
        else:
            break
    if len(out) == count:
        return out
    # fall back to an exhaustive scan of small coefficients
    out = []
    for t in product(range(-2, 3), repeat=len(mats)):
        if not any(t):
            continue
        m = P.evaluate(t, include_constant=False)
        if linalg.rank(m) == 3:
            out.append(m)
            if len(out) == count:
                return out
    raise RankTooLow("no element of rank 3 found in the span of the coefficient matrices")


def compression_form(P, B=None, C=None, seed=0) -> CompressionForm:
    """Arrow normal form of a rank-3 pencil with trivial common kernel.

    ``P`` is a SymPencil (its constant is used as the Gram matrix and must be
    diagonal positive definite) or the matrix A, in which case B and C must
    be given too and the constant is the identity.
    """
    if B is not None or C is not None:
        P = SymPencil.monic(XYZ, (P, B, C))
    P = _as_pencil(P)
    r = P.size
    G = P.constant
    if any(G[i][j] for i in range(r) for j in range(r) if i != j) or any(G[i][i] <= 0 for i in range(r)):
        raise NormalizationRequired("constant term must be a positive diagonal matrix")
    grk = generic_rank(P, seed=seed)
    if grk > 3:
        raise RankTooHigh(f"the span contains matrices of rank {grk} > 3")
    if not rank_bound_check(P, 3):
        raise RankTooHigh("a 4x4 minor of the linear part is nonzero")
    if grk < 3:
        raise RankTooLow(f"maximal rank in the span is {grk}, expected 3")
    if common_kernel(P):
        raise HypothesisViolation("the coefficient matrices share a kernel vector; reduce first")
    if r > 5:
        raise SizeExceeded(f"r = {r} > 5 with trivial common kernel")
    if r < 4:
        raise NotCompression(f"r = {r}: generic rank-3 elements are invertible, V = 0 has no room for the arrow form")
    rng = random.Random(seed)
    gens = _rank3_elements(P, rng)
    kernels = [v for m in gens for v in linalg.nullspace(m, r)]
    V = linalg.span_basis(kernels)
    if len(V) != r - 2:
        raise NotCompression(f"kernels of generic elements span a space of dimension {len(V)}, need {r - 2}")
    images = [linalg.matvec(a, v) for a in P.coefficients for v in V]
    W = linalg.span_basis(images)
    if len(W) != 1:
        raise NotCompression(f"image of V has dimension {len(W)}, need 1")
    vb = orthogonal_basis(V, G)
    cb = orthogonal_basis(linalg.orth_complement(vb, r, G), G)
    T = linalg.from_columns(vb + cb)
    arrow = P.congruent(T)
    k = r - 2
    L = pencil_to_matrix(arrow, "linear_part")
    for i in range(k):
        for j in range(k):
            if L.entries[i][j]:
                raise NotCompression(f"entry ({i}, {j}) of the transformed pencil is nonzero")
    us = [L.entries[i][k] for i in range(k)]
    ws = [L.entries[i][k + 1] for i in range(k)]
    # (alpha, beta) is the coefficient pair of the first variable met in the border,
    # so the first nonzero l has leading coefficient one
    alpha = beta = None
    for u, w in zip(us, ws):
        if u or w:
            _, cu = u.linear_coefficients()
            _, cw = w.linear_coefficients()
            idx = next(i for i in range(len(cu)) if cu[i] or cw[i])
            alpha, beta = cu[idx], cw[idx]
            break
    if alpha is None:
        raise NotCompression("border of the arrow form vanishes")
    ls = []
    for u, w in zip(us, ws):
        li = u / alpha if alpha else w / beta
        if li * alpha != u or li * beta != w:
            raise NotCompression("border columns are not proportional")
        ls.append(li)
    form = CompressionForm(
        r, ls, canon(alpha), canon(beta),
        L.entries[k][k], L.entries[k][k + 1], L.entries[k + 1][k + 1],
        T, tuple(arrow.constant[i][i] for i in range(r)), P,
    )
    lhs = normalized_det(form.pencil())
    if lhs != normalized_det(P):
        raise InternalCheckFailed("arrow form changed the determinant")
    return form


# -- singular points ------------------------------------------------------------


class Classification(enum.Enum):
    TWO_REAL_NODES = "TwoRealNodes"
    CONJUGATE_COMPLEX_PAIR = "ConjugateComplexPair"
    DOUBLE_POINT = "DoublePoint"
    DEGENERATE_FAMILY = "DegenerateFamily"
    ONE_AFFINE_POINT = "OneAffinePoint"
    NO_AFFINE_POINT = "NoAffinePoint"

    def __str__(self):
        return self.value


@dataclass
class SingularPointResult:
    discriminant: object
    points: list
    classification: Classification
    quadratic: Poly = None
    line: dict = field(default_factory=dict)
    multiplicity: int = 1
    ranks: list = field(default_factory=list)


def defining_equations(F: CompressionForm):
    """(E1, E2, E3): two affine-linear equations and one quadratic.

    With N = diag(gW) + [[g1, g2], [g2, g3]], c = (alpha, beta) and
    Q = sum li^2 / di, the pencil drops rank by two at p exactly when
    N(p) = Q(p) c c^T.  For the identity Gram matrix the linear pair reads
    beta*g1 = alpha*g2 - beta and alpha*g3 = beta*g2 - alpha.
    """
    ring = F.g1.ring
    k = F.r - 2
    a, b = F.alpha, F.beta
    n11 = F.g1 + F.gram[k]
    n12 = F.g2
    n22 = F.g3 + F.gram[k + 1]
    Q = Poly.zero(ring)
    for li, di in zip(F.l, F.gram[:k]):
        Q = Q + (li * li) / di
    e1 = n11 * b - n12 * a
    e2 = n12 * b - n22 * a
    if a and b:
        e3 = n12 - Q * (a * b)
    else:
        cc = a * a + b * b
        e3 = (n11 * (a * a) + n12 * (2 * a * b) + n22 * (b * b)) - Q * (cc * cc)
    return e1, e2, e3, Q


def _solve_line(e1, e2, ring):
    """Parametrize {e1 = e2 = 0} by one free coordinate; None if not a line."""
    rows = []
    for e in (e1, e2):
        c0, lin = e.linear_coefficients()
        rows.append(tuple(lin) + (-c0,))
    red, piv = linalg.rref(rows)
    n = len(ring)
    if any(p == n for p in piv):
        return "inconsistent"
    if len(piv) != 2:
        return None
    free = next(i for i in range(n) if i not in piv)
    u = ring[free]
    uvar = Poly.var((u,), u)
    images = {}
    for row, p in zip(red, piv):
        images[ring[p]] = Poly.const((u,), row[n]) - uvar * row[free]
    images[u] = uvar
    return u, images


def _normalize_quadratic(q: Poly):
    """Rescale a univariate polynomial of degree <= 2: primitive integer with positive
    leading coefficient when that is possible, monic otherwise."""
    coefs = [q.coefficient((k,)) for k in (2, 1, 0)]
    lead = next(c for c in coefs if c)
    if not all(is_rational(c) for c in coefs):
        coefs = [fdiv(c, lead) for c in coefs]
    if all(is_rational(c) for c in coefs):
        fr = [Fraction(c) for c in coefs]
        den = 1
        for c in fr:
            den = den * c.denominator // _gcd(den, c.denominator)
        coefs = [int(c * den) for c in fr]
        g = 0
        for c in coefs:
            g = _gcd(g, abs(c))
        if next(c for c in coefs if c) < 0:
            g = -g
        coefs = [c // g for c in coefs]
    return Poly(q.ring, {(2 - i,): c for i, c in enumerate(coefs) if c}), coefs


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _sqrt_element(D, base):
    """sqrt(D) in base, or in base(sqrt k) with D = s^2 * k."""
    e = sqrt_in_field(D, base)
    if e is not None:
        return e
    s = _square_part(D)
    k = Fraction(D) / (s * s)
    return QuadExt(0, s, k, base)


def singular_points(F: CompressionForm) -> SingularPointResult:
    """The points where the arrow pencil drops rank by two."""
    if not F.alpha and not F.beta:
        raise HypothesisViolation("alpha and beta are both zero")
    ring = F.g1.ring
    e1, e2, e3, _ = defining_equations(F)
    sol = _solve_line(e1, e2, ring)
    if sol == "inconsistent":
        return SingularPointResult(None, [], Classification.NO_AFFINE_POINT)
    if sol is None:
        return SingularPointResult(None, [], Classification.DEGENERATE_FAMILY)
    u, images = sol
    quad = e3.subs(images, (u,))
    line = {v: images[v] for v in ring}
    deg = quad.total_degree() if quad else -1
    if deg < 0:
        # the whole line is singular; the point at u = 0 witnesses it
        pt = tuple(images[v].eval([0]) for v in ring)
        res = SingularPointResult(None, [pt], Classification.DEGENERATE_FAMILY, quad, line)
        _check_points(F, res)
        return res
    if deg == 0:
        return SingularPointResult(None, [], Classification.NO_AFFINE_POINT, quad, line)
    quad, (a, b, c) = _normalize_quadratic(quad)
    if deg == 1:
        root = fdiv(-c, b)
        pt = tuple(images[v].eval([root]) for v in ring)
        res = SingularPointResult(None, [pt], Classification.ONE_AFFINE_POINT, quad, line)
        _check_points(F, res)
        return res
    D = canon(b * b - 4 * a * c)
    if not is_rational(D):
        raise UnsupportedField(f"discriminant {D} is irrational; points would need a deeper tower")
    base = F.pencil().scalar_field()
    if F.source is not None and len(F.source.scalar_field()) > len(base):
        base = F.source.scalar_field()
    if D == 0:
        roots = [fdiv(-b, 2 * a)]
        cls = Classification.DOUBLE_POINT
    else:
        sq = _sqrt_element(D, base)
        roots = [fdiv(sq - b, 2 * a), fdiv(-sq - b, 2 * a)]
        cls = Classification.TWO_REAL_NODES if D > 0 else Classification.CONJUGATE_COMPLEX_PAIR
    points = [tuple(images[v].eval([t]) for v in ring) for t in roots]
    res = SingularPointResult(D, points, cls, quad, line, multiplicity=2 if D == 0 else 1)
    _check_points(F, res)
    return res


def factor_matrix(F: CompressionForm, p):
    """S with gram + arrow(p) = S diag(gV) S^T (S is r x (r-2))."""
    k = F.r - 2
    lp = [li.eval(p) for li in F.l]
    rows = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    rows.append([fdiv(F.alpha * x, d) for x, d in zip(lp, F.gram[:k])])
    rows.append([fdiv(F.beta * x, d) for x, d in zip(lp, F.gram[:k])])
    return linalg.mat(rows)


def _check_points(F: CompressionForm, res: SingularPointResult):
    e1, e2, e3, Q = defining_equations(F)
    k = F.r - 2
    arrow = F.pencil()
    src = F.source
    for p in res.points:
        if any(e.eval(p) for e in (e1, e2, e3)):
            raise InternalCheckFailed(f"point {p} does not satisfy the defining equations")
        m = arrow.evaluate(p)
        S = factor_matrix(F, p)
        gv = tuple(tuple(F.gram[i] if i == j else 0 for j in range(k)) for i in range(k))
        if linalg.matmul(linalg.matmul(S, gv), linalg.transpose(S)) != m:
            raise InternalCheckFailed(f"factorization S G S^T fails at {p}")
        rk = linalg.rank(m)
        if rk != F.r - 2:
            raise InternalCheckFailed(f"rank {rk} at {p}, expected {F.r - 2}")
        if src is not None and linalg.rank(src.evaluate(p)) != src.size - 2:
            raise InternalCheckFailed(f"source pencil does not drop rank by two at {p}")
        res.ranks.append(rk)


def verify_singularity(f: Poly, p, hvar=None):
    """(True, None) if f^h and all its partials vanish at (1 : p); else (False, offending poly)."""
    if hvar is None:
        hvar = "w"
        while hvar in f.ring:
            hvar = hvar + "_"
    fh = f.homogenize(hvar)
    point = (1,) + tuple(p)
    if fh.eval(point):
        return False, fh
    for v in fh.ring:
        d = fh.partial(v)
        if d.eval(point):
            return False, d
    return True, None


# -- size reduction -----------------------------------------------------------------


@dataclass
class Reduction:
    pencil: SymPencil
    form: CompressionForm
    complement_basis: tuple  # r x r' matrix whose columns span the complement of the common kernel

    @property
    def size(self):
        return self.pencil.size


def reduce_to_five(P, B=None, C=None, seed=0) -> Reduction:
    """Congruent arrow pencil of size <= 5 with the same normalized determinant."""
    if B is not None or C is not None:
        P = SymPencil.monic(XYZ, (P, B, C))
    P = _as_pencil(P)
    f = normalized_det(P)
    if f.total_degree() != 3:
        raise DegreeNotThree(f"determinant has degree {f.total_degree()}")
    red, basis = common_kernel_reduce(P)
    if red.size <= 3:
        # no arrow form exists below size four (a 3x3 rank-3 pencil has no
        # isotropic common vector in general), and nothing needs compressing
        return Reduction(red, None, basis)
    form = compression_form(red, seed=seed)
    out = form.pencil()
    if out.size > 5:
        raise SizeExceeded(f"arrow form has size {out.size}")
    if normalized_det(out) != f:
        raise InternalCheckFailed("reduction changed the determinant")
    return Reduction(out, form, basis)


# -- end to end -----------------------------------------------------------------------


@dataclass
class CubicAnalysis:
    f: Poly
    reduced_size: int
    rank_check: RankCheck
    form: CompressionForm
    points: SingularPointResult
    singular_checks: list
    substitution: str = "none: M = A0*x0 + sum Ai*xi is used as given"


def cubic_pipeline(P: SymPencil, seed=0) -> CubicAnalysis:
    """Determinant, kernel reduction, arrow form, singular points, singularity check."""
    if not P.is_monic:
        raise NormalizationRequired("pencil must be monic (constant term = identity)")
    if len(P.var_names) != 3:
        raise HypothesisViolation(f"expected 3 variables, got {len(P.var_names)}")
    f = normalized_det(P)
    if f.total_degree() != 3:
        raise DegreeNotThree(f"det has degree {f.total_degree()}, expected 3")
    red, _ = common_kernel_reduce(P)
    rc = rank_bound_check(red, 3)
    if not rc:
        raise RankTooHigh("a 4x4 minor of the linear part is nonzero")
    form = compression_form(red, seed=seed)
    form.source = P
    pts = singular_points(form)
    checks = [verify_singularity(f, p)[0] for p in pts.points]
    if not all(checks):
        raise InternalCheckFailed("a computed point is not a singular point of f")
    return CubicAnalysis(f, red.size, rc, form, pts, checks)
