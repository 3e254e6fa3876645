"""Ball representations: h-multiplicity of determinants, minor divisibility,
sum-of-squares extraction from the adjugate, and 2^k-squares composition.

Convention: an affine monic pencil I + sum Ai*xi is homogenized to
M = I*x0 + sum Ai*xi, with x0 first in the ring, and h = x0^2 - sum xi^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    InfiniteMultiplicity,
    InternalCheckFailed,
    NormalizationRequired,
    NotABallPencil,
    NotFound,
    ProfileViolation,
)
from .matpoly import PolyMatrix, SymPencil, adjugate_column, bareiss_det, pencil_to_matrix
from .polyring import Poly, divides, exact_div, multiplicity, reduce_mod_sphere

HVAR = "x0"


def ball_vars(n):
    return tuple(f"x{i}" for i in range(1, n + 1))


def standard_ball_pencil(n: int) -> SymPencil:
    """Arrow pencil with diagonal (1+x1, 1-x1, ..., 1-x1) and border (x2, ..., xn).

    Its positivity region is the closed unit ball.  For n = 1 this is
    diag(1+x1, 1-x1).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    r = max(n, 2)
    mats = []
    for v in range(n):
        a = [[0] * r for _ in range(r)]
        if v == 0:
            a[0][0] = 1
            for i in range(1, r):
                a[i][i] = -1
        else:
            a[0][v] = a[v][0] = 1
        mats.append(a)
    return SymPencil.monic(ball_vars(n), mats)


def sphere_form(xs, ring):
    """h = x0^2 - sum xi^2 in ``ring``."""
    x0 = Poly.var(ring, HVAR)
    h = x0 * x0
    for v in xs:
        xv = Poly.var(ring, v)
        h = h - xv * xv
    return h


def homogenized_matrix(p: SymPencil) -> PolyMatrix:
    return pencil_to_matrix(p, "homogeneous", HVAR)


def ball_setup(p: SymPencil):
    """(M, h) for a pencil: the homogenized matrix and the sphere form."""
    m = homogenized_matrix(p)
    return m, sphere_form(p.var_names, m.ring)


@dataclass
class DivisibilityProfile:
    h: Poly
    m: int
    quotient: Poly
    minor_check_size: int
    witnesses: list = field(default_factory=list)


def h_multiplicity(M: PolyMatrix, h: Poly) -> DivisibilityProfile:
    """Exact multiplicity of h in det(M), by repeated exact division."""
    if not M.is_square:
        raise ValueError("M must be square")
    if h.is_constant():
        raise ValueError("h must be nonconstant")
    d = M.det()
    if not d:
        raise InfiniteMultiplicity("det(M) = 0, every power of h divides it")
    m, q = multiplicity(d, h)
    return DivisibilityProfile(h, m, q, M.rows - m + 1)


@dataclass
class MinorCheck:
    passed: bool
    size: int
    checked: int = 0
    first_failure: tuple = None

    def __bool__(self):
        return self.passed


def verify_minor_divisibility(M: PolyMatrix, h: Poly, m: int) -> MinorCheck:
    """Check that every (r-m+1)-minor of M is divisible by h."""
    s = M.rows - m + 1
    if not 1 <= s <= M.rows:
        raise ValueError(f"minor size {s} out of range for r = {M.rows}")
    count = 0
    for rows in combinations(range(M.rows), s):
        for cols in combinations(range(M.cols), s):
            minor = bareiss_det([[M.entries[i][j] for j in cols] for i in rows], M.ring)
            count += 1
            if not divides(h, minor):
                return MinorCheck(False, s, count, (rows, cols))
    return MinorCheck(True, s, count)


def find_nondivisible_principal_minor(M: PolyMatrix, h: Poly, m: int):
    """(s, rows) for a principal minor of size s >= r-m+1 not divisible by h.

    Sizes are scanned upward from r-m+1 and index sets in lex order.
    """
    r = M.rows
    start = max(r - m + 1, 1)
    for s in range(start, r + 1):
        for rows in combinations(range(r), s):
            minor = bareiss_det([[M.entries[i][j] for j in rows] for i in rows], M.ring)
            if not divides(h, minor):
                return s, rows
    raise NotFound(f"every principal minor of size >= {start} is divisible by h; det is divisible by h^{m}?")


def adjugate_gcd_profile(M: PolyMatrix, h: Poly):
    """(m-1, (i, j)): all adj entries are divisible by h^(m-1), entry (i, j) is not divisible by h^m."""
    prof = h_multiplicity(M, h)
    m = prof.m
    if m < 1:
        raise ValueError("h does not divide det(M)")
    hm1 = h ** (m - 1)
    hm = hm1 * h
    witness = None
    for j in range(M.rows):
        col = adjugate_column(M, j) if M.rows > 1 else [Poly.const(M.ring, 1)]
        for i, e in enumerate(col):
            if m > 1 and not divides(hm1, e):
                raise ProfileViolation(f"adj entry ({i}, {j}) is not divisible by h^{m - 1}")
            if witness is None and not divides(hm, e):
                witness = (i, j)
    if witness is None:
        raise ProfileViolation(f"every adj entry is divisible by h^{m}")
    return m - 1, witness


@dataclass
class SosPair:
    a: list
    b: list
    g1: Poly
    g2: Poly
    column: int = 0
    m: int = 1

    def nonzero_squares(self):
        return sum(1 for e in self.a if e), sum(1 for e in self.b if e)


def _adj_column(M, j):
    if M.rows == 1:
        return [Poly.const(M.ring, 1)]
    return adjugate_column(M, j)


def sos_from_column(M: PolyMatrix, h: Poly, m: int, v, xs) -> SosPair:
    """Split w = v / h^(m-1) as a*x0 + b modulo h and build (a, b, a.a, b.b)."""
    hm1 = h ** (m - 1)
    w = [exact_div(e, hm1) if m > 1 else e for e in v]
    ring = M.ring
    q = Poly.const(ring, 0)
    for x in xs:
        xv = Poly.var(ring, x)
        q = q + xv * xv
    a, b = [], []
    for e in w:
        ai, bi = reduce_mod_sphere(e, HVAR, q)
        a.append(ai)
        b.append(bi)
    g1 = sum((e * e for e in a), Poly.zero(ring))
    g2 = sum((e * e for e in b), Poly.zero(ring))
    return SosPair(a, b, g1, g2, m=m)


def _check_sos(pair: SosPair, lin: PolyMatrix, q: Poly):
    if not any(pair.a) and not any(pair.b):
        raise InternalCheckFailed("a and b are both zero")
    if q * pair.g1 != pair.g2:
        raise InternalCheckFailed("(sum xi^2) * a.a != b.b")
    # M w = 0 mod h splits into L a = -b and L b = -q a
    r = len(pair.a)
    for i in range(r):
        la = sum((lin.entries[i][j] * pair.a[j] for j in range(r)), Poly.zero(q.ring))
        lb = sum((lin.entries[i][j] * pair.b[j] for j in range(r)), Poly.zero(q.ring))
        if la != -pair.b[i] or lb != -(q * pair.a[i]):
            raise InternalCheckFailed("adjugate column does not satisfy the kernel relations")


def extract_sos_pair(P: SymPencil, n: int = None) -> SosPair:
    """Sum-of-squares pair (a, b) with (sum xi^2) * a.a = b.b from a ball pencil.

    Take m, the multiplicity of h in det(M); pick the lowest-index column v
    of adj(M) with an entry not divisible by h^m; w = v / h^(m-1); write
    w = a*x0 + b modulo h.
    """
    if not P.is_monic:
        raise NormalizationRequired("constant term must be the identity; apply a congruence first")
    if n is not None and n != len(P.var_names):
        raise ValueError(f"pencil has {len(P.var_names)} variables, expected {n}")
    M, h = ball_setup(P)
    d = M.det()
    if not d:
        raise NotABallPencil("determinant is zero")
    m, _ = multiplicity(d, h)
    if m == 0:
        raise NotABallPencil("x0^2 - sum xi^2 does not divide the homogenized determinant")
    hm = h ** m
    for j in range(M.rows):
        v = _adj_column(M, j)
        if any(not divides(hm, e) for e in v):
            pair = sos_from_column(M, h, m, v, P.var_names)
            pair.column = j
            lin = pencil_to_matrix(P.linear_part(), "homogeneous", HVAR)
            _check_sos(pair, lin, Poly.var(M.ring, HVAR) ** 2 - h)
            return pair
    raise InternalCheckFailed("no adjugate column has an entry outside (h^m)")


def qualifying_columns(P: SymPencil):
    """All SosPairs obtained from adjugate columns with an entry not divisible by h^m."""
    M, h = ball_setup(P)
    m, _ = multiplicity(M.det(), h)
    hm = h ** m
    out = []
    for j in range(M.rows):
        v = _adj_column(M, j)
        if any(not divides(hm, e) for e in v):
            pair = sos_from_column(M, h, m, v, P.var_names)
            pair.column = j
            out.append(pair)
    return out


# Cayley-Dickson doubling: (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).


def _conj(u):
    return [u[0]] + [-e for e in u[1:]]


def _cd_mul(u, v):
    n = len(u)
    if n == 1:
        return [u[0] * v[0]]
    h = n // 2
    a, b, c, d = u[:h], u[h:], v[:h], v[h:]
    left = [x - y for x, y in zip(_cd_mul(a, c), _cd_mul(_conj(d), b))]
    right = [x + y for x, y in zip(_cd_mul(d, a), _cd_mul(b, _conj(c)))]
    return left + right


def pfister_compose(k: int, u, v):
    """w with sum wi^2 = (sum ui^2)(sum vi^2), via R, C, H and O multiplication (k = 0..3)."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"no bilinear 2^k-squares composition for k = {k} (only k <= 3)")
    n = 2 ** k
    u, v = list(u), list(v)
    if len(u) != n or len(v) != n:
        raise ValueError(f"both vectors must have length {n}")
    return _cd_mul(u, v)


def sum_of_squares(vec):
    it = iter(vec)
    first = next(it)
    acc = first * first
    for e in it:
        acc = acc + e * e
    return acc


@dataclass
class IdentityCheck:
    passed: bool
    lhs: Poly
    rhs: Poly

    def __bool__(self):
        return self.passed


def verify_product_sos_identity(squares=None) -> IdentityCheck:
    """Expand (x1^2+x2^2+x3^2+x4^2)(x1^2+x2^2) and the three-square right side and compare."""
    from .fixtures import product_sos_identity

    lhs, default = product_sos_identity()
    rhs = sum_of_squares(default if squares is None else squares)
    return IdentityCheck(lhs == rhs, lhs, rhs)


def ball_report(P: SymPencil):
    """Divisibility data for a pencil against the sphere form, as plain values."""
    M, h = ball_setup(P)
    prof = h_multiplicity(M, h)
    out = {"h": h, "m": prof.m, "quotient": prof.quotient, "minor_check_size": prof.minor_check_size}
    if prof.m >= 1:
        chk = verify_minor_divisibility(M, h, prof.m)
        out["minor_check"] = chk
        out["adjugate_profile"] = adjugate_gcd_profile(M, h)
    else:
        out["minor_check"] = None
    try:
        s, rows = find_nondivisible_principal_minor(M, h, prof.m + 1)
        out["principal_witness"] = (s, rows)
    except NotFound:
        out["principal_witness"] = None
    return out


__all__ = [
    "DivisibilityProfile",
    "IdentityCheck",
    "MinorCheck",
    "SosPair",
    "adjugate_gcd_profile",
    "ball_report",
    "ball_setup",
    "ball_vars",
    "extract_sos_pair",
    "find_nondivisible_principal_minor",
    "h_multiplicity",
    "homogenized_matrix",
    "pfister_compose",
    "qualifying_columns",
    "sphere_form",
    "standard_ball_pencil",
    "sum_of_squares",
    "verify_minor_divisibility",
    "verify_product_sos_identity",
]
