"""Built-in example data: the explicit pencils and polynomials used as regression fixtures."""

from __future__ import annotations

from .matpoly import SymPencil
from .polyring import Poly, QuadExt, parse_poly

XYZ = ("x", "y", "z")

# Affine cubic whose projective closure is a smooth surface.
SMOOTH_CUBIC_TEXT = "10 - 3*x^2 - 6*y - x^2*y - 3*y^2 + y^3 - 3*z^2 + y*z^2"


def smooth_cubic() -> Poly:
    return parse_poly(SMOOTH_CUBIC_TEXT, XYZ)


def _sym(entries):
    """Symmetric r x r matrix from its upper triangle given as a dict {(i, j): value}."""
    r = 1 + max(max(i, j) for i, j in entries) if entries else 0
    m = [[0] * r for _ in range(r)]
    for (i, j), v in entries.items():
        m[i][j] = v
        m[j][i] = v
    return m


def two_real_nodes_pencil() -> SymPencil:
    """4x4 monic pencil whose cubic boundary has two real nodes."""
    a = _sym({(0, 2): 1, (0, 3): -1, (2, 2): 1, (2, 3): 1, (3, 3): 0, (1, 1): 0})
    b = _sym({(1, 2): 1, (1, 3): -1, (3, 3): -1, (0, 0): 0})
    c = _sym({(2, 3): 1, (3, 3): 1, (0, 0): 0})
    return SymPencil.monic(XYZ, (a, b, c))


def complex_nodes_pencil() -> SymPencil:
    """4x4 monic pencil with sqrt(2) entries whose two nodes are non-real."""
    s = QuadExt(0, 1, 2)
    a = _sym({(0, 2): s, (0, 3): 1, (2, 2): 1, (3, 3): 1, (1, 1): 0})
    b = _sym({(1, 2): s, (1, 3): 1, (2, 2): -1, (0, 0): 0})
    c = _sym({(2, 3): s, (3, 3): 1, (0, 0): 0})
    return SymPencil.monic(XYZ, (a, b, c))


def arrow_pencil(alpha, beta, ls, g1, g2, g3, var_names=XYZ) -> SymPencil:
    """Monic pencil I + arrow(alpha, beta, l, g) with linear forms given as coefficient triples."""
    k = len(ls)
    r = k + 2
    mats = []
    for v in range(len(var_names)):
        m = [[0] * r for _ in range(r)]
        for i, li in enumerate(ls):
            m[i][k] = m[k][i] = alpha * li[v]
            m[i][k + 1] = m[k + 1][i] = beta * li[v]
        m[k][k] = g1[v]
        m[k][k + 1] = m[k + 1][k] = g2[v]
        m[k + 1][k + 1] = g3[v]
        mats.append(m)
    return SymPencil.monic(var_names, mats)


def fixture_f() -> SymPencil:
    """alpha = beta = 1, l = (x, y), g1 = x, g2 = z, g3 = y."""
    return arrow_pencil(1, 1, [(1, 0, 0), (0, 1, 0)], (1, 0, 0), (0, 0, 1), (0, 1, 0))


def product_sos_identity():
    """Both sides of (x1^2+x2^2+x3^2+x4^2)(x1^2+x2^2) = (x1^2+x2^2)^2 + (x1x3+x2x4)^2 + (x1x4-x2x3)^2."""
    ring = ("x1", "x2", "x3", "x4")
    x1, x2, x3, x4 = Poly.gens(ring)
    lhs = (x1**2 + x2**2 + x3**2 + x4**2) * (x1**2 + x2**2)
    squares = [x1**2 + x2**2, x1 * x3 + x2 * x4, x1 * x4 - x2 * x3]
    return lhs, squares
