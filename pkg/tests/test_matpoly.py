import random

import pytest

from spectrakit.errors import InputError
from spectrakit.fixtures import XYZ, fixture_f, two_real_nodes_pencil
from spectrakit.matpoly import (
    PolyMatrix,
    SymPencil,
    adjugate,
    bareiss_det,
    common_kernel,
    common_kernel_reduce,
    format_pencil,
    generic_rank,
    linalg,
    minors,
    normalized_det,
    parse_pencil,
    pencil_to_matrix,
    rank_at,
)
from spectrakit.matpoly.pencil import orthogonal_basis
from spectrakit.polyring import Poly, QuadExt, parse_poly

from oracles import laplace_det, leibniz_det, random_poly_matrix

RING = ("x", "y", "z")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("seed", range(4))
def test_bareiss_matches_cofactor_oracles(n, seed):
    rng = random.Random(100 * n + seed)
    m = random_poly_matrix(rng, n, RING)
    d = bareiss_det(m, RING)
    assert d == laplace_det(m, RING)
    if n <= 4:
        assert d == leibniz_det(m, RING)


def test_bareiss_zero_pivots():
    x, y, _ = Poly.gens(RING)
    m = [[0, x, 1], [x, 0, y], [1, y, 0]]
    m = [[Poly.const(RING, e) if not isinstance(e, Poly) else e for e in row] for row in m]
    assert bareiss_det(m, RING) == laplace_det(m, RING)
    assert bareiss_det([[Poly.zero(RING)] * 2] * 2, RING) == 0


def test_bareiss_irrational_entries():
    s = QuadExt(0, 1, 2)
    x, y, _ = Poly.gens(RING)
    m = [[1 + x * s, y], [y * s, Poly.const(RING, 1) - x]]
    assert bareiss_det(m, RING) == laplace_det(m, RING)


@pytest.mark.parametrize("trial", range(100))
def test_adjugate_identity(trial):
    rng = random.Random(5000 + trial)
    n = rng.randint(1, 4)
    M = PolyMatrix(random_poly_matrix(rng, n, RING), RING)
    A = adjugate(M)
    d = M.det()
    I = PolyMatrix.identity(n, RING)
    assert M * A == I * d
    assert A * M == I * d


def test_adjugate_examples():
    ring = ("x0", "x1", "x2")
    x0, x1, x2 = Poly.gens(ring)
    M = PolyMatrix([[x0 + x1, x2], [x2, x0 - x1]], ring)
    assert adjugate(M) == PolyMatrix([[x0 - x1, -x2], [-x2, x0 + x1]], ring)
    assert adjugate(PolyMatrix([[x0]], ring)) == PolyMatrix([[1]], ring)


def test_minors_order_and_count():
    rng = random.Random(3)
    M = PolyMatrix(random_poly_matrix(rng, 4, RING), RING)
    got = list(minors(M, 2))
    assert len(got) == 36
    assert [(r, c) for r, c, _ in got[:3]] == [((0, 1), (0, 1)), ((0, 1), (0, 2)), ((0, 1), (0, 3))]
    for r, c, val in got:
        assert val == M.submatrix(r, c).det()
    assert len(list(minors(M, 3, principal_only=True))) == 4
    with pytest.raises(ValueError):
        list(minors(M, 5))


def test_pencil_validation():
    with pytest.raises(ValueError):
        SymPencil.monic(("x",), [[[0, 1], [0, 0]]])
    with pytest.raises(ValueError):
        SymPencil(("x", "y"), [[1]], [[[1]]])


def test_pencil_file_roundtrip():
    for P in (fixture_f(), two_real_nodes_pencil()):
        assert parse_pencil(format_pencil(P, comment="c")) == P
    s = QuadExt(0, 1, 2)
    P = SymPencil(("x",), [[2, 0], [0, 1]], [[[s, 1], [1, -s]]])
    assert parse_pencil(format_pencil(P)) == P


BAD = [
    ("vars: x\nr: 2\nconstant: identity\nx:\n 1 0\n", 4, "expected 2 rows"),
    ("vars: x\nr: 2\nconstant: identity\nx:\n 1 0\n 0 1 2\n", 6, "expected 2 entries"),
    ("vars: x\nr: 2\nconstant: identity\nx:\n 1 q\n 0 1\n", 5, "bad entry"),
    ("vars: x\nr: 2\nconstant: identity\nx:\n 1 1\n 0 1\n", None, "symmetric"),
    ("vars: x\nr: two\nconstant: identity\n", 2, "integer"),
    ("vars: x y\nr: 1\nconstant: identity\nx:\n 1\n", None, "missing coefficient grid"),
]


@pytest.mark.parametrize("text,line,msg", BAD)
def test_pencil_file_errors(text, line, msg):
    with pytest.raises(InputError) as exc:
        parse_pencil(text, source="t.pencil")
    assert exc.value.line == line
    assert msg in str(exc.value)


def test_pencil_forms():
    P = fixture_f()
    h = pencil_to_matrix(P, "homogeneous")
    assert h.ring == ("x0",) + XYZ
    assert h.det().is_homogeneous()
    assert h.det().dehomogenize("x0") == normalized_det(P)
    assert pencil_to_matrix(P, "linear_part").det() == 0


def test_fixture_rank_at_singular_point():
    M = pencil_to_matrix(fixture_f(), "affine")
    assert rank_at(M, (1, 1, 2)) == 2
    assert rank_at(M, (0, 0, 0)) == 4


@pytest.mark.parametrize("seed", range(50))
def test_rank_semicontinuity(seed):
    # the rank at any point never exceeds the generic rank
    rng = random.Random(seed)
    P = two_real_nodes_pencil() if seed % 2 else fixture_f()
    L = pencil_to_matrix(P, "linear_part")
    g = generic_rank(P)
    p = [rng.randint(-20, 20) for _ in range(3)]
    assert rank_at(L, p) <= g == 3


def _pad(P, extra, perm):
    r = P.size + extra
    mats = []
    for a in P.coefficients:
        m = [[0] * r for _ in range(r)]
        for i in range(P.size):
            for j in range(P.size):
                m[perm[i]][perm[j]] = a[i][j]
        mats.append(m)
    return SymPencil.monic(P.var_names, mats)


def test_common_kernel_reduce_padding_recovers_fixture():
    F = fixture_f()
    perm = [5, 1, 3, 0, 2, 4]
    P = _pad(F, 2, perm)
    assert len(common_kernel(P)) == 2
    red, basis = common_kernel_reduce(P)
    assert red.size == 4 and red.is_monic
    assert normalized_det(red) == normalized_det(F)
    assert linalg.congruence(basis, linalg.identity(6)) == linalg.identity(4)


def test_common_kernel_reduce_weighted():
    # kernel spanned by (1, 1, 1): its complement has no rational orthonormal basis
    a = [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]
    P = SymPencil.monic(("x",), [a])
    red, basis = common_kernel_reduce(P)
    assert red.size == 2
    assert normalized_det(red) == normalized_det(P)
    c = red.constant
    assert c[0][1] == 0 and c[1][0] == 0
    assert not red.is_monic


def test_orthogonal_basis_finds_units():
    # span{(1,1,0),(0,0,1)} contains (0,0,1) and (1,1,0)/sqrt2; plane x=y has no rational ONB
    b = orthogonal_basis([(1, 1, 0), (0, 0, 1)])
    grams = [linalg.inner(v, v) for v in b]
    assert sorted(grams) == [1, 2]
    assert linalg.inner(b[0], b[1]) == 0
    b = orthogonal_basis([(3, 4, 0), (0, 0, 2)])
    assert all(linalg.inner(v, v) == 1 for v in b)


def test_generic_rank_seeded():
    P = two_real_nodes_pencil()
    assert generic_rank(P, seed=0) == generic_rank(P, seed=0) == 3


def test_linalg_basics():
    m = ((1, 2, 3), (2, 4, 6), (1, 0, 1))
    assert linalg.rank(m) == 2
    ns = linalg.nullspace(m, 3)
    assert len(ns) == 1 and linalg.matvec(m, ns[0]) == (0, 0, 0)
    inv = linalg.inverse(((2, 1), (1, 1)))
    assert linalg.matmul(inv, ((2, 1), (1, 1))) == linalg.identity(2)
    assert linalg.det(((0, 1), (1, 0))) == -1


def test_parse_poly_in_pencil_ring():
    P = fixture_f()
    f = normalized_det(P)
    assert parse_poly(str(f), XYZ) == f
