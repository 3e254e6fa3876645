import random

import pytest
import sympy

from spectrakit.errors import CapExceeded, HypothesisViolation
from spectrakit.fixtures import smooth_cubic
from spectrakit.groebner import (
    GroebnerBasis,
    Ideal,
    Smoothness,
    buchberger,
    check_groebner,
    is_projectively_smooth,
    normal_form,
    s_polynomial,
)
from spectrakit.polyring import Poly, parse_poly

from oracles import random_poly, sympy_groebner, to_sympy

R3 = ("x", "y", "z")
R4 = ("w", "x", "y", "z")


def _same_basis(gb, polys):
    G, syms = sympy_groebner(polys)
    ours = sorted(str(sympy.expand(to_sympy(g, syms))) for g in gb.basis)
    theirs = sorted(str(sympy.expand(g / sympy.Poly(g, *syms).LC(order="grevlex"))) for g in G.exprs)
    return ours == theirs


def test_textbook_example():
    x, y = Poly.gens(("x", "y"))
    I = Ideal((x**3 - 2 * x * y, x**2 * y - 2 * y**2 + x))
    gb = buchberger(I)
    assert _same_basis(gb, list(I.generators))
    assert normal_form(x**3 - 2 * x * y, gb) == 0


@pytest.mark.parametrize("seed", range(12))
def test_random_ideals_match_sympy(seed):
    rng = random.Random(seed)
    polys = [random_poly(rng, R3, nterms=3, maxdeg=2) for _ in range(3)]
    polys = [p for p in polys if p]
    gb = buchberger(Ideal(tuple(polys)))
    check_groebner(gb)
    assert _same_basis(gb, polys)
    for p in polys:
        assert normal_form(p, gb) == 0


def test_grlex_order():
    x, y, z = Poly.gens(R3)
    gb = buchberger(Ideal((x * y - z, y * z - x)), order="grlex")
    assert gb.order == "grlex"
    check_groebner(gb)


def test_unit_ideal():
    x, y = Poly.gens(("x", "y"))
    gb = buchberger(Ideal((x * y - 1, x)))
    assert gb.is_unit_ideal()


def test_s_polynomial_cancels_leads():
    x, y = Poly.gens(("x", "y"))
    f, g = x**2 + y, x * y + 1
    s = s_polynomial(f, g)
    assert s.lead()[0] != (2, 1)


def test_cap_exceeded():
    x, y, z = Poly.gens(R3)
    I = Ideal((x**5 + y**4 + z**3 - 1, x**3 + y**3 + z**2 - 1))
    assert max(g.total_degree() for g in buchberger(I).basis) == 6
    with pytest.raises(CapExceeded):
        buchberger(I, degree_cap=5)
    with pytest.raises(ValueError):
        buchberger(I, degree_cap=4)


def test_smooth_cubic_certificate():
    fh = smooth_cubic().homogenize("w")
    res = is_projectively_smooth(fh)
    assert res.status is Smoothness.SMOOTH
    assert set(res.powers) == set(R4)
    assert all(1 <= k <= 20 for k in res.powers.values())


def test_fermat_and_quadric_smooth():
    fermat = parse_poly("w^3 + x^3 + y^3 + z^3", R4)
    assert is_projectively_smooth(fermat).smooth
    quadric = parse_poly("x^2 + y^2 + z^2 - 1", R3).homogenize("w")
    assert is_projectively_smooth(quadric).smooth


def test_singular_surfaces_not_certified():
    cayley_like = parse_poly("w*x*y - z^3", R4)
    assert is_projectively_smooth(cayley_like).status is Smoothness.SINGULAR_WITNESS_UNKNOWN
    double_plane = parse_poly("x^2", R4)
    assert not is_projectively_smooth(double_plane).smooth


def test_euler_relation_in_ideal():
    # f_h lies in the ideal of its partials (Euler), so its normal form vanishes
    fh = smooth_cubic().homogenize("w")
    gb = buchberger(Ideal(tuple(fh.partial(v) for v in fh.ring)))
    assert normal_form(fh, gb) == 0


def test_rejects_inhomogeneous():
    with pytest.raises(HypothesisViolation):
        is_projectively_smooth(parse_poly("x^2 + y", ("x", "y")))


def test_groebner_basis_type():
    x, y = Poly.gens(("x", "y"))
    gb = buchberger(Ideal((x - y,)))
    assert isinstance(gb, GroebnerBasis) and len(gb.basis) == 1
