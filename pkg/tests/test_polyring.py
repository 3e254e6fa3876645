import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spectrakit.errors import InputError, MixedRadicand, NotDivisible, RingMismatch
from spectrakit.polyring import (
    Poly,
    QuadExt,
    divides,
    exact_div,
    format_poly,
    format_scalar,
    multiplicity,
    parse_poly,
    parse_scalar,
    reduce_mod_sphere,
    sqrt_in_field,
)

from oracles import naive_mul_terms, random_poly, to_sympy

XYZ = ("x", "y", "z")


def test_parse_print_roundtrip_example():
    text = "10 - 3*x^2 - 6*y - x^2*y - 3*y^2 + y^3 - 3*z^2 + y*z^2"
    f = parse_poly(text, XYZ)
    assert parse_poly(format_poly(f), XYZ) == f
    assert f.total_degree() == 3
    assert f.eval((0, 1, 0)) == 10 - 6 - 3 + 1


def test_parse_expressions():
    f = parse_poly("(x+1)^2 - x**2 - 2*x", ("x",))
    assert f == 1
    g = parse_poly("x/2 + 3/4", ("x",))
    assert g.coefficient((1,)) == Fraction(1, 2)
    h = parse_poly("sqrt(2)*x*sqrt(2)", ("x",))
    assert h == parse_poly("2*x", ("x",))
    with pytest.raises(InputError):
        parse_poly("x +* y")
    with pytest.raises(InputError):
        parse_poly("x / y")


def test_infer_ring_sorted():
    assert parse_poly("z + x*y").ring == ("x", "y", "z")


@pytest.mark.parametrize("seed", range(40))
def test_roundtrip_random(seed):
    f = random_poly(random.Random(seed), XYZ, nterms=6)
    assert parse_poly(format_poly(f), XYZ) == f


def test_roundtrip_irrational_coefficients():
    s = QuadExt(0, 1, 2)
    f = Poly(XYZ, {(1, 0, 0): s, (0, 0, 0): 1 + s, (0, 2, 0): Fraction(-1, 3) * s})
    assert parse_poly(format_poly(f), XYZ) == f


@pytest.mark.parametrize("trial", range(200))
def test_ring_axioms(trial):
    rng = random.Random(1000 + trial)
    f, g, h = (random_poly(rng, XYZ) for _ in range(3))
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0
    assert (f * g).terms == naive_mul_terms(f, g)


@pytest.mark.parametrize("trial", range(200))
def test_exact_division_roundtrip(trial):
    rng = random.Random(2000 + trial)
    f = random_poly(rng, XYZ)
    g = random_poly(rng, XYZ)
    if not g:
        g = Poly.const(XYZ, 3)
    assert exact_div(f * g, g) == f
    # f*g + 1 is not a multiple of a nonconstant g
    if not g.is_constant():
        with pytest.raises(NotDivisible):
            exact_div(f * g + 1, g)


def test_exact_division_agrees_with_sympy():
    rng = random.Random(7)
    syms = sympy.symbols("x y z")
    for _ in range(30):
        f, g = random_poly(rng, XYZ), random_poly(rng, XYZ)
        if not g or g.is_constant():
            continue
        p = f * g + random_poly(rng, XYZ, nterms=1)
        q, r = sympy.div(to_sympy(p, syms), to_sympy(g, syms), *syms)
        assert divides(g, p) == (sympy.expand(r) == 0 and sympy.expand(q * to_sympy(g, syms) - to_sympy(p, syms)) == 0)


def test_multiplicity():
    x, y = Poly.gens(("x", "y"))
    h = x * x - y
    m, q = multiplicity(h**3 * (x + 1), h)
    assert m == 3 and q == x + 1
    with pytest.raises(ValueError):
        multiplicity(Poly.zero(("x", "y")), h)


@pytest.mark.parametrize("trial", range(100))
def test_reduce_mod_sphere_soundness(trial):
    rng = random.Random(3000 + trial)
    ring = ("x0", "x1", "x2", "x3")
    f = random_poly(rng, ring, nterms=5, maxdeg=4)
    x0 = Poly.var(ring, "x0")
    q = sum((Poly.var(ring, v) ** 2 for v in ring[1:]), Poly.zero(ring))
    a, b = reduce_mod_sphere(f, "x0", q)
    assert not a.involves("x0") and not b.involves("x0")
    assert divides(x0 * x0 - q, f - (a * x0 + b))


def test_reduce_mod_sphere_examples():
    ring = ("x0", "x1", "x2")
    x0, x1, x2 = Poly.gens(ring)
    q = x1 * x1 + x2 * x2
    assert reduce_mod_sphere(x0 - x1, "x0", q) == (1, -x1)
    a, b = reduce_mod_sphere(x0**3, "x0", q)
    assert a == q and b == 0


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Poly.var(("x",), "x") + Poly.var(("y",), "y")


def test_homogenize_partial_eval():
    f = parse_poly("x^2 + y - 1", ("x", "y"))
    fh = f.homogenize("w")
    assert fh.ring == ("w", "x", "y")
    assert fh.is_homogeneous()
    assert fh.dehomogenize("w") == f
    assert f.partial("x") == parse_poly("2*x", ("x", "y"))
    assert f.eval({"x": 2, "y": -3}) == 0


# -- quadratic extensions ------------------------------------------------------


def test_quadext_examples():
    s2 = QuadExt(0, 1, 2)
    assert (1 + s2) * (1 - s2) == -1
    assert format_scalar(1 / s2) == "1/2*sqrt(2)"
    assert QuadExt(3, 4, 5).conj() == QuadExt(3, -4, 5)
    assert s2 * s2 == 2 and isinstance(s2 * s2, int)
    with pytest.raises(MixedRadicand):
        s2 + QuadExt(0, 1, 3)
    with pytest.raises(ValueError):
        QuadExt(0, 1, 4)


def test_quadext_tower():
    s2 = QuadExt(0, 1, 2)
    t = QuadExt(1, s2, -15, base=(2,))
    assert t * t.conj() == t.norm()
    assert t.norm() == 1 + 30
    assert sqrt_in_field(8, (2,)) == 2 * s2
    assert sqrt_in_field(3, (2,)) is None
    # sqrt(2) is a square root of 2 in the tower, so 2 is rejected as radicand over Q(sqrt 2)
    with pytest.raises(ValueError):
        QuadExt(0, 1, 8, base=(2,))


def test_parse_scalar():
    assert parse_scalar("-1/2") == Fraction(-1, 2)
    assert parse_scalar("1+2*sqrt(5)") == QuadExt(1, 2, 5)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicand = st.sampled_from([2, 3, 5, -1, -15, Fraction(1, 2)])


@settings(max_examples=200, deadline=None)
@given(rationals, rationals, rationals, rationals, radicand)
def test_quadext_norm_multiplicative(a, b, c, e, d):
    u, v = QuadExt(a, b, d), QuadExt(c, e, d)
    uv = u * v
    n = uv.norm() if isinstance(uv, QuadExt) else uv * uv
    assert n == u.norm() * v.norm()
    if u:
        assert u * (1 / u) == 1
