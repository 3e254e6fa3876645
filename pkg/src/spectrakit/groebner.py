"""A small Buchberger engine over Q, used to certify smoothness of projective surfaces.

Only what the smoothness certificate needs: reduced Groebner bases for grevlex
(or graded lex), normal forms, and the pure-power test for an empty
projective singular locus.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapExceeded, HypothesisViolation, InternalCheckFailed, RingMismatch
from .polyring import ORDERS, Poly
from .polyring.scalars import canon, fdiv


@dataclass(frozen=True)
class Ideal:
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        if len({g.ring for g in gens}) != 1:
            raise RingMismatch("ideal generators must share one ring")
        object.__setattr__(self, "generators", gens)

    @property
    def ring(self):
        return self.generators[0].ring


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple
    order: str = "grevlex"
    reduced: bool = True

    @property
    def ring(self):
        return self.basis[0].ring if self.basis else ()

    def leading_monomials(self):
        return [g.lead(self.order)[0] for g in self.basis]

    def is_unit_ideal(self):
        return any(g.is_constant() and g for g in self.basis)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Reducer:
    """Division by a list of monic polynomials, on raw term dicts."""

    def __init__(self, polys, key):
        self.key = key
        self.items = []
        for g in polys:
            lm = max(g.terms, key=key)
            self.items.append((lm, [(m, c) for m, c in g.terms.items() if m != lm]))

    def add(self, g):
        lm = max(g.terms, key=self.key)
        self.items.append((lm, [(m, c) for m, c in g.terms.items() if m != lm]))

    def reduce(self, terms, full=True):
        p = dict(terms)
        rem = {}
        key = self.key
        items = self.items
        while p:
            m = max(p, key=key)
            c = p.pop(m)
            for lm, tail in items:
                if _divides(lm, m):
                    e = _sub(m, lm)
                    for tm, tc in tail:
                        mm = tuple(a + b for a, b in zip(e, tm))
                        s = p.get(mm, 0) - c * tc
                        if s:
                            p[mm] = canon(s) if type(s) is Fraction else s
                        else:
                            p.pop(mm, None)
                    break
            else:
                if not full:
                    rem[m] = c
                    rem.update(p)
                    return rem
                rem[m] = c
        return rem


def _monic(terms, key):
    lm = max(terms, key=key)
    c = terms[lm]
    if c == 1:
        return terms
    return {m: fdiv(v, c) for m, v in terms.items()}


def normal_form(p: Poly, G: GroebnerBasis) -> Poly:
    """Remainder of multivariate division of ``p`` by the basis."""
    if G.basis and p.ring != G.ring:
        raise RingMismatch("polynomial and basis live in different rings")
    key = ORDERS[G.order]
    red = _Reducer([g.monic(G.order) for g in G.basis], key)
    return Poly._raw(p.ring, red.reduce(p.terms))


def s_polynomial(f: Poly, g: Poly, order="grevlex") -> Poly:
    fm, fc = f.lead(order)
    gm, gc = g.lead(order)
    l = _lcm(fm, gm)
    a = Poly.monomial(f.ring, _sub(l, fm), fdiv(1, fc))
    b = Poly.monomial(f.ring, _sub(l, gm), fdiv(1, gc))
    return a * f - b * g


def buchberger(ideal: Ideal, degree_cap: int = 20, order: str = "grevlex", verify: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis; raises :class:`CapExceeded` past ``degree_cap``.

    Pairs are processed by the normal strategy (smallest lcm first) and
    pruned with Buchberger's coprime and chain criteria.
    """
    key = ORDERS[order]
    gens = [g for g in ideal.generators if g]
    if not gens:
        return GroebnerBasis((), order, True)
    if degree_cap < max(g.total_degree() for g in gens):
        raise ValueError("degree_cap is below the largest generator degree")
    ring = ideal.ring
    G = [_monic(g.terms, key) for g in gens]
    LM = [max(g, key=key) for g in G]
    red = _Reducer([Poly._raw(ring, g) for g in G], key)
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}

    def pair_key(p):
        l = _lcm(LM[p[0]], LM[p[1]])
        return (key(l), p[1], p[0])

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, lj = LM[i], LM[j]
        l = _lcm(li, lj)
        if all(not (a and b) for a, b in zip(li, lj)):
            continue
        if any(
            k not in (i, j)
            and _divides(LM[k], l)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        s = _spoly_terms(G[i], G[j], li, lj, l)
        r = red.reduce(s)
        if not r:
            continue
        deg = max(sum(m) for m in r)
        if deg > degree_cap:
            raise CapExceeded(f"S-polynomial remainder of degree {deg} exceeds cap {degree_cap}")
        r = _monic(r, key)
        G.append(r)
        LM.append(max(r, key=key))
        red.add(Poly._raw(ring, r))
        n = len(G) - 1
        pairs.update((k, n) for k in range(n))
    basis = _reduce_basis(G, LM, key, ring)
    gb = GroebnerBasis(tuple(sorted(basis, key=lambda g: key(g.lead(order)[0]), reverse=True)), order, True)
    if verify:
        check_groebner(gb)
    return gb


def _spoly_terms(f, g, lf, lg, l):
    ef, eg = _sub(l, lf), _sub(l, lg)
    out = {}
    for m, c in f.items():
        out[tuple(a + b for a, b in zip(m, ef))] = c
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, eg))
        s = out.get(mm, 0) - c
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


def _reduce_basis(G, LM, key, ring):
    keep = []
    for i, lm in enumerate(LM):
        if any(j != i and _divides(LM[j], lm) and (LM[j] != lm or j < i) for j in range(len(LM))):
            continue
        keep.append(i)
    polys = [G[i] for i in keep]
    out = []
    for idx in range(len(polys)):
        others = [Poly._raw(ring, polys[k]) for k in range(len(polys)) if k != idx]
        red = _Reducer(others, key)
        p = polys[idx]
        lm = max(p, key=key)
        tail = {m: c for m, c in p.items() if m != lm}
        r = red.reduce(tail)
        r[lm] = p[lm]
        out.append(Poly._raw(ring, r))
        polys[idx] = r
    return out


def check_groebner(G: GroebnerBasis):
    """Assert that every S-polynomial of the basis reduces to zero."""
    key = ORDERS[G.order]
    red = _Reducer(list(G.basis), key)
    b = [g.terms for g in G.basis]
    lms = [max(g, key=key) for g in b]
    for j in range(len(b)):
        for i in range(j):
            if all(not (x and y) for x, y in zip(lms[i], lms[j])):
                continue
            s = _spoly_terms(b[i], b[j], lms[i], lms[j], _lcm(lms[i], lms[j]))
            if red.reduce(s):
                raise InternalCheckFailed("Groebner basis check failed: S-polynomial does not reduce to 0")
    if G.reduced:
        for i, lm in enumerate(lms):
            for j, g in enumerate(b):
                if i != j and any(_divides(lm, m) for m in g):
                    raise InternalCheckFailed("basis is not reduced")


class Smoothness(enum.Enum):
    SMOOTH = "Smooth"
    SINGULAR_WITNESS_UNKNOWN = "SingularWitnessUnknown"

    def __str__(self):
        return self.value


@dataclass
class SmoothnessResult:
    status: Smoothness
    powers: dict = field(default_factory=dict)
    basis: GroebnerBasis = None

    @property
    def smooth(self):
        return self.status is Smoothness.SMOOTH


def singular_locus_ideal(f_h: Poly) -> Ideal:
    return Ideal(tuple(f_h.partial(v) for v in f_h.ring))


def is_projectively_smooth(f_h: Poly, degree_cap: int = 20, order: str = "grevlex") -> SmoothnessResult:
    """Certify that the projective hypersurface ``f_h = 0`` has no singular point.

    Smooth is returned only when every variable has a pure power of degree at
    most ``degree_cap`` in the ideal of partial derivatives; that puts the
    irrelevant ideal in its radical, so the projective singular locus is empty.
    """
    if not f_h.is_homogeneous() or f_h.total_degree() < 2:
        raise HypothesisViolation("f_h must be homogeneous of degree >= 2")
    gb = buchberger(singular_locus_ideal(f_h), degree_cap, order)
    key = ORDERS[order]
    red = _Reducer(list(gb.basis), key)
    powers = {}
    for i, v in enumerate(f_h.ring):
        unit = tuple(1 if j == i else 0 for j in range(len(f_h.ring)))
        cur = {unit: 1}
        for k in range(1, degree_cap + 1):
            cur = red.reduce(cur)
            if not cur:
                powers[v] = k
                break
            cur = {tuple(a + b for a, b in zip(m, unit)): c for m, c in cur.items()}
        else:
            powers[v] = None
    ok = all(k is not None for k in powers.values())
    status = Smoothness.SMOOTH if ok else Smoothness.SINGULAR_WITNESS_UNKNOWN
    return SmoothnessResult(status, powers, gb)
