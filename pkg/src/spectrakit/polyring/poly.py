"""Sparse multivariate polynomials with exact coefficients.

A :class:`Poly` is a ring (an ordered tuple of variable names) plus a map from
exponent tuples to nonzero coefficients.  Coefficients are rationals or
:class:`~spectrakit.polyring.scalars.QuadExt` values.  The single internal
monomial order is graded reverse lexicographic; text output uses lex order.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct

from ..errors import NotDivisible, RingMismatch
from .scalars import QuadExt, canon, fdiv, is_rational


def grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def grlex_key(e):
    return (sum(e), e)


def lex_key(e):
    return e


ORDERS = {"grevlex": grevlex_key, "grlex": grlex_key, "lex": lex_key}


def _is_scalar(c):
    return is_rational(c) or isinstance(c, QuadExt)


class Poly:
    """Immutable polynomial over Q (or a quadratic extension of Q)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        ring = tuple(ring)
        if len(set(ring)) != len(ring):
            raise ValueError(f"duplicate variable names in ring {ring}")
        clean = {}
        for mon, c in (terms or {}).items():
            mon = tuple(int(x) for x in mon)
            if len(mon) != len(ring) or any(x < 0 for x in mon):
                raise ValueError(f"bad exponent vector {mon} for ring {ring}")
            c = canon(c) if is_rational(c) else c
            if c:
                clean[mon] = clean.get(mon, 0) + c
        self.ring = ring
        self.terms = {m: canon(c) for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = object.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ring):
        return cls._raw(tuple(ring), {})

    @classmethod
    def const(cls, ring, c):
        ring = tuple(ring)
        c = canon(c) if is_rational(c) else c
        return cls._raw(ring, {(0,) * len(ring): c} if c else {})

    @classmethod
    def var(cls, ring, name):
        ring = tuple(ring)
        if name not in ring:
            raise KeyError(f"unknown variable {name!r} in ring {ring}")
        e = tuple(1 if v == name else 0 for v in ring)
        return cls._raw(ring, {e: 1})

    @classmethod
    def gens(cls, ring):
        return tuple(cls.var(ring, v) for v in ring)

    @classmethod
    def monomial(cls, ring, exps, c=1):
        return cls(ring, {tuple(exps): c})

    # -- basic queries ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        """The value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.ring), 0)

    def total_degree(self):
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name):
        i = self.ring.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def involves(self, name):
        i = self.ring.index(name)
        return any(m[i] for m in self.terms)

    def lead(self, order="grevlex"):
        """(monomial, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = ORDERS[order] if isinstance(order, str) else order
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def coefficient(self, mon):
        return self.terms.get(tuple(mon), 0)

    def coefficients_field(self):
        """Radicand tuple of the largest coefficient field that occurs."""
        best = ()
        for c in self.terms.values():
            if isinstance(c, QuadExt) and len(c.field) > len(best):
                best = c.field
        return best

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"rings differ: {self.ring} vs {other.ring}")
            return other
        if _is_scalar(other):
            return Poly.const(self.ring, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = canon(s) if type(s) is Fraction else s
                else:
                    del terms[m]
        return Poly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        if not c:
            return Poly._raw(self.ring, {})
        out = {}
        for m, v in self.terms.items():
            p = v * c
            out[m] = canon(p) if type(p) is Fraction else p
        return Poly._raw(self.ring, out)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other.terms) == 1:
            (m2, c2), = other.terms.items()
            return self._mul_term(m2, c2)
        if len(self.terms) == 1:
            (m1, c1), = self.terms.items()
            return other._mul_term(m1, c1)
        out = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw(self.ring, {m: canon(c) if type(c) is Fraction else c
                                     for m, c in out.items() if c})

    __rmul__ = __mul__

    def _mul_term(self, mon, c):
        out = {}
        for m, v in self.terms.items():
            p = v * c
            out[tuple(a + b for a, b in zip(m, mon))] = canon(p) if type(p) is Fraction else p
        return Poly._raw(self.ring, out)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            return Poly._raw(self.ring, {m: fdiv(c, other) for m, c in self.terms.items()})
        if isinstance(other, Poly):
            return exact_div(self, other)
        return NotImplemented

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .textfmt import format_poly

        return f"Poly({format_poly(self)!r}, ring={self.ring})"

    def __str__(self):
        from .textfmt import format_poly

        return format_poly(self)

    # -- calculus and substitution ---------------------------------------
    def partial(self, name):
        """Formal partial derivative with respect to ``name``."""
        if name not in self.ring:
            raise KeyError(f"unknown variable {name!r} in ring {self.ring}")
        i = self.ring.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Poly._raw(self.ring, out)

    def eval(self, point):
        """Exact value at ``point`` (a sequence in ring order, or a name->value mapping)."""
        if isinstance(point, dict):
            point = [point[v] for v in self.ring]
        point = list(point)
        if len(point) != len(self.ring):
            raise ValueError(f"point has {len(point)} coordinates, ring has {len(self.ring)}")
        powers = [{} for _ in point]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = point[i] ** k
            return cache[k]

        total = 0
        for m, c in self.terms.items():
            t = c
            for i, k in enumerate(m):
                if k:
                    t = t * pw(i, k)
            total = total + t
        return canon(total) if type(total) is Fraction else total

    def subs(self, mapping, ring=None):
        """Substitute polynomials (in ``ring``, default: own ring) for variables."""
        ring = tuple(ring) if ring is not None else self.ring
        images = []
        for v in self.ring:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, Poly):
                    img = Poly.const(ring, img)
                elif img.ring != ring:
                    raise RingMismatch(f"image of {v} lives in {img.ring}, expected {ring}")
            else:
                if v not in ring:
                    raise RingMismatch(f"variable {v} is not substituted and missing from {ring}")
                img = Poly.var(ring, v)
            images.append(img)
        cache = [dict() for _ in images]

        def pw(i, k):
            if k not in cache[i]:
                cache[i][k] = images[i] ** k
            return cache[i][k]

        total = Poly.zero(ring)
        for m, c in self.terms.items():
            t = Poly.const(ring, c)
            for i, k in enumerate(m):
                if k:
                    t = t * pw(i, k)
            total = total + t
        return total

    def rename(self, ring):
        """Same terms read in a ring of the same arity with new variable names."""
        ring = tuple(ring)
        if len(ring) != len(self.ring):
            raise RingMismatch("rename needs a ring of the same arity")
        return Poly._raw(ring, dict(self.terms))

    def extend_ring(self, ring):
        """Embed into a ring whose variables are a superset of ours."""
        ring = tuple(ring)
        idx = []
        for v in self.ring:
            if v not in ring:
                raise RingMismatch(f"variable {v} missing from target ring {ring}")
            idx.append(ring.index(v))
        out = {}
        for m, c in self.terms.items():
            e = [0] * len(ring)
            for i, k in zip(idx, m):
                e[i] = k
            out[tuple(e)] = c
        return Poly._raw(ring, out)

    def restrict_ring(self, ring):
        """Drop variables that do not occur; raises if a dropped variable occurs."""
        ring = tuple(ring)
        idx = [self.ring.index(v) for v in ring]
        out = {}
        for m, c in self.terms.items():
            if sum(m) != sum(m[i] for i in idx):
                raise RingMismatch("polynomial involves variables outside the target ring")
            out[tuple(m[i] for i in idx)] = c
        return Poly._raw(ring, out)

    def homogenize(self, new_var):
        """Homogenize with ``new_var`` placed first in the ring."""
        if new_var in self.ring:
            raise ValueError(f"{new_var!r} already in ring")
        d = self.total_degree()
        ring = (new_var,) + self.ring
        return Poly._raw(ring, {(d - sum(m),) + m: c for m, c in self.terms.items()})

    def dehomogenize(self, name):
        """Set ``name`` to 1 and drop it from the ring."""
        i = self.ring.index(name)
        ring = self.ring[:i] + self.ring[i + 1:]
        out = {}
        for m, c in self.terms.items():
            e = m[:i] + m[i + 1:]
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(ring, out)

    def homogeneous_part(self, d):
        return Poly._raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def monic(self, order="grevlex"):
        if not self.terms:
            return self
        _, c = self.lead(order)
        return self / c if c != 1 else self

    def linear_coefficients(self):
        """(constant, [coefficient of each variable]) for a polynomial of degree <= 1."""
        if self.total_degree() > 1:
            raise ValueError("polynomial is not affine-linear")
        n = len(self.ring)
        const = self.terms.get((0,) * n, 0)
        coefs = []
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            coefs.append(self.terms.get(e, 0))
        return const, coefs


def exact_div(f: Poly, g: Poly) -> Poly:
    """Quotient ``q`` with ``f == q*g``; raises :class:`NotDivisible` otherwise.

    Long division with respect to grevlex.  A single polynomial is a Groebner
    basis of the ideal it generates, so the first leading term of the running
    dividend not divisible by ``lt(g)`` proves that ``g`` does not divide ``f``.
    """
    if f.ring != g.ring:
        raise RingMismatch(f"rings differ: {f.ring} vs {g.ring}")
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    gm, gc = g.lead()
    if len(g.terms) == 1:
        out = {}
        for m, c in f.terms.items():
            e = tuple(a - b for a, b in zip(m, gm))
            if any(x < 0 for x in e):
                raise NotDivisible("monomial divisor does not divide")
            out[e] = fdiv(c, gc)
        return Poly._raw(f.ring, out)
    rem = dict(f.terms)
    quot = {}
    gterms = list(g.terms.items())
    while rem:
        m = max(rem, key=grevlex_key)
        c = rem[m]
        e = tuple(a - b for a, b in zip(m, gm))
        if any(x < 0 for x in e):
            raise NotDivisible("nonzero remainder")
        qc = fdiv(c, gc)
        quot[e] = qc
        for gm2, gc2 in gterms:
            mm = tuple(a + b for a, b in zip(e, gm2))
            s = rem.get(mm, 0) - qc * gc2
            if s:
                rem[mm] = canon(s) if type(s) is Fraction else s
            else:
                rem.pop(mm, None)
    return Poly._raw(f.ring, quot)


def divides(g: Poly, f: Poly) -> bool:
    try:
        exact_div(f, g)
    except NotDivisible:
        return False
    return True


def multiplicity(f: Poly, h: Poly):
    """(m, q) with ``f == q*h**m`` and ``h`` not dividing ``q``; ``f`` must be nonzero."""
    if not f.terms:
        raise ValueError("multiplicity of a factor in the zero polynomial is infinite")
    if h.is_constant():
        raise ValueError("h must be nonconstant")
    m, q = 0, f
    while True:
        try:
            q2 = exact_div(q, h)
        except NotDivisible:
            return m, q
        m, q = m + 1, q2


def reduce_mod_sphere(f: Poly, x0: str, q: Poly):
    """Return (a, b), free of ``x0``, with ``f == a*x0 + b`` modulo ``x0^2 - q``."""
    if q.ring != f.ring:
        raise RingMismatch("q must live in the ring of f")
    if q.involves(x0):
        raise ValueError("q must not involve the distinguished variable")
    i = f.ring.index(x0)
    by_power = {}
    for m, c in f.terms.items():
        rest = m[:i] + (0,) + m[i + 1:]
        by_power.setdefault(m[i], {})[rest] = c
    qpow = {0: Poly.const(f.ring, 1)}
    a = Poly.zero(f.ring)
    b = Poly.zero(f.ring)
    for k, terms in by_power.items():
        part = Poly(f.ring, terms)
        half = k // 2
        if half not in qpow:
            qpow[half] = q ** half
        part = part * qpow[half]
        if k % 2:
            a = a + part
        else:
            b = b + part
    return a, b


def total_terms(polys) -> int:
    return sum(len(p.terms) for p in polys)


def all_monomials(nvars, degree):
    """Exponent tuples of total degree exactly ``degree``."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for e in _iproduct(range(degree + 1), repeat=nvars):
        if sum(e) == degree:
            out.append(e)
    return out
