"""Exact scalars: rationals and elements of quadratic extensions Q(sqrt D).

Rationals are plain ``int`` / ``fractions.Fraction`` values.  Integral
fractions are collapsed to ``int`` by :func:`canon` because integer
arithmetic is much cheaper than ``Fraction`` arithmetic and most of the
matrices handled here have integer data.

:class:`QuadExt` represents ``a + b*sqrt(D)``.  ``D`` is always rational, but
the components ``a`` and ``b`` may themselves live in a quadratic extension,
which gives towers Q(sqrt d1)(sqrt d2) of depth two.  Such towers are only
needed when a pencil with irrational data (for example sqrt(2) entries) is
evaluated at a point whose coordinates live in a second quadratic field.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from ..errors import MixedRadicand, UnsupportedField

Rational = (int, Fraction)


def canon(c):
    """Return ``c`` with integral fractions turned into ints."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def is_rational(c) -> bool:
    return isinstance(c, Rational) and not isinstance(c, bool)


def to_rational(c):
    """Return ``c`` as a rational number, or raise if it has an irrational part."""
    if is_rational(c):
        return canon(c)
    if isinstance(c, QuadExt) and not c.b:
        return to_rational(c.a)
    raise UnsupportedField(f"{c} is not rational")


def rational_sqrt(q):
    """Exact square root of a non-negative rational square, else ``None``."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return canon(Fraction(rn, rd))
    return None


def field_of(c) -> tuple:
    """Tuple of radicands describing the smallest tower containing ``c``'s type."""
    if isinstance(c, QuadExt):
        return c.field
    return ()


@lru_cache(maxsize=None)
def _is_square_in(base: tuple, d: Fraction) -> bool:
    if not base:
        return rational_sqrt(d) is not None
    if len(base) == 1:
        # (a + b sqrt(e))^2 is rational only when a = 0 or b = 0.
        return rational_sqrt(d) is not None or rational_sqrt(d / base[0]) is not None
    raise UnsupportedField("quadratic towers deeper than two steps are not supported")


def sqrt_in_field(d, base: tuple = ()):
    """An element of the field described by ``base`` squaring to rational ``d``, or None."""
    d = Fraction(d)
    r = rational_sqrt(d)
    if r is not None:
        return r
    if len(base) == 1:
        s = rational_sqrt(d / base[0])
        if s is not None:
            return QuadExt(0, s, base[0])
    return None


def _mk(a, b, d, base):
    a = canon(a)
    b = canon(b)
    if not b:
        return a
    obj = object.__new__(QuadExt)
    obj.a, obj.b, obj.d, obj.base = a, b, d, base
    return obj


class QuadExt:
    """The number ``a + b*sqrt(d)`` in the quadratic extension ``base(sqrt d)``.

    ``d`` must be a rational which is not a square in the base field; ``d == 0``
    is accepted and degenerates to the base field.  Arithmetic results with a
    vanishing ``b`` collapse to their ``a`` component.
    """

    __slots__ = ("a", "b", "d", "base")

    def __init__(self, a, b, d, base: tuple = ()):
        d = Fraction(d)
        base = tuple(Fraction(x) for x in base)
        for comp in (a, b):
            f = field_of(comp)
            if f != base[: len(f)]:
                raise MixedRadicand(f"component {comp!r} does not lie in base field {base}")
        if d == 0:
            b = 0
        elif _is_square_in(base, d):
            raise ValueError(f"radicand {d} is a square in the base field {base or 'Q'}")
        self.a = canon(a)
        self.b = canon(b)
        self.d = d
        self.base = base

    @property
    def field(self) -> tuple:
        return self.base + (self.d,)

    # -- coercion ---------------------------------------------------------
    def _rel(self, other):
        """'same', 'scalar' (other lies in a subfield) or 'up' (self lies in other's subfield)."""
        if is_rational(other):
            return "scalar"
        if isinstance(other, QuadExt):
            fs, fo = self.field, other.field
            if fs == fo:
                return "same"
            if len(fo) < len(fs) and fs[: len(fo)] == fo:
                return "scalar"
            if len(fs) < len(fo) and fo[: len(fs)] == fs:
                return "up"
            raise MixedRadicand(f"cannot combine elements of Q{fs} and Q{fo}")
        return None

    def __add__(self, other):
        rel = self._rel(other)
        if rel == "same":
            return _mk(self.a + other.a, self.b + other.b, self.d, self.base)
        if rel == "scalar":
            return _mk(self.a + other, self.b, self.d, self.base)
        if rel == "up":
            return other + self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _mk(-self.a, -self.b, self.d, self.base)

    def __sub__(self, other):
        rel = self._rel(other)
        if rel is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        rel = self._rel(other)
        if rel == "same":
            a, b, c, e = self.a, self.b, other.a, other.b
            return _mk(a * c + self.d * (b * e), a * e + b * c, self.d, self.base)
        if rel == "scalar":
            return _mk(self.a * other, self.b * other, self.d, self.base)
        if rel == "up":
            return other * self
        return NotImplemented

    __rmul__ = __mul__

    def norm(self):
        """``a^2 - d b^2``, the product with the conjugate (lies in the base field)."""
        return canon(self.a * self.a - self.d * (self.b * self.b))

    def conj(self):
        return _mk(self.a, -self.b, self.d, self.base)

    def inv(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in a quadratic extension")
        return _mk(_div(self.a, n), _div(-self.b, n), self.d, self.base)

    def __truediv__(self, other):
        rel = self._rel(other)
        if rel == "same" or rel == "up":
            return self * other.inv()
        if rel == "scalar":
            if not other:
                raise ZeroDivisionError("division by zero")
            return _mk(_div(self.a, other), _div(self.b, other), self.d, self.base)
        return NotImplemented

    def __rtruediv__(self, other):
        if self._rel(other) is None:
            return NotImplemented
        return self.inv() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result, base = 1, self
        while k:
            if k & 1:
                result = base * result
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        try:
            rel = self._rel(other)
        except MixedRadicand:
            return False
        if rel == "same":
            return self.a == other.a and self.b == other.b
        if rel == "scalar":
            return not self.b and self.a == other
        if rel == "up":
            return other == self
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.field))

    def __repr__(self):
        if self.base:
            return f"QuadExt({self.a!r}, {self.b!r}, {self.d}, base={self.base})"
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)

    def is_real(self) -> bool:
        """True when every radicand in the tower is positive."""
        return all(x > 0 for x in self.field) or not self.b


def _div(x, y):
    """Exact field division for any pair of supported scalars."""
    if is_rational(x) and is_rational(y):
        if not y:
            raise ZeroDivisionError("division by zero")
        return canon(Fraction(x) / y)
    return x / y


def fdiv(x, y):
    return _div(x, y)


def inv(x):
    return _div(1, x)


def format_scalar(c) -> str:
    """Compact text form: ``3``, ``-1/2``, ``1+2*sqrt(5)``, ``-sqrt(2)``."""
    if is_rational(c):
        c = Fraction(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    if not c.b:
        return format_scalar(c.a)
    d = Fraction(c.d)
    ds = str(d.numerator) if d.denominator == 1 else f"{d.numerator}/{d.denominator}"
    root = f"sqrt({ds})"
    if is_rational(c.b):
        b = Fraction(c.b)
        if b == 1:
            bpart, neg = root, False
        elif b == -1:
            bpart, neg = root, True
        else:
            bpart, neg = f"{format_scalar(abs(b))}*{root}", b < 0
    else:
        bpart, neg = f"({format_scalar(c.b)})*{root}", False
    if not c.a:
        return ("-" if neg else "") + bpart
    apart = format_scalar(c.a) if is_rational(c.a) else f"({format_scalar(c.a)})"
    return f"{apart}{'-' if neg else '+'}{bpart}"
