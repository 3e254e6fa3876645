"""Text format for polynomials and scalars.

Polynomials are written as sums of terms, e.g. ``10 - 3*x^2 - 6*y - x^2*y``.
Coefficients are ``p`` or ``p/q``; irrational coefficients are written in
parentheses, ``(1+2*sqrt(2))*x``.  The parser accepts general expressions in
``+ - * / ^``, parentheses and ``sqrt(<rational>)`` and evaluates them exactly,
so everything the printer emits parses back to the identical polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import InputError
from .poly import Poly, lex_key
from .scalars import QuadExt, format_scalar, is_rational, sqrt_in_field

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for m in sorted(f.terms, key=lex_key, reverse=True):
        c = f.terms[m]
        mon = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(f.ring, m) if k
        )
        if is_rational(c):
            neg = c < 0
            mag = -c if neg else c
            cs = format_scalar(mag)
        else:
            neg = False
            cs = f"({format_scalar(c)})"
        if not mon:
            body = cs
        elif cs == "1":
            body = mon
        else:
            body = f"{cs}*{mon}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"unexpected character {text[pos:pos + 1]!r} at column {pos + 1}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise InputError(f"expected {want}, found {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.peek()[0] is not None:
            raise InputError(f"trailing input at token {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise InputError("division is only allowed by nonzero constants")
                val = val / rhs.constant_value()
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            k = self.take("num")[1]
            if neg:
                raise InputError("negative exponents are not allowed")
            base = base ** k
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Poly.const(self.ring, val)
        if kind == "name":
            self.take()
            if val == "sqrt":
                self.take("op", "(")
                arg = self.expr()
                self.take("op", ")")
                if not arg.is_constant() or not is_rational(arg.constant_value()):
                    raise InputError("sqrt() needs a rational constant argument")
                d = Fraction(arg.constant_value())
                if d < 0:
                    raise InputError("sqrt() of a negative number is not a real scalar")
                r = sqrt_in_field(d)
                return Poly.const(self.ring, r if r is not None else QuadExt(0, 1, d))
            if val not in self.ring:
                raise InputError(f"unknown variable {val!r} (ring is {', '.join(self.ring) or 'empty'})")
            return Poly.var(self.ring, val)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise InputError(f"unexpected token {val!r}")


def infer_ring(text):
    names = {val for kind, val in _tokenize(text) if kind == "name" and val != "sqrt"}
    return tuple(sorted(names))


def parse_poly(text: str, ring=None) -> Poly:
    """Parse a polynomial; the ring defaults to the sorted variable names that occur."""
    if ring is None:
        ring = infer_ring(text)
    return _Parser(text, tuple(ring)).parse()


def parse_scalar(text: str):
    p = _Parser(text, ()).parse()
    return p.constant_value()


def read_poly_file(path):
    """Polynomial file: optional ``vars: a b c`` header, then the expression (may span lines)."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read polynomial file: {exc.strerror}", None, str(path)) from None
    ring = None
    body = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars:"):
            ring = tuple(line[5:].split())
            continue
        body.append(line)
    if not body:
        raise InputError("no polynomial found", source=str(path))
    try:
        return parse_poly(" ".join(body), ring)
    except InputError as exc:
        raise InputError(str(exc), source=str(path)) from None


def write_poly_text(f: Poly) -> str:
    return f"vars: {' '.join(f.ring)}\n{format_poly(f)}\n"
