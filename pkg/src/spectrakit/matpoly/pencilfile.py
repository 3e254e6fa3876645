"""Reader and writer for the pencil text format.

Example::

    # the 2-dimensional unit ball
    vars: x1 x2
    r: 2
    constant: identity
    x1:
      1 0
      0 -1
    x2:
      0 1
      1 0

Entries are ``p``, ``p/q`` or ``a+b*sqrt(D)``; whitespace separates entries,
so an entry must not contain spaces.  ``constant`` may also be an r x r grid.
"""

from __future__ import annotations

from ..errors import InputError
from ..polyring import format_scalar, parse_scalar
from . import linalg
from .pencil import SymPencil


def format_pencil(p: SymPencil, comment=None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"vars: {' '.join(p.var_names)}")
    lines.append(f"r: {p.size}")

    def grid(m):
        return [
            "  " + " ".join(format_scalar(x) for x in row) if row else "  "
            for row in m
        ]

    if p.is_monic:
        lines.append("constant: identity")
    else:
        lines.append("constant:")
        lines.extend(grid(p.constant))
    for v, a in zip(p.var_names, p.coefficients):
        lines.append(f"{v}:")
        lines.extend(grid(a))
    return "\n".join(lines) + "\n"


def parse_pencil(text: str, source=None) -> SymPencil:
    raw = text.splitlines()
    items = []
    for no, line in enumerate(raw, 1):
        body = line.split("#", 1)[0].rstrip()
        if body.strip():
            items.append((no, body))
    fields = {}
    order = []
    i = 0
    while i < len(items):
        no, body = items[i]
        stripped = body.strip()
        if ":" not in stripped or stripped.startswith(("-", "+")):
            raise InputError(f"expected 'key:' line, got {stripped!r}", no, source)
        key, _, rest = stripped.partition(":")
        key, rest = key.strip(), rest.strip()
        if key in fields:
            raise InputError(f"duplicate field {key!r}", no, source)
        i += 1
        grid_lines = []
        while i < len(items) and not _is_key_line(items[i][1]):
            grid_lines.append(items[i])
            i += 1
        fields[key] = (no, rest, grid_lines)
        order.append(key)

    def need(key):
        if key not in fields:
            raise InputError(f"missing field {key!r}", None, source)
        return fields[key]

    no, rest, _ = need("vars")
    var_names = tuple(rest.split())
    if len(set(var_names)) != len(var_names):
        raise InputError("duplicate variable names", no, source)
    no, rest, _ = need("r")
    try:
        r = int(rest)
    except ValueError:
        raise InputError(f"r must be an integer, got {rest!r}", no, source) from None
    if r < 0:
        raise InputError("r must be non-negative", no, source)

    def read_grid(key):
        no, rest, glines = fields[key]
        if rest:
            raise InputError(f"unexpected text after '{key}:'", no, source)
        if len(glines) != r:
            raise InputError(f"{key}: expected {r} rows, found {len(glines)}", no, source)
        rows = []
        for gno, gline in glines:
            toks = gline.split()
            if len(toks) != r:
                raise InputError(f"{key}: expected {r} entries, found {len(toks)}", gno, source)
            row = []
            for tok in toks:
                try:
                    row.append(parse_scalar(tok))
                except InputError as exc:
                    raise InputError(f"bad entry {tok!r}: {exc}", gno, source) from None
            rows.append(tuple(row))
        return tuple(rows)

    no, rest, glines = need("constant")
    if rest == "identity" and not glines:
        constant = linalg.identity(r)
    elif rest:
        raise InputError("constant must be 'identity' or a grid", no, source)
    else:
        constant = read_grid("constant")
    coefs = []
    for v in var_names:
        if v not in fields:
            raise InputError(f"missing coefficient grid for variable {v!r}", None, source)
        coefs.append(read_grid(v))
    extra = [k for k in order if k not in ("vars", "r", "constant") + var_names]
    if extra:
        raise InputError(f"unknown field {extra[0]!r}", fields[extra[0]][0], source)
    try:
        return SymPencil(var_names, constant, tuple(coefs))
    except ValueError as exc:
        raise InputError(str(exc), None, source) from None


def _is_key_line(body):
    s = body.strip()
    head = s.split(":", 1)[0]
    return ":" in s and head.replace("_", "").isalnum() and not head[:1].isdigit()


def read_pencil(path) -> SymPencil:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read pencil file: {exc.strerror}", None, str(path)) from None
    return parse_pencil(text, source=str(path))


def write_pencil(p: SymPencil, path, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pencil(p, comment))
