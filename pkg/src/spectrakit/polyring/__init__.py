"""Exact polynomial and scalar arithmetic."""

from .poly import (
    ORDERS,
    Poly,
    divides,
    exact_div,
    grevlex_key,
    grlex_key,
    multiplicity,
    reduce_mod_sphere,
)
from .scalars import (
    QuadExt,
    canon,
    format_scalar,
    is_rational,
    rational_sqrt,
    sqrt_in_field,
    to_rational,
)
from .textfmt import format_poly, parse_poly, parse_scalar, read_poly_file, write_poly_text

__all__ = [
    "ORDERS",
    "Poly",
    "QuadExt",
    "canon",
    "divides",
    "exact_div",
    "format_poly",
    "format_scalar",
    "grevlex_key",
    "grlex_key",
    "is_rational",
    "multiplicity",
    "parse_poly",
    "parse_scalar",
    "rational_sqrt",
    "read_poly_file",
    "reduce_mod_sphere",
    "sqrt_in_field",
    "to_rational",
    "write_poly_text",
]
