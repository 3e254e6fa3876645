"""Polynomial matrices and symmetric pencils."""

from . import linalg
from .pencil import (
    SymPencil,
    common_kernel,
    common_kernel_reduce,
    generic_rank,
    normalized_det,
    pencil_to_matrix,
)
from .pencilfile import format_pencil, parse_pencil, read_pencil, write_pencil
from .polymatrix import PolyMatrix, adjugate, adjugate_column, bareiss_det, cofactor, det, minors


def eval_at(m: PolyMatrix, point):
    return m.eval_at(point)


def rank_at(m: PolyMatrix, point):
    return m.rank_at(point)


__all__ = [
    "PolyMatrix",
    "SymPencil",
    "adjugate",
    "adjugate_column",
    "bareiss_det",
    "cofactor",
    "common_kernel",
    "common_kernel_reduce",
    "det",
    "eval_at",
    "format_pencil",
    "generic_rank",
    "linalg",
    "minors",
    "normalized_det",
    "parse_pencil",
    "pencil_to_matrix",
    "rank_at",
    "read_pencil",
    "write_pencil",
]
