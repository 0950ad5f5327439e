"""Semiring and matrix algebra."""

from omega_pushdown.algebra.matrix import SqMatrix, mat_mul, mat_star, nfa_buchi_lasso_accept
from omega_pushdown.algebra.semiring import (
    BOOLEAN,
    INF,
    NAT_INF,
    Semiring,
    SemiringValue,
    get_semiring,
)

__all__ = [
    "BOOLEAN",
    "INF",
    "NAT_INF",
    "Semiring",
    "SemiringValue",
    "SqMatrix",
    "get_semiring",
    "mat_mul",
    "mat_star",
    "nfa_buchi_lasso_accept",
]
