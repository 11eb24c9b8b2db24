"""Exact construction and verification of Belyi maps, plus covering census tools."""

from belyi.exact import (
    INF,
    AlgebraicSet,
    MobiusMap,
    RatPoly,
    mobius_apply,
    mobius_three_point,
    poly_compose,
    poly_critical_values,
    poly_derivative,
    poly_gcd,
    pushforward_set,
    rational_roots,
    resultant,
    squarefree_part,
)

__version__ = "0.1.0"
