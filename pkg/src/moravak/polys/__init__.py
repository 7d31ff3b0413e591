"""Polynomial arithmetic over F_p, Groebner bases and fixed-point elimination."""

from .fixed_point import residual, solve_fixed_point
from .groebner import (
    GroebnerBasis,
    Infinite,
    audit,
    buchberger,
    is_reduced,
    normal_form,
    quotient_dimension,
    reduce_by,
    s_polynomial,
    standard_monomials,
)
from .ring import CoefficientSpec, Polynomial, PolyRing, is_prime

__all__ = [
    "CoefficientSpec", "GroebnerBasis", "Infinite", "PolyRing", "Polynomial",
    "audit", "buchberger", "is_prime", "is_reduced", "normal_form",
    "quotient_dimension", "reduce_by", "residual", "s_polynomial",
    "solve_fixed_point", "standard_monomials",
]
