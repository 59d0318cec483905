"""Exact arithmetic foundation: polynomials over Q, multiquadratic towers, matrices mod n."""

from divlab.arith.matmod import Mat2Mod, mat_det, mat_mul, mat_order, mat_pow
from divlab.arith.multiquad import MultiQuadElement, Tower, mq_mul
from divlab.arith.polynomial import UniPoly, poly_discriminant, poly_gcd, resultant

__all__ = [
    "Mat2Mod", "mat_det", "mat_mul", "mat_order", "mat_pow",
    "MultiQuadElement", "Tower", "mq_mul",
    "UniPoly", "poly_discriminant", "poly_gcd", "resultant",
]
