"""Weierstrass curves, division polynomials and multiplication-by-m maps."""

from divlab.curves.curve import Curve
from divlab.curves.division_poly import (
    AbscissaMap,
    DivisionPoly,
    abscissa_map,
    division_poly,
    preimage_poly,
    schmidt_poly,
)

__all__ = [
    "Curve", "AbscissaMap", "DivisionPoly",
    "abscissa_map", "division_poly", "preimage_poly", "schmidt_poly",
]
