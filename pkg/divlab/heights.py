"""
Logarithmic Weil heights over Q and over multiquadratic towers.

Conventions:
    log⁺β = max(0, log β), log⁺0 = 0
    h(a/b) = log max(|a|, b) for a reduced fraction
    h(f)   = log max |aᵢ| of the coprime integer normalization f̃
    h(α)   = (log |lc(f̃_α)| + Σ log⁺|α_j|) / deg α over the complex conjugates α_j

Heights are floats (target relative accuracy 1e-12). Logs of integers go
through ``log_abs_int`` so that huge coefficients do not overflow.
"""

import logging
import math
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

import numpy as np

from divlab.arith.multiquad import MultiQuadElement
from divlab.arith.polynomial import UniPoly
from divlab.errors import MathDomainError
from divlab.utils.math_helpers import log_abs_int, log_plus

logger = logging.getLogger(__name__)

LogHeight = float


def log_height_rational(q: Union[int, Fraction]) -> LogHeight:
    q = Fraction(q)
    if q == 0:
        return 0.0
    return log_abs_int(max(abs(q.numerator), q.denominator))


def log_height_point(coords: Sequence[Union[int, Fraction]]) -> LogHeight:
    """h([x₀:…:xₙ]) = log max |xᵢ| after scaling to coprime integers."""
    values = [Fraction(q) for q in coords]
    if not any(values):
        raise MathDomainError("projective point with all coordinates zero")
    den = math.lcm(*(q.denominator for q in values))
    ints = [q.numerator * (den // q.denominator) for q in values]
    g = math.gcd(*ints)
    return log_abs_int(max(abs(n) for n in ints) // g)


def log_height_poly(f: UniPoly) -> LogHeight:
    """h(f̃) = log⁺ max |aᵢ| after normalising to coprime integer coefficients."""
    if f.is_zero():
        raise MathDomainError("height of the zero polynomial")
    _, prim = f.content_and_primitive()
    return log_abs_int(max(abs(c) for c in prim.integer_coefficients()))


def log_mahler_measure(f: UniPoly) -> float:
    """log M(f̃) = log |lc| + Σ log⁺|root|, roots found numerically."""
    if f.is_zero():
        raise MathDomainError("Mahler measure of the zero polynomial")
    _, prim = f.content_and_primitive()
    coeffs = prim.integer_coefficients()
    value = log_abs_int(coeffs[-1])
    if prim.degree >= 1:
        # numpy wants highest degree first
        roots = np.roots([float(c) for c in reversed(coeffs)])
        value += float(sum(log_plus(abs(r)) for r in roots))
    return value


def log_height_multiquad(x: MultiQuadElement) -> LogHeight:
    """Height from the explicit conjugates; rational elements delegate to the rational height."""
    if x.is_rational():
        return log_height_rational(x.rational_value())
    conjugates = x.conjugates()
    minpoly = x.minimal_polynomial()
    _, prim = minpoly.content_and_primitive()
    lead = prim.integer_coefficients()[-1]
    total = log_abs_int(lead) + sum(log_plus(abs(c.to_complex())) for c in conjugates)
    return max(0.0, total / len(conjugates))


class MinPolyBoundCheck(NamedTuple):
    h_alpha: LogHeight
    h_falpha: LogHeight
    holds: bool


def check_min_poly_bound(x: MultiQuadElement) -> MinPolyBoundCheck:
    """h(α) ≤ h(f_α) + log 2 for an irrational tower element."""
    if x.is_rational():
        raise MathDomainError("element must have degree at least 2")
    h_alpha = log_height_multiquad(x)
    h_falpha = log_height_poly(x.minimal_polynomial())
    holds = h_alpha <= h_falpha + math.log(2)
    if not holds:
        logger.warning(f"⚠️ min-poly bound violated for {x}: {h_alpha} > {h_falpha} + log 2")
    return MinPolyBoundCheck(h_alpha, h_falpha, holds)


class GelfandCheck(NamedTuple):
    h_monic: LogHeight
    h_primitive: LogHeight
    log_mahler: float
    degree: int
    holds: bool


def check_gelfand(f: UniPoly, tolerance: float = 1e-9) -> GelfandCheck:
    """
    Coefficient chain for a minimal polynomial:

        h(f_α) ≤ h(f̃_α) + deg f̃_α   and   h(f̃_α) ≤ log M(f̃_α) + deg·log 2

    h(f_α) is the archimedean log⁺ max coefficient of the monic form.
    """
    if f.degree < 1:
        raise MathDomainError("degree too small")
    monic = f.monic()
    h_monic = max(log_height_rational(c) if c.denominator == 1 else
                  log_plus(float(abs(c))) for c in monic.coefficients)
    h_prim = log_height_poly(f)
    log_m = log_mahler_measure(f)
    d = f.degree
    holds = (h_monic <= h_prim + d + tolerance
             and h_prim <= log_m + d * math.log(2) + tolerance)
    return GelfandCheck(h_monic, h_prim, log_m, d, holds)
