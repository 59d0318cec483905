"""
Division polynomials, multiplication-by-m abscissa maps and their height bounds.

Normalization: Ψ_m = ψ_m for odd m and Ψ_m = ψ_m/(2y) for even m, so Ψ_2 = 1
and every Ψ_m is a polynomial in x alone. Leading coefficients are kept
(Ψ_3 = 3x⁴ + ...), never made monic.

Recurrence in terms of Ψ with F = x³ + bx + c, for n ≥ 5:
    n = 2k+1, k even:  Ψ_n = 16F²·Ψ_{k+2}Ψ_k³ − Ψ_{k−1}Ψ_{k+1}³
    n = 2k+1, k odd:   Ψ_n = Ψ_{k+2}Ψ_k³ − 16F²·Ψ_{k−1}Ψ_{k+1}³
    n = 2k:            Ψ_n = Ψ_k(Ψ_{k+2}Ψ_{k−1}² − Ψ_{k−2}Ψ_{k+1}²)
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Union

from divlab.arith.polynomial import UniPoly
from divlab.curves.curve import Curve
from divlab.errors import MathDomainError
from divlab.heights import log_height_rational
from divlab.utils.math_helpers import log_abs_int

logger = logging.getLogger(__name__)


def division_poly_degree(m: int) -> int:
    if m < 1:
        raise MathDomainError("m ≥ 1 required")
    return (m * m - 1) // 2 if m % 2 else (m * m - 4) // 2


@lru_cache(maxsize=2048)
def _psi(b: Fraction, c: Fraction, n: int) -> UniPoly:
    if n == 0:
        return UniPoly()
    if n in (1, 2):
        return UniPoly([1])
    if n == 3:
        return UniPoly([-b * b, 12 * c, 6 * b, 0, 3])
    if n == 4:
        return UniPoly([-16 * c * c - 2 * b ** 3, -8 * b * c, -10 * b * b, 40 * c, 10 * b, 0, 2])

    f_sq16 = UniPoly([c, b, 0, 1]) ** 2 * 16
    k = n // 2
    if n % 2:
        left = _psi(b, c, k + 2) * _psi(b, c, k) ** 3
        right = _psi(b, c, k - 1) * _psi(b, c, k + 1) ** 3
        if k % 2 == 0:
            return f_sq16 * left - right
        return left - f_sq16 * right
    inner = (_psi(b, c, k + 2) * _psi(b, c, k - 1) ** 2
             - _psi(b, c, k - 2) * _psi(b, c, k + 1) ** 2)
    return _psi(b, c, k) * inner


@dataclass(frozen=True)
class DivisionPoly:
    m: int
    poly: UniPoly

    @property
    def degree(self) -> int:
        return self.poly.degree


def division_poly(curve: Curve, m: int) -> DivisionPoly:
    """Ψ_m for the curve; deg (m²−1)/2 for odd m and (m²−4)/2 for even m."""
    if m < 2:
        raise MathDomainError(f"m ≥ 2 required, got {m}")
    poly = _psi(curve.b, curve.c, m)
    logger.debug(f"Ψ_{m} on {curve}: degree {poly.degree}")
    return DivisionPoly(m, poly)


def schmidt_poly(curve: Curve, m: int) -> UniPoly:
    """
    Polynomial whose discriminant follows Schmidt's closed form.

    Odd m: Ψ_m. Even m: ψ_m·y = 2(x³+bx+c)·Ψ_m, of degree (m²+2)/2 and leading coefficient m.
    """
    psi = division_poly(curve, m).poly
    if m % 2:
        return psi
    return curve.two_torsion_poly() * psi * 2


@dataclass(frozen=True)
class AbscissaMap:
    """x([m]Q) = theta(x)/psi_sq(x)."""
    m: int
    theta: UniPoly
    psi_sq: UniPoly

    def __call__(self, x: Union[int, Fraction]) -> Optional[Fraction]:
        """Abscissa of [m]Q, or None when [m]Q is the point at infinity."""
        den = self.psi_sq(Fraction(x))
        if den == 0:
            return None
        return self.theta(Fraction(x)) / den

    def same_function(self, other: "AbscissaMap") -> bool:
        """Equality as rational functions (cross-multiplied)."""
        return self.theta * other.psi_sq == other.theta * self.psi_sq


def abscissa_map(curve: Curve, m: int) -> AbscissaMap:
    """
    theta_m = xψ_m² − ψ_{m−1}ψ_{m+1}, expressed through Ψ:
        odd m:  theta = xΨ_m² − 4F·Ψ_{m−1}Ψ_{m+1},   psi_sq = Ψ_m²
        even m: theta = 4F·xΨ_m² − Ψ_{m−1}Ψ_{m+1},   psi_sq = 4F·Ψ_m²
    """
    if m < 1:
        raise MathDomainError(f"m ≥ 1 required, got {m}")
    b, c = curve.b, curve.c
    x = UniPoly.x()
    f4 = curve.two_torsion_poly() * 4
    psi_m = _psi(b, c, m)
    neighbours = _psi(b, c, m - 1) * _psi(b, c, m + 1)
    if m % 2:
        psi_sq = psi_m * psi_m
        theta = x * psi_sq - f4 * neighbours
    else:
        psi_sq = f4 * psi_m * psi_m
        theta = x * psi_sq - neighbours
    return AbscissaMap(m, theta, psi_sq)


def compose(outer: AbscissaMap, inner: AbscissaMap) -> AbscissaMap:
    """outer ∘ inner, homogenised to a common denominator of degree m_outer²·deg."""
    top = outer.m * outer.m
    theta_pows: List[UniPoly] = [UniPoly([1])]
    psi_pows: List[UniPoly] = [UniPoly([1])]
    for _ in range(top):
        theta_pows.append(theta_pows[-1] * inner.theta)
        psi_pows.append(psi_pows[-1] * inner.psi_sq)

    def homogenise(poly: UniPoly) -> UniPoly:
        acc = UniPoly()
        for i, a in enumerate(poly.coefficients):
            if a:
                acc = acc + theta_pows[i] * psi_pows[top - i] * a
        return acc

    return AbscissaMap(outer.m * inner.m, homogenise(outer.theta), homogenise(outer.psi_sq))


def preimage_poly(curve: Curve, m: int, xP: Union[int, Fraction]) -> UniPoly:
    """Primitive integer polynomial of degree m² whose roots are the abscissas of the m-divisors of P."""
    amap = abscissa_map(curve, m)
    return (amap.theta - amap.psi_sq * Fraction(xP)).primitive()


def mckee_bound(m: int) -> float:
    """Asymptotic log bound ((3m²+1)/2)·log 2 + m²/2 − 3 log m − log π on |a_{r,s}|."""
    if m < 2:
        raise MathDomainError(f"m ≥ 2 required, got {m}")
    m2 = m * m
    return (3 * m2 + 1) / 2 * math.log(2) + m2 / 2 - 3 * math.log(m) - math.log(math.pi)


def mckee_bound_factorial(m: int) -> float:
    """log of m^{m²}(m²−½)! / ([((m²−1)/2)!]²·(m²/2+1)!) via lgamma."""
    if m < 2:
        raise MathDomainError(f"m ≥ 2 required, got {m}")
    m2 = m * m
    return (m2 * math.log(m) + math.lgamma(m2 + 0.5)
            - 2 * math.lgamma((m2 - 1) / 2 + 1) - math.lgamma(m2 / 2 + 2))


def coeff_height_bound(m: int, curve: Curve) -> float:
    """deg Ψ_m · (mckee_bound(m) + h(b) + h(c)), on the integral model of the curve."""
    if m < 3:
        raise MathDomainError(f"m ≥ 3 required, got {m}")
    model, u = curve.integral_model()
    if u != 1:
        logger.info(f"Using integral model scaled by u={u} for the coefficient bound")
    return division_poly_degree(m) * (
        mckee_bound(m) + log_height_rational(model.b) + log_height_rational(model.c))


def abscissa_height_bound(m: int, curve: Curve) -> float:
    """Height bound for abscissas of m-torsion points, split by parity of m."""
    if m < 3:
        raise MathDomainError(f"m ≥ 3 required, got {m}")
    hb = log_height_rational(curve.b)
    hc = log_height_rational(curve.c)
    k = m * m - 1 if m % 2 else m * m - 4
    return k * k * math.log(m) + k / 2 * (hb + hc) + math.log(2)


def max_coefficient_log(poly: UniPoly) -> float:
    """log⁺ max |coefficient| of an integral polynomial, without normalising."""
    big = max(abs(c.numerator) for c in poly.coefficients)
    return log_abs_int(big) if big > 1 else 0.0
