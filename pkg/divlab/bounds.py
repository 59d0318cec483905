"""
Discriminant bounds for the m-division field and the effective prime budget.

Pipeline for a curve E: y² = x³+bx+c and m ≥ 3, with
K = m²−1, K' = m²−3 for odd m and K = m²−4, K' = m²−6 for even m:

    h(Δ)              ≤ 10 log m + 3h(b) + 2h(c)
    h(D_{F₁F₂})       ≤ compositum discriminant bound (uses the h(Δ) bound)
    h(N(D_{L/F₁F₂}))  ≤ [F₁F₂:Q]·(8 log 2 + 8h(x₁) + 8h(x₂) + 4h(b) + 4h(c) + 4 log 3)
                      ≤ 9/2·K³K'·(log m + h(b) + h(c))
    h(D_L)            ≤ 4·h(D_{F₁F₂}) + 9/2·K³K'·(...)  ≤  B = 5·K³K'·(log m + h(b) + h(c))

and every rational prime v in the sufficient set satisfies log v ≤ 12577·B.

All values are floats; reported bounds are rounded up, never down.
"""

import logging
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

from divlab.curves.curve import Curve
from divlab.curves.division_poly import abscissa_height_bound
from divlab.errors import CapExceededError, MathDomainError
from divlab.heights import log_height_rational
from divlab.utils.math_helpers import primes_up_to, round_up_sig

logger = logging.getLogger(__name__)

PRIME_BUDGET_FACTOR = 12577
RELATIVE_DEGREE = 4


def _require_m(m: int) -> None:
    if m < 3:
        raise MathDomainError("m ≥ 3 required")


def _parity_factors(m: int):
    m2 = m * m
    if m % 2:
        return m2 - 1, m2 - 3
    return m2 - 4, m2 - 6


def curve_discriminant(curve: Curve) -> Fraction:
    delta = curve.discriminant
    if delta == 0:
        raise MathDomainError("singular curve")
    return delta


def h_delta_bound(curve: Curve, m: int) -> float:
    _require_m(m)
    return (10 * math.log(m) + 3 * log_height_rational(curve.b)
            + 2 * log_height_rational(curve.c))


def schmidt_discriminant(curve: Curve, m: int) -> Fraction:
    """Closed-form discriminant of the Schmidt division polynomial (see schmidt_poly)."""
    _require_m(m)
    delta = curve_discriminant(curve)
    m2 = m * m
    if m % 2:
        sign = -1 if ((m - 1) // 2) % 2 else 1
        return sign * Fraction(m) ** ((m2 - 3) // 2) * delta ** ((m2 - 1) * (m2 - 3) // 24)
    sign = -1 if ((m - 2) // 2) % 2 else 1
    return (sign * Fraction(m) ** (m2 // 2) * Fraction(2) ** (2 - m2)
            * delta ** (m2 * (m2 + 2) // 24))


def compositum_degree_bound(m: int) -> int:
    """Upper bound for [F₁F₂:Q]: K·K'/4."""
    _require_m(m)
    k, k2 = _parity_factors(m)
    return k * k2 // 4


def disc_compositum_bound(curve: Curve, m: int, h_delta: Optional[float] = None) -> float:
    """Bound on h(D_{F₁F₂}) from the discriminants of the abscissa fields."""
    _require_m(m)
    hd = h_delta_bound(curve, m) if h_delta is None else h_delta
    m2 = m * m
    if m % 2:
        return (m2 - 1) * ((m2 - 3) / 2 * math.log(m) + (m2 - 1) * (m2 - 3) / 24 * hd)
    return (m2 - 4) * (m2 / 2 * math.log(m) + (m2 - 2) * math.log(2)
                       + m2 * (m2 + 2) / 24 * hd)


def norm_relative_disc_bound(curve: Curve, m: int,
                             h_x1: Optional[float] = None,
                             h_x2: Optional[float] = None) -> float:
    """Bound on h(N(D_{L/F₁F₂})) from 4y₁²·4y₂², given abscissa heights (default: their bound)."""
    _require_m(m)
    hx = abscissa_height_bound(m, curve)
    h1 = hx if h_x1 is None else h_x1
    h2 = hx if h_x2 is None else h_x2
    hb = log_height_rational(curve.b)
    hc = log_height_rational(curve.c)
    bracket = (8 * math.log(2) + 8 * h1 + 8 * h2 + 4 * hb + 4 * hc + 4 * math.log(3))
    return compositum_degree_bound(m) * bracket


def condensed_norm_bound(curve: Curve, m: int) -> float:
    """9/2·K³K'·(log m + h(b) + h(c))."""
    _require_m(m)
    k, k2 = _parity_factors(m)
    return 4.5 * k ** 3 * k2 * (math.log(m) + log_height_rational(curve.b)
                                + log_height_rational(curve.c))


def tower_discriminant_bound(h_lower: float, degree: int, h_norm: float) -> float:
    """h(D_{L/K}) ≤ [L:F]·h(D_{F/K}) + h(N_{F/K}(D_{L/F}))."""
    return degree * h_lower + h_norm


def B_bound(curve: Curve, m: int) -> float:
    """B(m,b,c) = 5·K³K'·(log m + h(b) + h(c))."""
    _require_m(m)
    k, k2 = _parity_factors(m)
    return 5 * k ** 3 * k2 * (math.log(m) + log_height_rational(curve.b)
                              + log_height_rational(curve.c))


def prime_budget(curve: Curve, m: int) -> float:
    """12577·B: upper bound on log v for the rational primes v of the sufficient set."""
    return PRIME_BUDGET_FACTOR * B_bound(curve, m)


def galois_field_budget(curve: Curve, m: int, degree: int) -> float:
    """For a Galois base field of degree d over Q: h(v) ≤ 12577·B/d."""
    if degree < 1:
        raise MathDomainError("field degree must be positive")
    return prime_budget(curve, m) / degree


def pseudodivisibility_threshold(degree: int) -> float:
    """Density of failing primes above which a locally divisible point is pseudodivisible: 1/[L:K]."""
    if degree < 1:
        raise MathDomainError("field degree must be positive")
    return 1.0 / degree


def elegant_bound(curve: Curve, m: int) -> float:
    """
    Condensed closed form K³·(m−3)·log(m⁵|bc|) (odd) or K³·(m−6)·log(m⁵|bc|) (even), taken literally.

    Informational only: it does not agree with B_bound and can be zero or negative.
    """
    _require_m(m)
    if curve.b == 0 or curve.c == 0 or not curve.is_integral():
        raise MathDomainError("elegant form undefined")
    k, _ = _parity_factors(m)
    shift = m - 3 if m % 2 else m - 6
    value = k ** 3 * shift * (5 * math.log(m) + math.log(abs(curve.b * curve.c)))
    logger.warning(f"⚠️ elegant form for m={m} is informational only (value {value:.6g})")
    return value


def primes_within_log_budget(log_budget: float, cap: float) -> List[int]:
    """All primes v with log v ≤ log_budget, refused when the budget exceeds ``cap``."""
    if log_budget > cap:
        raise CapExceededError("log prime budget", int(cap), needed=log_budget)
    return primes_up_to(int(math.floor(math.exp(log_budget))))


def sufficient_primes(curve: Curve, m: int, cap: float = 30.0) -> List[int]:
    return primes_within_log_budget(prime_budget(curve, m), cap)


@dataclass
class BoundReport:
    """Every named quantity of the bound pipeline for one (curve, m)."""
    m: int
    h_b: float
    h_c: float
    h_delta: float
    h_delta_bound: float
    disc_compositum: float
    norm_bound: float
    norm_bound_condensed: float
    assembled: float
    B: float
    prime_budget: float
    elegant_form: Optional[float] = None
    density_threshold: Optional[float] = None

    def chain_holds(self) -> bool:
        return (self.h_delta <= self.h_delta_bound
                and self.norm_bound <= self.norm_bound_condensed
                and self.assembled <= self.B)

    def to_dict(self, digits: int = 12) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for key, value in asdict(self).items():
            if isinstance(value, float) and key not in ("h_b", "h_c", "h_delta",
                                                        "elegant_form", "density_threshold"):
                out[key] = round_up_sig(value, digits)
            elif isinstance(value, float):
                out[key] = float(format(value, f".{digits}g"))
            else:
                out[key] = value
        return out


def bound_pipeline(curve: Curve, m: int, group_order: Optional[int] = None) -> BoundReport:
    _require_m(m)
    delta = curve_discriminant(curve)
    disj = disc_compositum_bound(curve, m)
    eleg = condensed_norm_bound(curve, m)
    elegant = None
    if curve.b != 0 and curve.c != 0 and curve.is_integral():
        elegant = elegant_bound(curve, m)

    report = BoundReport(
        m=m,
        h_b=log_height_rational(curve.b),
        h_c=log_height_rational(curve.c),
        h_delta=log_height_rational(delta),
        h_delta_bound=h_delta_bound(curve, m),
        disc_compositum=disj,
        norm_bound=norm_relative_disc_bound(curve, m),
        norm_bound_condensed=eleg,
        assembled=tower_discriminant_bound(disj, RELATIVE_DEGREE, eleg),
        B=B_bound(curve, m),
        prime_budget=prime_budget(curve, m),
        elegant_form=elegant,
        density_threshold=None if group_order is None else 1.0 / group_order,
    )
    if not report.chain_holds():
        logger.warning(f"⚠️ bound chain violated for m={m} on {curve}: {report}")
    else:
        logger.info(f"✅ bound chain holds for m={m}: B={report.B:.6g}")
    return report
