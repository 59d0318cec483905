"""
Legendre-form curves, the auxiliary quartic and points over multiquadratic towers.

For E: y² = (x−α)(x−β)(x−γ) with α+β+γ = 0 and δ the squarefree part of
(α−β)(β−γ), a rational point (s, t) of

    δs² = δ²t⁴ − 6αδt² + (β−γ)²

lifts to D = (u, v) on E over Q(√δ) with

    u = (t²δ − α)/2 + (s/2)·√δ,    v = t·√δ·(u − α)

and [4]D is rational. The chord-tangent law below works in any Tower; a
rational point is a TowerPoint over the empty tower.

Example:
    >>> q = quartic_model(EXAMPLE_LEGENDRE)
    >>> D = lift_quartic_point(q, 4, 1, EXAMPLE_LEGENDRE)
    >>> point_mul(D, 4).rational_coordinates()
    (Fraction(10, 1), Fraction(10, 1))
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from divlab.arith.multiquad import MultiQuadElement, Tower
from divlab.curves.curve import Curve
from divlab.curves.division_poly import preimage_poly
from divlab.errors import MathDomainError, PreconditionError
from divlab.utils.math_helpers import RationalLike, rational_sqrt_split, to_fraction

logger = logging.getLogger(__name__)

Terms = Sequence[Tuple[RationalLike, RationalLike]]


@dataclass(frozen=True)
class LegendreCurve:
    """y² = (x−α)(x−β)(x−γ) with α+β+γ = 0 and distinct roots."""
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.alpha + self.beta + self.gamma != 0:
            raise MathDomainError("alpha + beta + gamma must vanish")
        if len({self.alpha, self.beta, self.gamma}) < 3:
            raise MathDomainError("singular curve: repeated root")

    def short_form(self) -> Curve:
        a, b, g = self.alpha, self.beta, self.gamma
        return Curve(a * b + b * g + a * g, -a * b * g, self.label)

    def roots(self) -> Tuple[Fraction, Fraction, Fraction]:
        return self.alpha, self.beta, self.gamma


EXAMPLE_LEGENDRE = LegendreCurve(Fraction(9), Fraction(6), Fraction(-15), "paper-sec6")


@dataclass(frozen=True)
class QuarticCurve:
    """s² = A·t⁴ + B·t² + C, i.e. δs² = δ²t⁴ − 6αδt² + (β−γ)² divided by δ."""
    delta: int
    omega: Fraction
    A: Fraction
    B: Fraction
    C: Fraction

    def value(self, t: RationalLike) -> Fraction:
        t = to_fraction(t)
        return self.A * t ** 4 + self.B * t ** 2 + self.C

    def contains(self, s: RationalLike, t: RationalLike) -> bool:
        return to_fraction(s) ** 2 == self.value(t)

    def __str__(self) -> str:
        return f"s^2 = {self.A}*t^4 + ({self.B})*t^2 + ({self.C})"


def quartic_model(curve: LegendreCurve) -> QuarticCurve:
    a, b, g = curve.roots()
    product = (a - b) * (b - g)
    if product == 0:
        raise MathDomainError("degenerate curve: (alpha - beta)(beta - gamma) = 0")
    omega, delta = rational_sqrt_split(product)
    q = QuarticCurve(delta, abs(omega), Fraction(delta), -6 * a, (b - g) ** 2 / delta)
    logger.debug(f"Quartic model for {curve}: delta={delta}, {q}")
    return q


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def search_quartic_points(q: QuarticCurve, bound: int) -> List[Tuple[Fraction, Fraction]]:
    """Integer t with |t| ≤ bound whose quartic value is a rational square; s ≥ 0."""
    points = []
    for t in range(-bound, bound + 1):
        s = _rational_sqrt(q.value(t))
        if s is not None:
            points.append((s, Fraction(t)))
    return points


# --- points over towers -------------------------------------------------------

@dataclass(frozen=True)
class TowerPoint:
    """Point of a short Weierstrass curve with coordinates in a Tower, or infinity."""
    curve: Curve
    tower: Tower
    x: Optional[MultiQuadElement] = None
    y: Optional[MultiQuadElement] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise MathDomainError("a finite point needs both coordinates")
        if self.x is None:
            return
        if self.x.tower != self.tower or self.y.tower != self.tower:
            raise MathDomainError("incompatible towers")
        if not self.curve.contains(self.x, self.y):
            raise PreconditionError(f"({self.x}, {self.y}) is not on {self.curve}")

    @classmethod
    def infinity(cls, curve: Curve, tower: Tower) -> "TowerPoint":
        return cls(curve, tower)

    @classmethod
    def rational(cls, curve: Curve, x: RationalLike, y: RationalLike,
                 tower: Optional[Tower] = None) -> "TowerPoint":
        tower = tower or Tower(())
        return cls(curve, tower, tower.rational(to_fraction(x)), tower.rational(to_fraction(y)))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def rational_coordinates(self) -> Optional[Tuple[Fraction, Fraction]]:
        """(x, y) when both coordinates are rational, else None (also for infinity)."""
        if self.is_infinity or not (self.x.is_rational() and self.y.is_rational()):
            return None
        return self.x.rational_value(), self.y.rational_value()

    def embed(self, target: Tower) -> "TowerPoint":
        if self.is_infinity:
            return TowerPoint(self.curve, target)
        return TowerPoint(self.curve, target, self.x.embed(target), self.y.embed(target))

    def to_dict(self) -> Dict:
        if self.is_infinity:
            return {"infinity": True}
        return {"x": str(self.x), "y": str(self.y), "tower": list(self.tower.radicands)}

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


def _same_setting(P: TowerPoint, Q: TowerPoint) -> None:
    if P.tower != Q.tower:
        raise MathDomainError("incompatible towers")
    if P.curve != Q.curve:
        raise MathDomainError("points lie on different curves")


def point_neg(P: TowerPoint) -> TowerPoint:
    if P.is_infinity:
        return P
    return TowerPoint(P.curve, P.tower, P.x, -P.y)


def point_add(P: TowerPoint, Q: TowerPoint) -> TowerPoint:
    _same_setting(P, Q)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if (P.y + Q.y).is_zero():
            return TowerPoint.infinity(P.curve, P.tower)
        slope = (P.x * P.x * 3 + P.curve.b) / (P.y * 2)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    x3 = slope * slope - P.x - Q.x
    y3 = slope * (P.x - x3) - P.y
    return TowerPoint(P.curve, P.tower, x3, y3)


def point_sub(P: TowerPoint, Q: TowerPoint) -> TowerPoint:
    return point_add(P, point_neg(Q))


def point_mul(P: TowerPoint, k: int) -> TowerPoint:
    """[k]P by double-and-add."""
    if k < 0:
        return point_mul(point_neg(P), -k)
    result = TowerPoint.infinity(P.curve, P.tower)
    addend = P
    while k:
        if k & 1:
            result = point_add(result, addend)
        k >>= 1
        if k:
            addend = point_add(addend, addend)
    return result


def radical_flip(tower: Tower, *radicands: int) -> int:
    """Bitmask that sends √d ↦ −√d for each given basis radicand."""
    mask = 0
    for d in radicands:
        if d not in tower.radicands:
            raise MathDomainError(f"{d} is not a radicand of {tower.radicands}")
        mask |= 1 << tower.radicands.index(d)
    return mask


def conjugate_point(D: TowerPoint, flip: int) -> TowerPoint:
    """Apply the field automorphism ``flip`` to both coordinates."""
    if D.is_infinity:
        return D
    return TowerPoint(D.curve, D.tower, D.x.conjugate(flip), D.y.conjugate(flip))


def lift_quartic_point(q: QuarticCurve, s: RationalLike, t: RationalLike,
                       curve: LegendreCurve) -> TowerPoint:
    """D = (u₀ + u₁√δ, t√δ(u − α)) over Q(√δ); on-curve membership checked exactly."""
    s, t = to_fraction(s), to_fraction(t)
    if not q.contains(s, t):
        raise PreconditionError(f"({s}, {t}) is not on the quartic {q}")
    tower = Tower.covering([q.delta])
    root = tower.sqrt(q.delta)
    u = (t * t * q.delta - curve.alpha) / 2 + root * (s / 2)
    v = root * t * (u - curve.alpha)
    return TowerPoint(curve.short_form(), tower, u, v)


def four_torsion_generators(curve: LegendreCurve) -> Tuple[TowerPoint, TowerPoint]:
    """
    A′ = (α + pq, pq(p + q)) with p = √(α−β), q = √(α−γ), and B′ likewise at β,
    so that [2]A′ = (α, 0) and [2]B′ = (β, 0).
    """
    a, b, g = curve.roots()
    tower = Tower.covering([a - b, a - g, b - a, b - g])
    short = curve.short_form()

    def halve(root: Fraction, first: Fraction, second: Fraction) -> TowerPoint:
        p, r = tower.sqrt(first), tower.sqrt(second)
        pr = p * r
        point = TowerPoint(short, tower, pr + root, pr * (p + r))
        target = TowerPoint(short, tower, tower.rational(root), tower.zero())
        if point_add(point, point) != target:
            raise MathDomainError(f"halving of ({root}, 0) failed in tower {tower.radicands}")
        return point

    return halve(a, a - b, a - g), halve(b, b - a, b - g)


# --- the sixteen divisors -----------------------------------------------------

def verify_divisor_abscissas(curve: Union[Curve, LegendreCurve],
                             P: Tuple[RationalLike, RationalLike],
                             abscissas: Sequence[Terms], ordinates: Sequence[Terms],
                             tower: Tower, m: int = 4) -> Dict:
    """
    Plug each listed abscissa into the m-division preimage polynomial of P and
    check the listed ordinate lies on the curve, all exactly in ``tower``.
    """
    if isinstance(curve, LegendreCurve):
        curve = curve.short_form()
    x_p, y_p = to_fraction(P[0]), to_fraction(P[1])
    if not curve.contains(x_p, y_p):
        raise PreconditionError(f"({x_p}, {y_p}) is not on {curve}")
    phi = preimage_poly(curve, m, x_p)
    target = TowerPoint.rational(curve, x_p, y_p, tower)

    rows = []
    for i, (x_terms, y_terms) in enumerate(zip(abscissas, ordinates), start=1):
        x = tower.from_terms(x_terms)
        y = tower.from_terms(y_terms)
        root = phi(x).is_zero()
        on_curve = curve.contains(x, y)
        multiple = False
        if on_curve:
            image = point_mul(TowerPoint(curve, tower, x, y), m)
            multiple = image in (target, point_neg(target))
        rows.append({
            "index": i,
            "abscissa": str(x),
            "ordinate": str(y),
            "root": root,
            "on_curve": on_curve,
            "divides_point": multiple,
        })
        logger.debug(f"x{i}: root={root} on_curve={on_curve} divides={multiple}")

    passed = all(r["root"] and r["on_curve"] and r["divides_point"] for r in rows)
    return {
        "tower": list(tower.radicands),
        "point": [str(x_p), str(y_p)],
        "m": m,
        "abscissas": rows,
        "all_pass": passed,
    }
