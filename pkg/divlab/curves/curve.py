"""Short Weierstrass curves y² = x³ + bx + c over Q."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Tuple

from divlab.arith.polynomial import UniPoly
from divlab.errors import MathDomainError
from divlab.utils.math_helpers import RationalLike, factorize, to_fraction


@dataclass(frozen=True)
class Curve:
    """E: y² = x³ + bx + c with Δ = −16(4b³ + 27c²) ≠ 0."""
    b: Fraction
    c: Fraction
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "b", to_fraction(self.b))
        object.__setattr__(self, "c", to_fraction(self.c))
        if 4 * self.b ** 3 + 27 * self.c ** 2 == 0:
            raise MathDomainError(f"singular curve: b={self.b}, c={self.c}")

    @classmethod
    def from_values(cls, b: RationalLike, c: RationalLike, label: Optional[str] = None) -> "Curve":
        return cls(to_fraction(b), to_fraction(c), label)

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.b ** 3 + 27 * self.c ** 2)

    def is_integral(self) -> bool:
        return self.b.denominator == 1 and self.c.denominator == 1

    def rhs(self, x: Any) -> Any:
        """x³ + bx + c for any ring element x."""
        return x * x * x + x * self.b + self.c

    def contains(self, x: Any, y: Any) -> bool:
        return y * y == self.rhs(x)

    def two_torsion_poly(self) -> UniPoly:
        return UniPoly([self.c, self.b, 0, 1])

    def integral_model(self) -> Tuple["Curve", int]:
        """
        Isomorphic curve y² = x³ + u⁴b·x + u⁶c with the least u ≥ 1 making both coefficients integral.
        """
        if self.is_integral():
            return self, 1
        fb = factorize(self.b.denominator) if self.b.denominator > 1 else {}
        fc = factorize(self.c.denominator) if self.c.denominator > 1 else {}
        u = 1
        for prime in set(fb) | set(fc):
            u *= prime ** max(math.ceil(fb.get(prime, 0) / 4), math.ceil(fc.get(prime, 0) / 6))
        return Curve(self.b * u ** 4, self.c * u ** 6, self.label), u

    def __str__(self) -> str:
        name = f"{self.label}: " if self.label else ""
        return f"{name}y^2 = x^3 + ({self.b})x + ({self.c})"
