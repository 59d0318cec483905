"""
Dense univariate polynomials over Q.

Coefficients are stored constant term first as ``fractions.Fraction``. Products
go through a common-denominator integer convolution, which keeps the division
polynomial recurrence fast even at a few hundred degrees.

Evaluation is generic: ``f(x)`` works for any ring element that mixes with
Fractions under + and *, which is how tower elements (MultiQuadElement)
are plugged into the preimage polynomial.

Example:
    >>> f = UniPoly([-27, 2, 1])
    >>> poly_discriminant(f)
    Fraction(112, 1)
"""

import math
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple, Union

from divlab.errors import MathDomainError

Scalar = Union[int, Fraction]


def _trim(coeffs: List[Fraction]) -> Tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _scaled_ints(coeffs: Sequence[Fraction]) -> Tuple[List[int], int]:
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


class UniPoly:
    """Immutable polynomial Σ aᵢxⁱ with rational aᵢ."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self._coeffs = _trim([Fraction(c) for c in coeffs])

    @classmethod
    def _from_trimmed(cls, coeffs: Tuple[Fraction, ...]) -> "UniPoly":
        poly = cls.__new__(cls)
        poly._coeffs = coeffs
        return poly

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c: Scalar) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "UniPoly":
        return cls([0] * degree + [c])

    # --- structure -------------------------------------------------------

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def lc(self) -> Fraction:
        if not self._coeffs:
            return Fraction(0)
        return self._coeffs[-1]

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def integer_coefficients(self) -> List[int]:
        if not self.is_integral():
            raise MathDomainError("polynomial has non-integer coefficients")
        return [c.numerator for c in self._coeffs]

    # --- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other: Any) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other: Any) -> "UniPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._from_trimmed(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._from_trimmed(tuple(-c for c in self._coeffs))

    def __sub__(self, other: Any) -> "UniPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "UniPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return UniPoly()
            return UniPoly._from_trimmed(tuple(c * other for c in self._coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly()
        a, da = _scaled_ints(self._coeffs)
        b, db = _scaled_ints(other._coeffs)
        den = da * db
        if den == 1:
            return UniPoly._from_trimmed(_trim([Fraction(n) for n in _convolve(a, b)]))
        return UniPoly._from_trimmed(_trim([Fraction(n, den) for n in _convolve(a, b)]))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise MathDomainError("negative polynomial power")
        result = UniPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dg = other.degree
        lc_inv = 1 / other.lc
        if len(rem) - 1 < dg:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dg)
        divisor = other._coeffs
        for k in range(len(rem) - 1 - dg, -1, -1):
            q = rem[k + dg] * lc_inv
            quot[k] = q
            if q:
                for j, d in enumerate(divisor):
                    rem[k + j] -= q * d
        return UniPoly(quot), UniPoly(rem[:dg])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    # --- evaluation and transforms --------------------------------------

    def __call__(self, x: Any) -> Any:
        """Horner evaluation at a Fraction, a UniPoly or any compatible ring element."""
        if not self._coeffs:
            return Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        acc: Any = self._coeffs[-1]
        for c in reversed(self._coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self._coeffs) if i > 0)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """self(inner(x))."""
        result = UniPoly()
        for c in reversed(self._coeffs):
            result = result * inner + c
        return result

    def taylor_shift(self, a: Scalar, scale: Scalar = 1) -> "UniPoly":
        """f(a + scale·x)."""
        return self.compose(UniPoly([a, scale]))

    def reversal(self) -> "UniPoly":
        """x^deg · f(1/x)."""
        return UniPoly(reversed(self._coeffs))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise MathDomainError("zero polynomial has no monic form")
        return self * (1 / self.lc)

    def content_and_primitive(self) -> Tuple[Fraction, "UniPoly"]:
        """
        Split f = content · f̃ with f̃ integral, coprime coefficients, positive leading coefficient.
        """
        if self.is_zero():
            raise MathDomainError("zero polynomial has no primitive part")
        nums, den = _scaled_ints(self._coeffs)
        g = math.gcd(*nums)
        if nums[-1] < 0:
            g = -g
        return Fraction(g, den), UniPoly(n // g for n in nums)

    def primitive(self) -> "UniPoly":
        return self.content_and_primitive()[1]

    def squarefree_part(self) -> "UniPoly":
        """Primitive squarefree part f / gcd(f, f′); same roots, all simple."""
        if self.degree < 1:
            return self.primitive()
        g = poly_gcd(self, self.derivative())
        return (self // g).primitive()

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero if both are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    if f.is_zero():
        return f
    return f.monic()


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Res(f, g) = lc(f)^deg g · Π g(α) over the roots α of f, by Euclidean remainders."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    sign = 1
    acc = Fraction(1)
    while True:
        df, dg = f.degree, g.degree
        if dg == 0:
            return sign * acc * g.lc ** df
        if df == 0:
            return sign * acc * f.lc ** dg
        if df < dg:
            if (df * dg) % 2:
                sign = -sign
            f, g = g, f
            continue
        r = f % g
        if r.is_zero():
            return Fraction(0)
        # Res(f, g) = (-1)^(df·dg) · lc(g)^(df - dr) · Res(g, r)
        if (df * dg) % 2:
            sign = -sign
        acc *= g.lc ** (df - r.degree)
        f, g = g, r


def poly_discriminant(f: UniPoly) -> Fraction:
    """disc(f) = (−1)^{d(d−1)/2} · Res(f, f′) / lc(f)."""
    d = f.degree
    if d < 1:
        raise MathDomainError("degree too small")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc
