"""
Exact arithmetic in multiquadratic towers Q(√d₁, …, √d_k).

An element is stored as 2ᵏ rational coordinates indexed by bitmasks S, with
value Σ_S coords[S]·Π_{i∈S}√dᵢ. Radicands are squarefree, pairwise coprime
(on absolute values) and kept in ascending order so that printed
expressions are canonical. -1 is a radicand in its own right.

Example:
    >>> T = Tower((2, 3))
    >>> (1 + T.sqrt(2)) * (1 + T.sqrt(3))
    MultiQuadElement('1 + sqrt(2) + sqrt(3) + sqrt(2)*sqrt(3)')
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from divlab.arith.polynomial import UniPoly
from divlab.errors import MathDomainError
from divlab.utils.math_helpers import factorize, rational_sqrt_split, squarefree_part

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Tower:
    """Ordered radicand list of a multiquadratic tower."""
    radicands: Tuple[int, ...]
    _overlap: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rads = tuple(sorted(int(d) for d in self.radicands))
        for d in rads:
            if d in (0, 1):
                raise MathDomainError(f"radicand {d} is not allowed")
            if squarefree_part(d)[0] != 1:
                raise MathDomainError(f"radicand {d} is not squarefree")
        for d, e in combinations(rads, 2):
            if d == e or math.gcd(abs(d), abs(e)) != 1:
                raise MathDomainError(f"radicands {d} and {e} are not coprime")
        object.__setattr__(self, "radicands", rads)
        # product of radicands over each bitmask
        overlap = [1] * (1 << len(rads))
        for mask in range(1, len(overlap)):
            low = mask & -mask
            overlap[mask] = overlap[mask ^ low] * rads[low.bit_length() - 1]
        object.__setattr__(self, "_overlap", tuple(overlap))

    @classmethod
    def covering(cls, values: Iterable[Scalar]) -> "Tower":
        """Smallest prime-radicand tower containing √q for every given rational q."""
        rads = set()
        for q in values:
            _, d = rational_sqrt_split(Fraction(q))
            if d < 0:
                rads.add(-1)
            rads.update(factorize(d).keys() if abs(d) > 1 else ())
        return cls(tuple(rads))

    @property
    def rank(self) -> int:
        return len(self.radicands)

    @property
    def dim(self) -> int:
        return 1 << len(self.radicands)

    def product(self, mask: int) -> int:
        return self._overlap[mask]

    def zero(self) -> "MultiQuadElement":
        return MultiQuadElement(self, (Fraction(0),) * self.dim)

    def rational(self, q: Scalar) -> "MultiQuadElement":
        coords = [Fraction(0)] * self.dim
        coords[0] = Fraction(q)
        return MultiQuadElement(self, tuple(coords))

    def one(self) -> "MultiQuadElement":
        return self.rational(1)

    def element(self, terms: Dict[int, Scalar]) -> "MultiQuadElement":
        """Build from {bitmask: coefficient}."""
        coords = [Fraction(0)] * self.dim
        for mask, c in terms.items():
            coords[mask] += Fraction(c)
        return MultiQuadElement(self, tuple(coords))

    def sqrt(self, n: Scalar) -> "MultiQuadElement":
        """
        Principal √n inside the tower.

        √n = c·√d with d squarefree; √d is matched to the product of basis
        radicals over the unique subset multiplying to d. Two negative basis
        radicals multiply to minus the principal root, which is corrected here.
        """
        c, d = rational_sqrt_split(Fraction(n))
        if d == 1:
            return self.rational(c)
        for mask in range(1, self.dim):
            if self._overlap[mask] == d:
                negatives = sum(1 for i, r in enumerate(self.radicands)
                                if mask >> i & 1 and r < 0)
                twist = (negatives - (1 if d < 0 else 0)) // 2
                return self.element({mask: -c if twist % 2 else c})
        raise MathDomainError(f"sqrt({n}) is not in tower {self.radicands}")

    def from_terms(self, terms: Sequence[Tuple[Scalar, Scalar]]) -> "MultiQuadElement":
        """Σ coeff·√radicand; radicand 1 means a rational term."""
        acc = self.zero()
        for coeff, rad in terms:
            acc = acc + self.sqrt(rad) * Fraction(coeff)
        return acc

    def radical_name(self, mask: int) -> str:
        return "*".join(f"sqrt({d})" for i, d in enumerate(self.radicands) if mask >> i & 1)


class MultiQuadElement:
    """Immutable element of a multiquadratic tower."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower: Tower, coords: Sequence[Scalar]):
        if len(coords) != tower.dim:
            raise MathDomainError(f"expected {tower.dim} coordinates, got {len(coords)}")
        self.tower = tower
        self.coords: Tuple[Fraction, ...] = tuple(Fraction(c) for c in coords)

    # --- helpers ---------------------------------------------------------

    def _lift(self, other: Any) -> "MultiQuadElement":
        if isinstance(other, MultiQuadElement):
            if other.tower != self.tower:
                raise MathDomainError("incompatible towers")
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower.rational(other)
        return NotImplemented

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise MathDomainError(f"{self} is not rational")
        return self.coords[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    # --- ring operations -------------------------------------------------

    def __add__(self, other: Any) -> "MultiQuadElement":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return MultiQuadElement(self.tower, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self) -> "MultiQuadElement":
        return MultiQuadElement(self.tower, [-a for a in self.coords])

    def __sub__(self, other: Any) -> "MultiQuadElement":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return MultiQuadElement(self.tower, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other: Any) -> "MultiQuadElement":
        return (-self) + other

    def __mul__(self, other: Any) -> "MultiQuadElement":
        if isinstance(other, (int, Fraction)):
            return MultiQuadElement(self.tower, [a * other for a in self.coords])
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return mq_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiQuadElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.tower.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def norm(self) -> Fraction:
        """Product of all 2ᵏ sign-flip conjugates; a rational number."""
        acc = self.tower.one()
        for flip in range(self.tower.dim):
            acc = acc * self.conjugate(flip)
        return acc.rational_value()

    def inverse(self) -> "MultiQuadElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in tower")
        others = self.tower.one()
        for flip in range(1, self.tower.dim):
            others = others * self.conjugate(flip)
        n = (self * others).rational_value()
        return others * (1 / n)

    def __truediv__(self, other: Any) -> "MultiQuadElement":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "MultiQuadElement":
        return self.inverse() * other

    # --- Galois structure ------------------------------------------------

    def conjugate(self, flip: int) -> "MultiQuadElement":
        """Apply √dᵢ ↦ −√dᵢ for every bit i set in ``flip``."""
        return MultiQuadElement(
            self.tower,
            [-c if bin(mask & flip).count("1") % 2 else c for mask, c in enumerate(self.coords)],
        )

    def conjugates(self) -> List["MultiQuadElement"]:
        """Distinct Galois conjugates, in first-seen order of the flip masks."""
        seen: Dict[Tuple[Fraction, ...], MultiQuadElement] = {}
        for flip in range(self.tower.dim):
            conj = self.conjugate(flip)
            seen.setdefault(conj.coords, conj)
        return list(seen.values())

    def minimal_polynomial(self) -> UniPoly:
        """Π (X − c) over the distinct conjugates; coefficients come out rational."""
        coeffs: List[MultiQuadElement] = [self.tower.one()]
        for conj in self.conjugates():
            shifted = [self.tower.zero()] + coeffs
            for i, c in enumerate(coeffs):
                shifted[i] = shifted[i] - conj * c
            coeffs = shifted
        return UniPoly(c.rational_value() for c in coeffs)

    def embed(self, target: Tower) -> "MultiQuadElement":
        """Same number expressed in a tower containing every radicand of ours."""
        if target == self.tower:
            return self
        try:
            positions = [target.radicands.index(d) for d in self.tower.radicands]
        except ValueError:
            raise MathDomainError(f"tower {target.radicands} does not contain {self.tower.radicands}")
        coords = [Fraction(0)] * target.dim
        for mask, c in enumerate(self.coords):
            if c:
                new_mask = 0
                for i, pos in enumerate(positions):
                    if mask >> i & 1:
                        new_mask |= 1 << pos
                coords[new_mask] = c
        return MultiQuadElement(target, coords)

    def to_complex(self) -> complex:
        """Value at the principal embedding (√d > 0 for d > 0, √d = i√|d| otherwise)."""
        roots = [cmath.sqrt(d) for d in self.tower.radicands]
        total = 0j
        for mask, c in enumerate(self.coords):
            if c:
                term = complex(float(c))
                for i, r in enumerate(roots):
                    if mask >> i & 1:
                        term *= r
                total += term
        return total

    # --- comparison and printing -----------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, MultiQuadElement):
            return NotImplemented
        return self.tower == other.tower and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.tower.radicands, self.coords))

    def __str__(self) -> str:
        parts: List[str] = []
        for mask, c in enumerate(self.coords):
            if c == 0:
                continue
            if mask == 0:
                body = str(abs(c))
            else:
                name = self.tower.radical_name(mask)
                body = name if abs(c) == 1 else f"{abs(c)}*{name}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"MultiQuadElement('{self}')"


def mq_mul(x: MultiQuadElement, y: MultiQuadElement) -> MultiQuadElement:
    """Exact product; √S·√T = Π_{S∩T} dᵢ · √(S△T)."""
    if x.tower != y.tower:
        raise MathDomainError("incompatible towers")
    tower = x.tower
    out = [Fraction(0)] * tower.dim
    ys = [(j, b) for j, b in enumerate(y.coords) if b]
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j, b in ys:
            out[i ^ j] += a * b * tower.product(i & j)
    return MultiQuadElement(tower, out)
