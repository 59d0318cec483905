"""2×2 matrices over Z/nZ with explicit modulus discipline."""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from divlab.errors import MathDomainError

Vector = Tuple[int, int]


@dataclass(frozen=True, order=True)
class Mat2Mod:
    """[[a, b], [c, d]] over Z/n; entries are reduced on construction."""
    n: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise MathDomainError(f"modulus must be positive, got {self.n}")
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) % self.n)

    @classmethod
    def identity(cls, n: int) -> "Mat2Mod":
        return cls(n, 1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int) -> "Mat2Mod":
        (a, b), (c, d) = rows
        return cls(n, a, b, c, d)

    def rows(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def _check(self, other: "Mat2Mod") -> None:
        if other.n != self.n:
            raise MathDomainError(f"modulus mismatch: {self.n} vs {other.n}")

    def __mul__(self, other: "Mat2Mod") -> "Mat2Mod":
        return mat_mul(self, other)

    def __add__(self, other: "Mat2Mod") -> "Mat2Mod":
        self._check(other)
        return Mat2Mod(self.n, self.a + other.a, self.b + other.b,
                       self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2Mod") -> "Mat2Mod":
        self._check(other)
        return Mat2Mod(self.n, self.a - other.a, self.b - other.b,
                       self.c - other.c, self.d - other.d)

    def scale(self, k: int) -> "Mat2Mod":
        return Mat2Mod(self.n, k * self.a, k * self.b, k * self.c, k * self.d)

    def det(self) -> int:
        return mat_det(self)

    def is_invertible(self) -> bool:
        return math.gcd(self.det(), self.n) == 1

    def inverse(self) -> "Mat2Mod":
        det = self.det()
        if math.gcd(det, self.n) != 1:
            raise MathDomainError("singular element")
        inv = pow(det, -1, self.n) if self.n > 1 else 0
        return Mat2Mod(self.n, inv * self.d, -inv * self.b, -inv * self.c, inv * self.a)

    def apply(self, v: Vector) -> Vector:
        x, y = v
        return ((self.a * x + self.b * y) % self.n, (self.c * x + self.d * y) % self.n)

    def reduce(self, m: int) -> "Mat2Mod":
        """Image under Z/n → Z/m (m must divide n)."""
        if self.n % m:
            raise MathDomainError(f"{m} does not divide modulus {self.n}")
        return Mat2Mod(m, self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self == Mat2Mod.identity(self.n)

    def signed_rows(self) -> List[List[int]]:
        """Rows with residues printed in (−n/2, n/2]."""
        half = self.n // 2
        return [[e - self.n if e > half else e for e in row] for row in self.rows()]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.n}"


def mat_mul(x: Mat2Mod, y: Mat2Mod) -> Mat2Mod:
    x._check(y)
    return Mat2Mod(
        x.n,
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
    )


def mat_pow(m: Mat2Mod, e: int) -> Mat2Mod:
    if e < 0:
        return mat_pow(m.inverse(), -e)
    result = Mat2Mod.identity(m.n)
    base = m
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def mat_det(m: Mat2Mod) -> int:
    return (m.a * m.d - m.b * m.c) % m.n


def mat_order(m: Mat2Mod) -> int:
    """Least t ≥ 1 with mᵗ = Id; bounded by |GL₂(Z/n)| < n⁴."""
    if not m.is_invertible():
        raise MathDomainError("singular element")
    ident = Mat2Mod.identity(m.n)
    acc = m
    t = 1
    while acc != ident:
        acc = mat_mul(acc, m)
        t += 1
    return t
