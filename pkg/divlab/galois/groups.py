"""
Finite subgroups of GL₂(Z/n) and exhaustive checks of their structure.

Groups are built by breadth-first closure from generators and stored as
frozen sets of Mat2Mod. Everything here is enumeration at desk scale:
moduli stay small and every loop is bounded by a configured cap.

Example:
    >>> g = group_closure([eta(25)], 25)
    >>> g.order, g.is_cyclic()
    (50, True)
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from divlab.arith.matmod import Mat2Mod, mat_mul, mat_order, mat_pow
from divlab.config import DivLabConfig
from divlab.errors import CapExceededError, ConfigError, MathDomainError
from divlab.utils.math_helpers import factorize, is_prime

logger = logging.getLogger(__name__)

DEFAULT_CLOSURE_CAP = 1_000_000
EXAMPLE_MODULUS = 4


def gl2_order(n: int) -> int:
    """|GL₂(Z/n)| = n⁴·Π_{p|n}(1 − 1/p)(1 − 1/p²)."""
    if n == 1:
        return 1
    order = 1
    for p, e in factorize(n).items():
        order *= p ** (4 * (e - 1)) * (p * p - 1) * (p * p - p)
    return order


@dataclass(frozen=True)
class MatrixGroup:
    """A finite subgroup of GL₂(Z/n) with the generators it was built from."""
    n: int
    elements: FrozenSet[Mat2Mod]
    generators: Tuple[Mat2Mod, ...] = ()

    @classmethod
    def from_elements(cls, elements: Iterable[Mat2Mod], n: int,
                      generators: Sequence[Mat2Mod] = ()) -> "MatrixGroup":
        """Wrap an explicit element set, checking it is a subgroup."""
        elems = frozenset(elements)
        if Mat2Mod.identity(n) not in elems:
            raise MathDomainError("not a group: identity missing")
        for g in elems:
            if g.n != n:
                raise MathDomainError(f"modulus mismatch: {g.n} vs {n}")
            for h in elems:
                if mat_mul(g, h) not in elems:
                    raise MathDomainError("not a group: not closed under products")
        group = cls(n, elems, tuple(generators))
        if not generators:
            group = cls(n, elems, tuple(group.minimal_generators()))
        return group

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.elements

    def __iter__(self) -> Iterator[Mat2Mod]:
        return iter(sorted(self.elements))

    def identity(self) -> Mat2Mod:
        return Mat2Mod.identity(self.n)

    def element_orders(self) -> Dict[Mat2Mod, int]:
        return {g: mat_order(g) for g in self}

    def is_abelian(self) -> bool:
        gens = self.generators or tuple(self.elements)
        return all(mat_mul(g, h) == mat_mul(h, g) for g in gens for h in gens)

    def exponent(self) -> int:
        return reduce(math.lcm, self.element_orders().values(), 1)

    def is_elementary_abelian(self) -> bool:
        """Abelian of prime exponent (the trivial group counts)."""
        if self.order == 1:
            return True
        e = self.exponent()
        return self.is_abelian() and is_prime(e)

    def cyclic_generator(self) -> Optional[Mat2Mod]:
        """Least element (in sorted order) whose order is |G|, if any."""
        for g in self:
            if mat_order(g) == self.order:
                return g
        return None

    def is_cyclic(self) -> bool:
        return self.cyclic_generator() is not None

    def minimal_generators(self) -> List[Mat2Mod]:
        """
        Greedy generating set: repeatedly add an element of largest order not yet generated.

        Minimal for cyclic and elementary abelian groups, small otherwise.
        """
        candidates = sorted(self.elements, key=lambda g: (-mat_order(g), g))
        gens: List[Mat2Mod] = []
        span = {self.identity()}
        for g in candidates:
            if len(span) == self.order:
                break
            if g not in span:
                gens.append(g)
                span = set(group_closure(gens, self.n).elements)
        return gens

    def reduction_kernel(self, d: int) -> "MatrixGroup":
        """Kernel of reduction Z/n → Z/d restricted to this group."""
        kernel = [g for g in self if g.reduce(d).is_identity()]
        return MatrixGroup.from_elements(kernel, self.n)

    def to_dict(self) -> Dict:
        return {
            "modulus": self.n,
            "order": self.order,
            "generators": [g.rows() for g in self.generators],
            "abelian": self.is_abelian(),
            "exponent": self.exponent(),
        }


def group_closure(gens: Sequence[Mat2Mod], n: int, cap: int = DEFAULT_CLOSURE_CAP) -> MatrixGroup:
    """Breadth-first closure ⟨gens⟩ ⊂ GL₂(Z/n); finite, so inverses come for free."""
    for g in gens:
        if g.n != n:
            raise MathDomainError(f"modulus mismatch: {g.n} vs {n}")
        if not g.is_invertible():
            raise MathDomainError("singular element")
    ident = Mat2Mod.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mat_mul(g, s)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise CapExceededError("group closure", cap)
                queue.append(h)
    logger.debug(f"Closure of {len(gens)} generators mod {n}: order {len(seen)}")
    return MatrixGroup(n, frozenset(seen), tuple(gens))


# --- named elements -----------------------------------------------------------

def eta(n: int) -> Mat2Mod:
    """[[−1, 1], [0, −1]]."""
    return Mat2Mod(n, -1, 1, 0, -1)


def omega(n: int) -> Mat2Mod:
    """[[1, 1], [0, 1]]."""
    return Mat2Mod(n, 1, 1, 0, 1)


def eta_power_closed_form(k: int, n: int) -> Mat2Mod:
    """ηᵏ = [[1, −k], [0, 1]] for even k and [[−1, k], [0, −1]] for odd k."""
    if k % 2 == 0:
        return Mat2Mod(n, 1, -k, 0, 1)
    return Mat2Mod(n, -1, k, 0, -1)


def sigma_family(x: int, y: int, z: int, w: int) -> Mat2Mod:
    """Id + 2·[[x+w, y], [x+y+z, x+y]] mod 4."""
    return Mat2Mod(EXAMPLE_MODULUS,
                   1 + 2 * (x + w), 2 * y,
                   2 * (x + y + z), 1 + 2 * (x + y))


EXAMPLE_GENERATORS = (
    Mat2Mod.from_rows([[-1, 0], [2, -1]], EXAMPLE_MODULUS),
    Mat2Mod.from_rows([[1, 2], [2, -1]], EXAMPLE_MODULUS),
    Mat2Mod.from_rows([[1, 0], [2, 1]], EXAMPLE_MODULUS),
    Mat2Mod.from_rows([[-1, 0], [0, 1]], EXAMPLE_MODULUS),
)


def example_group() -> MatrixGroup:
    """
    The 16-element group of the worked example, built from the four displayed
    generators and from the σ(x, y, z, w) parametrisation; the two must agree.
    """
    displayed = group_closure(list(EXAMPLE_GENERATORS), EXAMPLE_MODULUS)
    family = {sigma_family(x, y, z, w)
              for x in range(2) for y in range(2) for z in range(2) for w in range(2)}
    basis = [sigma_family(1, 0, 0, 0), sigma_family(0, 1, 0, 0),
             sigma_family(0, 0, 1, 0), sigma_family(0, 0, 0, 1)]
    if tuple(basis) != EXAMPLE_GENERATORS or set(displayed.elements) != family:
        raise MathDomainError("example group constructions disagree")
    return displayed


def sigma_coordinates(g: Mat2Mod) -> Tuple[int, int, int, int]:
    """Inverse of sigma_family on the example group: (x, y, z, w) mod 2."""
    if g.n != EXAMPLE_MODULUS or (g.a - 1) % 2 or g.b % 2 or g.c % 2 or (g.d - 1) % 2:
        raise MathDomainError(f"{g} is not of the form Id + 2M mod 4")
    m00, m01, m10, m11 = (g.a - 1) // 2 % 2, g.b // 2 % 2, g.c // 2 % 2, (g.d - 1) // 2 % 2
    y = m01
    x = (m11 - y) % 2
    z = (m10 - x - y) % 2
    w = (m00 - x) % 2
    return x, y, z, w


def general_linear_group(n: int, cap: int = DEFAULT_CLOSURE_CAP) -> MatrixGroup:
    if n ** 4 > cap:
        raise CapExceededError("GL2 enumeration", cap, needed=n ** 4)
    elements = [Mat2Mod(n, a, b, c, d)
                for a in range(n) for b in range(n) for c in range(n) for d in range(n)
                if math.gcd(a * d - b * c, n) == 1]
    return MatrixGroup.from_elements(elements, n)


def cyclic_subgroups(group: MatrixGroup) -> List[MatrixGroup]:
    """Every distinct ⟨g⟩ for g in the group, smallest first."""
    seen: Dict[FrozenSet[Mat2Mod], MatrixGroup] = {}
    for g in group:
        sub = group_closure([g], group.n)
        seen.setdefault(sub.elements, sub)
    return sorted(seen.values(), key=lambda h: (h.order, min(h.elements)))


def density_threshold(group: MatrixGroup) -> float:
    """1/|G|: lower bound for the density of primes whose Frobenius class is any fixed class."""
    if group.order == 0:
        raise MathDomainError("empty group")
    return 1.0 / group.order


# --- exhaustive checks at prime powers ---------------------------------------

def _prime_power(p: int, r: int, cap: int) -> int:
    if not is_prime(p):
        raise MathDomainError(f"{p} is not prime")
    if r < 1:
        raise MathDomainError("r ≥ 1 required")
    n = p ** r
    if n > cap:
        raise CapExceededError("prime power p^r", cap, needed=n)
    return n


def find_thm22_counterexample(p: int, r: int, cap: int = 10_000) -> Optional[Mat2Mod]:
    """
    Search mod pʳ for a σ breaking one of:

        σ = [[±1, α], [0, ±1 + kp]], σ² = Id  ⇒  α ≡ 0 and kp ≡ 0
        σ = [[1, α], [0, 1 + kp]],   σ³ = Id  ⇒  σ = Id

    Returns the first witness, or None when both hold.
    """
    n = _prime_power(p, r, cap)
    ident = Mat2Mod.identity(n)
    for e in (1, -1):
        for alpha in range(n):
            for k in range(p ** (r - 1)):
                sigma = Mat2Mod(n, e, alpha, 0, e + k * p)
                if mat_mul(sigma, sigma) == ident and (alpha % n or (k * p) % n):
                    return sigma
    for alpha in range(n):
        for k in range(p ** (r - 1)):
            sigma = Mat2Mod(n, 1, alpha, 0, 1 + k * p)
            if mat_pow(sigma, 3) == ident and sigma != ident:
                return sigma
    return None


def verify_thm22_core(p: int, r: int, cap: int = 10_000) -> bool:
    witness = find_thm22_counterexample(p, r, cap)
    if witness is not None:
        logger.info(f"p={p}, r={r}: witness {witness}")
    return witness is None


def verify_fixed_abscissa_core(p: int, r: int, cap: int = 10_000) -> bool:
    """Every σ = [[±1, 0], [0, 1]] mod pʳ with det σ ≡ 1 mod p is the identity."""
    n = _prime_power(p, r, cap)
    for e in (1, -1):
        sigma = Mat2Mod(n, e, 0, 0, 1)
        if sigma.det() % p == 1 % p and not sigma.is_identity():
            return False
    return True


class StabilizerKind(str, Enum):
    PLUS_MINUS_DET1 = "plus-minus-P1-det1"
    FIX_DET1 = "fix-P1-det1"
    PLUS_MINUS_DET1_MOD_P = "plus-minus-P1-det1-mod-p"


def stabilizer_enumeration(p: int, r: int, kind: StabilizerKind,
                           cap: int = 10_000) -> MatrixGroup:
    """
    Upper-triangular stabilisers of e₁ = (1, 0) mod pʳ.

    plus-minus-P1-det1:       σe₁ = ±e₁, det σ = 1        (= ⟨η⟩, order 2pʳ)
    fix-P1-det1:              σe₁ = e₁,  det σ = 1        (= ⟨ω⟩, order pʳ)
    plus-minus-P1-det1-mod-p: σe₁ = ±e₁, det σ ≡ 1 mod p  (order divides 2p^{2r−1})
    """
    if p <= 3:
        raise MathDomainError("p > 3 required")
    n = _prime_power(p, r, cap)
    kind = StabilizerKind(kind)
    signs = (1,) if kind is StabilizerKind.FIX_DET1 else (1, -1)
    elements = []
    for e in signs:
        for beta in range(n):
            for delta in range(n):
                sigma = Mat2Mod(n, e, beta, 0, delta)
                det = sigma.det()
                if kind is StabilizerKind.PLUS_MINUS_DET1_MOD_P:
                    ok = det % p == 1
                else:
                    ok = det == 1
                if ok:
                    elements.append(sigma)

    expected = {StabilizerKind.PLUS_MINUS_DET1: eta(n), StabilizerKind.FIX_DET1: omega(n)}.get(kind)
    if expected is not None:
        cyclic = group_closure([expected], n)
        if cyclic.elements != frozenset(elements):
            raise MathDomainError(f"{kind.value} stabiliser mod {n} is not generated by {expected}")
        logger.info(f"Stabiliser {kind.value} mod {n} = ⟨{expected}⟩, order {cyclic.order}")
        return cyclic
    return MatrixGroup.from_elements(elements, n)


# --- command-line group specs -------------------------------------------------

def _parse_matrix(text: str, n: int) -> Mat2Mod:
    try:
        a, b, c, d = (int(v) for v in text.split(","))
    except ValueError:
        raise ConfigError(f"matrix must be four integers a,b,c,d: {text!r}")
    return Mat2Mod(n, a, b, c, d)


def parse_group_spec(spec: str, config: Optional[DivLabConfig] = None) -> MatrixGroup:
    """
    "paper-sec6" | "cyclic:eta:N" | "cyclic:omega:N" | "gens:N:a,b,c,d;a,b,c,d;..."
    """
    cfg = config or DivLabConfig()
    if spec == "paper-sec6":
        return example_group()
    parts = spec.split(":")
    try:
        if parts[0] == "cyclic" and len(parts) == 3:
            n = int(parts[2])
            builder = {"eta": eta, "omega": omega}.get(parts[1])
            if builder is None:
                raise ConfigError(f"unknown cyclic family {parts[1]!r}")
            return group_closure([builder(n)], n, cfg.closure_cap)
        if parts[0] == "gens" and len(parts) == 3:
            n = int(parts[1])
            gens = [_parse_matrix(item, n) for item in parts[2].split(";") if item.strip()]
            return group_closure(gens, n, cfg.closure_cap)
    except ValueError as e:
        if isinstance(e, (ConfigError, MathDomainError)):
            raise
        raise ConfigError(f"bad group spec {spec!r}: {e}")
    raise ConfigError(f"bad group spec {spec!r}")
