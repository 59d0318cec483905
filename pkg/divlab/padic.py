"""
Local divisibility tests over Q_p and prime sweeps.

Root existence in Z_p is decided by a refinement tree. A node is a ball
a + p^k·Z_p carried with the rescaled polynomial g(x) = f(a + p^k x)/p^c;
children are the roots of g mod p. A candidate a is certified once

    v_p(f(a)) > 2·v_p(f′(a))

(Hensel), which guarantees a unique root of f with v_p(root − a) > v_p(f′(a)).
The search runs on the primitive squarefree part of f, so every branch
either certifies or dies within a bounded depth.

Example:
    >>> zp_root_exists(UniPoly([-2, 0, 1]), 7).exists
    True
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from divlab.arith.polynomial import UniPoly, poly_discriminant
from divlab.config import DivLabConfig
from divlab.curves.curve import Curve
from divlab.curves.division_poly import preimage_poly
from divlab.errors import CapExceededError, MathDomainError, PreconditionError
from divlab.utils.math_helpers import (
    is_prime,
    legendre_symbol,
    primes_up_to,
    valuation,
    valuation_q,
)

logger = logging.getLogger(__name__)

RationalPoint = Tuple[Fraction, Fraction]


class Mode(str, Enum):
    """What counts as local solvability at p."""
    ABSCISSA = "abscissa"  # some m-divisor abscissa lies in Q_p
    FULL = "full"          # ... and its ordinate is in Q_p as well


class Certificate(str, Enum):
    SIMPLE_ROOT_HENSEL = "simple-root-hensel"
    RECURSIVE_REFINEMENT = "recursive-refinement"
    EXHAUSTED_NO_ROOT = "exhausted-no-root"
    ORDINATE_NONSQUARE = "ordinate-nonsquare"


@dataclass(frozen=True)
class RootReport:
    """
    Outcome of a root search for f over Z_p or Q_p.

    The search and the certificate refer to g, the primitive squarefree part
    of f, which has the same roots; ``squarefree_reduced`` records that f had
    repeated factors. ``witness`` is a residue with g(witness) ≡ 0 mod
    p^precision and v_p(g′(witness)) = hensel_t, so 2·hensel_t + 1 ≤ precision.
    ``root_radius`` is the guaranteed v_p(root − witness).
    """
    prime: int
    exists: bool
    certificate: Certificate
    witness: Optional[int] = None
    precision: Optional[int] = None
    hensel_t: Optional[int] = None
    via_reversal: bool = False
    root_radius: Optional[int] = None
    squarefree_reduced: bool = False


@dataclass(frozen=True)
class _Ball:
    """Certified root ball of f: f(a) ≡ 0 mod p^precision and the unique root u has v_p(u − a) ≥ radius."""
    a: int
    level: int
    t: int
    precision: int
    radius: int


# --- integer polynomial helpers ----------------------------------------------

def _eval(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _eval_mod(coeffs: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _derivative(coeffs: Sequence[int]) -> List[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _shift(coeffs: Sequence[int], r: int, p: int) -> List[int]:
    """Coefficients of g(r + p·x)."""
    out: List[int] = [0]
    for c in reversed(coeffs):
        # out = out·(r + p x) + c
        nxt = [0] * (len(out) + 1)
        for i, a in enumerate(out):
            nxt[i] += a * r
            nxt[i + 1] += a * p
        nxt[0] += c
        out = nxt
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _strip_content(coeffs: List[int], p: int) -> List[int]:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    while g and g % p == 0:
        coeffs = [c // p for c in coeffs]
        g //= p
    return coeffs


def _roots_mod_p(coeffs: Sequence[int], p: int) -> List[int]:
    reduced = [c % p for c in coeffs]
    if not any(reduced[1:]):
        return []
    return [r for r in range(p) if _eval_mod(reduced, r, p) == 0]


def _vp(n: int, p: int) -> float:
    return math.inf if n == 0 else valuation(n, p)


@lru_cache(maxsize=64)
def _prepared(f: UniPoly) -> Tuple[int, ...]:
    if f.is_zero():
        raise MathDomainError("zero polynomial")
    if not f.is_integral():
        raise MathDomainError("integer coefficients required")
    if f.degree < 1:
        return tuple(f.primitive().integer_coefficients())
    return tuple(f.squarefree_part().integer_coefficients())


def _prepare(f: UniPoly) -> List[int]:
    """Squarefree primitive integer coefficients with the same roots as f."""
    return list(_prepared(f))


@lru_cache(maxsize=64)
def _discriminant(coeffs: Tuple[int, ...]) -> Fraction:
    return poly_discriminant(UniPoly(coeffs))


def _depth_limit(coeffs: List[int], p: int, precision_cap: int) -> int:
    deg = len(coeffs) - 1
    if deg < 1:
        return 1
    disc = _discriminant(tuple(coeffs))
    v = valuation_q(disc, p) if disc != 0 else 0
    return min(2 * max(v, 0) + deg + 3, precision_cap)


def _certify(coeffs: Sequence[int], deriv: Sequence[int], a: int, p: int) -> Optional[Tuple[int, float]]:
    """(t, v_p(f(a))) when a is a Hensel witness, else None."""
    fa = _eval(coeffs, a)
    fpa = _eval(deriv, a)
    if fpa == 0:
        return None
    t = valuation(fpa, p)
    vf = _vp(fa, p)
    if vf > 2 * t:
        return t, vf
    return None


def _search(coeffs: List[int], p: int, precision_cap: int, find_all: bool) -> List[_Ball]:
    """Depth-first refinement; with find_all, every returned ball isolates exactly one root."""
    if len(coeffs) < 2:
        return []
    deriv = _derivative(coeffs)
    limit = _depth_limit(coeffs, p, precision_cap)
    found: List[_Ball] = []
    stack: List[Tuple[List[int], int, int]] = [(coeffs, 0, 0)]
    while stack:
        g, a, k = stack.pop()
        for r in _roots_mod_p(g, p):
            a2 = a + p ** k * r
            k2 = k + 1
            cert = _certify(coeffs, deriv, a2, p)
            if cert is not None:
                t, vf = cert
                precision = int(min(vf, precision_cap))
                radius = int(min(vf - t, precision_cap))
                if not find_all:
                    return [_Ball(a2, k2, t, precision, radius)]
                # the root is inside this ball and alone in it
                if k2 > t and radius >= k2:
                    found.append(_Ball(a2, k2, t, precision, radius))
                    continue
            if k2 >= limit:
                raise CapExceededError(f"p-adic refinement depth at p={p}", limit)
            child = _strip_content(_shift(g, r, p), p)
            stack.append((child, a2, k2))
    return sorted(found, key=lambda ball: ball.a)


def _report(p: int, balls: List[_Ball], via_reversal: bool, reduced: bool) -> RootReport:
    if not balls:
        return RootReport(p, False, Certificate.EXHAUSTED_NO_ROOT, via_reversal=via_reversal,
                          squarefree_reduced=reduced)
    ball = balls[0]
    cert = Certificate.SIMPLE_ROOT_HENSEL if ball.level == 1 else Certificate.RECURSIVE_REFINEMENT
    return RootReport(p, True, cert, ball.a, ball.precision, ball.t, via_reversal, ball.radius, reduced)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise MathDomainError(f"{p} is not prime")


# --- public root tests --------------------------------------------------------

def zp_root_exists(f: UniPoly, p: int, precision_cap: int = 1 << 14) -> RootReport:
    _check_prime(p)
    coeffs = _prepare(f)
    balls = _search(coeffs, p, precision_cap, find_all=False)
    report = _report(p, balls, via_reversal=False, reduced=len(coeffs) - 1 < f.degree)
    logger.debug(f"Z_{p} root search: {report.certificate.value}")
    return report


def qp_root_exists(f: UniPoly, p: int, precision_cap: int = 1 << 14) -> RootReport:
    """Roots of valuation ≥ 0 via f, roots of negative valuation via the reversal."""
    report = zp_root_exists(f, p, precision_cap)
    if report.exists or _prepare(f)[-1] % p:
        return report
    rev = zp_root_exists(f.reversal(), p, precision_cap)
    if rev.exists:
        return RootReport(p, True, rev.certificate, rev.witness, rev.precision, rev.hensel_t, True,
                          rev.root_radius, report.squarefree_reduced)
    return report


def lift_root(coeffs: Sequence[int], a: int, p: int, target: int) -> Tuple[int, int]:
    """
    Newton-lift a Hensel witness until the root is known to ``target`` p-adic digits.

    Returns (approximation, digits known).
    """
    deriv = _derivative(coeffs)
    while True:
        fa = _eval(coeffs, a)
        if fa == 0:
            return a, target
        fpa = _eval(deriv, a)
        t = valuation(fpa, p)
        digits = valuation(fa, p) - t
        if digits >= target:
            return a, digits
        modulus = p ** (2 * target + 2 * t + 2)
        unit = (fpa // p ** t) % modulus
        a = (a - (fa // p ** t) * pow(unit, -1, modulus)) % modulus


def is_qp_square(q: Fraction, p: int) -> bool:
    """q ∈ (Q_p)²: even valuation and a square unit part (≡ 1 mod 8 when p = 2)."""
    q = Fraction(q)
    if q == 0:
        return True
    v = valuation_q(q, p)
    if v % 2:
        return False
    num = q.numerator // p ** max(v, 0)
    den = q.denominator // p ** max(-v, 0)
    if p == 2:
        return (num * den) % 8 == 1
    return legendre_symbol(num * den, p) == 1


def _ordinate_value(curve: Curve, root: int, via_reversal: bool) -> Fraction:
    """x³+bx+c at x = root, or r⁴·(x³+bx+c) = r + br³ + cr⁴ at x = 1/r."""
    if via_reversal:
        return root + curve.b * root ** 3 + curve.c * root ** 4
    return curve.rhs(Fraction(root))


def _square_verdict(value: Fraction, digits: int, slack: int, p: int) -> Optional[bool]:
    """Square class of the true value when ``digits`` of the root pin it down, else None."""
    if value == 0:
        return None
    need = 3 if p == 2 else 1
    if valuation_q(value, p) + need <= digits + slack:
        return is_qp_square(value, p)
    return None


def qp_roots(f: UniPoly, p: int, precision_cap: int = 1 << 14) -> List[Tuple[int, int, bool]]:
    """All isolated Q_p roots as (approximation, digits, via_reversal)."""
    _check_prime(p)
    out: List[Tuple[int, int, bool]] = []
    for ball in _search(_prepare(f), p, precision_cap, find_all=True):
        out.append((ball.a, ball.radius, False))
    if f.degree < 1:
        return out
    # roots of negative valuation are the inverses of reversal roots divisible by p
    for ball in _search(_prepare(f.reversal()), p, precision_cap, find_all=True):
        if ball.a % p == 0:
            out.append((ball.a, ball.radius, True))
    return out


def _full_mode_solvable(curve: Curve, f: UniPoly, p: int, precision_cap: int) -> bool:
    b, c = curve.b, curve.c
    slack = min(0, valuation_q(b, p) if b else 0, valuation_q(c, p) if c else 0)
    for approx, _, via_reversal in qp_roots(f, p, precision_cap):
        coeffs = _prepare(f.reversal() if via_reversal else f)
        target = 8
        while True:
            approx, digits = lift_root(coeffs, approx, p, target)
            value = _ordinate_value(curve, approx, via_reversal)
            if _eval(coeffs, approx) == 0:
                verdict: Optional[bool] = is_qp_square(value, p)
            else:
                verdict = _square_verdict(value, digits, slack, p)
            if verdict is not None:
                if verdict:
                    return True
                break
            target *= 2
            if target > precision_cap:
                raise CapExceededError(f"ordinate square test precision at p={p}", precision_cap)
    return False


# --- local divisibility and sweeps -------------------------------------------

@lru_cache(maxsize=256)
def _cached_preimage(b: Fraction, c: Fraction, m: int, x: Fraction) -> UniPoly:
    return preimage_poly(Curve(b, c), m, x)


def _require_on_curve(curve: Curve, P: RationalPoint) -> Tuple[Fraction, Fraction]:
    x, y = Fraction(P[0]), Fraction(P[1])
    if not curve.contains(x, y):
        raise PreconditionError(f"point ({x}, {y}) is not on the curve")
    return x, y


def _classify(curve: Curve, f: UniPoly, p: int, mode: Mode, precision_cap: int) -> Tuple[bool, Certificate]:
    report = qp_root_exists(f, p, precision_cap)
    if mode is Mode.ABSCISSA or not report.exists:
        return report.exists, report.certificate
    if _full_mode_solvable(curve, f, p, precision_cap):
        return True, report.certificate
    return False, Certificate.ORDINATE_NONSQUARE


def local_divisibility_verdict(curve: Curve, P: RationalPoint, m: int, p: int,
                               mode: Mode = Mode.ABSCISSA,
                               precision_cap: int = 1 << 14) -> Tuple[bool, Certificate]:
    """Solvability of [m]Q = P over Q_p together with the certificate behind it."""
    x, _ = _require_on_curve(curve, P)
    f = _cached_preimage(curve.b, curve.c, m, x)
    return _classify(curve, f, p, Mode(mode), precision_cap)


def local_divisibility_test(curve: Curve, P: RationalPoint, m: int, p: int,
                            mode: Mode = Mode.ABSCISSA, precision_cap: int = 1 << 14) -> bool:
    return local_divisibility_verdict(curve, P, m, p, mode, precision_cap)[0]


def _sweep_worker(args) -> Tuple[int, bool, str]:
    b, c, coeffs, p, mode, precision_cap = args
    curve = Curve(b, c)
    ok, cert = _classify(curve, UniPoly(coeffs), p, Mode(mode), precision_cap)
    return p, ok, cert.value


@dataclass
class SweepReport:
    curve_id: str
    m: int
    mode: Mode
    limit: int
    solvable: List[int]
    unsolvable: List[int]
    certificates: Dict[int, str] = field(default_factory=dict)
    threshold: Optional[float] = None

    @property
    def density_unsolvable(self) -> Fraction:
        total = len(self.solvable) + len(self.unsolvable)
        return Fraction(len(self.unsolvable), total) if total else Fraction(0)

    def summary_line(self) -> str:
        line = (f"solvable={len(self.solvable)} unsolvable={len(self.unsolvable)} "
                f"density={float(self.density_unsolvable):.12g}")
        if self.threshold is not None:
            line += f" threshold={self.threshold:.12g}"
        return line

    def to_frame(self) -> pd.DataFrame:
        rows = [{"prime": p, "mode": self.mode.value, "solvable": int(p in set(self.solvable)),
                 "certificate": self.certificates.get(p, "")}
                for p in sorted(self.solvable + self.unsolvable)]
        return pd.DataFrame(rows, columns=["prime", "mode", "solvable", "certificate"])

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, lineterminator="\n")

    def to_dict(self, digits: int = 12) -> Dict:
        density = self.density_unsolvable
        return {
            "curve_id": self.curve_id,
            "m": self.m,
            "mode": self.mode.value,
            "limit": self.limit,
            "solvable": self.solvable,
            "unsolvable": self.unsolvable,
            "density_unsolvable": f"{density.numerator}/{density.denominator}",
            "density_unsolvable_float": float(format(float(density), f".{digits}g")),
            "threshold": self.threshold,
        }


def sweep(curve: Curve, P: RationalPoint, m: int, limit: int,
          mode: Mode = Mode.ABSCISSA, group_order: Optional[int] = None,
          config: Optional[DivLabConfig] = None) -> SweepReport:
    """Classify every prime ≤ limit; the report is in ascending prime order whatever the schedule."""
    if limit < 2:
        raise MathDomainError("limit ≥ 2 required")
    cfg = config or DivLabConfig()
    mode = Mode(mode)
    x, _ = _require_on_curve(curve, P)
    f = _cached_preimage(curve.b, curve.c, m, x)
    primes = primes_up_to(limit)
    jobs = [(curve.b, curve.c, f.integer_coefficients(), p, mode.value, cfg.precision_cap)
            for p in primes]

    if cfg.sweep_workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.sweep_workers) as pool:
            results = list(pool.map(_sweep_worker, jobs, chunksize=16))
    else:
        results = [_sweep_worker(job) for job in jobs]

    results.sort()
    solvable = [p for p, ok, _ in results if ok]
    unsolvable = [p for p, ok, _ in results if not ok]
    report = SweepReport(
        curve_id=curve.label or f"b={curve.b},c={curve.c}",
        m=m, mode=mode, limit=limit,
        solvable=solvable, unsolvable=unsolvable,
        certificates={p: cert for p, _, cert in results},
        threshold=None if group_order is None else 1.0 / group_order,
    )
    logger.info(f"Sweep to {limit} ({mode.value}): {report.summary_line()}")
    return report


def compare_modes(curve: Curve, P: RationalPoint, m: int, limit: int,
                  config: Optional[DivLabConfig] = None) -> Dict[str, List[int]]:
    """Primes where the abscissa test passes but the full test does not."""
    loose = sweep(curve, P, m, limit, Mode.ABSCISSA, config=config)
    strict = sweep(curve, P, m, limit, Mode.FULL, config=config)
    gap = sorted(set(loose.solvable) - set(strict.solvable))
    return {"abscissa_only": gap, "full": strict.solvable, "abscissa": loose.solvable}
