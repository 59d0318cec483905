import math
from decimal import ROUND_CEILING, Decimal
from fractions import Fraction
from typing import Dict, List, Tuple, Union

import numpy as np

RationalLike = Union[int, Fraction, str]


def to_fraction(value: RationalLike) -> Fraction:
    """Exact conversion; decimal strings such as "-171" or "1.25" are accepted, floats are not."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError("binary floats are not exact; pass a decimal string")
    return Fraction(value)


def log_plus(x: float) -> float:
    """log⁺x = max(0, log x), with log⁺0 = 0."""
    if x <= 1:
        return 0.0
    return math.log(x)


def log_abs_int(n: int) -> float:
    """log|n| for a nonzero integer of any size."""
    n = abs(n)
    if n == 0:
        raise ValueError("log of zero")
    try:
        return math.log(n)
    except OverflowError:
        bits = n.bit_length() - 53
        return math.log(n >> bits) + bits * math.log(2)


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_q(q: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def factorize(n: int) -> Dict[int, int]:
    """Trial-division factorization of |n|; radicands here are small."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    factors: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def squarefree_part(n: int) -> Tuple[int, int]:
    """
    Split a nonzero integer as n = s²·d with d squarefree (sign kept in d).

    Returns:
        (s, d)
    """
    if n == 0:
        raise ValueError("squarefree part of zero")
    s, d = 1, -1 if n < 0 else 1
    for prime, e in factorize(n).items():
        s *= prime ** (e // 2)
        if e % 2:
            d *= prime
    return s, d


def rational_sqrt_split(q: Fraction) -> Tuple[Fraction, int]:
    """Write q = c²·d with c rational and d a squarefree integer."""
    q = Fraction(q)
    s, d = squarefree_part(q.numerator * q.denominator)
    return Fraction(s, q.denominator), d


def is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_prime(n: int) -> bool:
    """Deterministic trial division; used only for argument validation."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(limit: int) -> List[int]:
    """Sieve of Eratosthenes over a numpy boolean array."""
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def round_up_sig(x: float, digits: int = 12) -> float:
    """Round an upper bound up to ``digits`` significant digits, never down."""
    if x == 0 or math.isinf(x) or math.isnan(x):
        return x
    d = Decimal(repr(x))
    quantum = Decimal(1).scaleb(d.adjusted() - digits + 1)
    return float(d.quantize(quantum, rounding=ROUND_CEILING))


def round_sig(x: float, digits: int = 12) -> float:
    """Round to ``digits`` significant digits (nearest)."""
    if x == 0 or math.isinf(x) or math.isnan(x):
        return x
    return float(format(x, f".{digits}g"))
