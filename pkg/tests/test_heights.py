import math
import random
from fractions import Fraction

import pytest

from divlab.arith.multiquad import Tower
from divlab.arith.polynomial import UniPoly
from divlab.curves.division_poly import abscissa_height_bound
from divlab.errors import MathDomainError
from divlab.heights import (
    check_gelfand,
    check_min_poly_bound,
    log_height_multiquad,
    log_height_point,
    log_height_poly,
    log_height_rational,
    log_mahler_measure,
)
from divlab.reference import example_abscissas

TOL = 1e-9


def _random_rational(rng: random.Random) -> Fraction:
    num = rng.randint(-10 ** 6, 10 ** 6) or 1
    return Fraction(num, rng.randint(1, 10 ** 6))


def test_rational_heights():
    assert log_height_rational(0) == 0.0
    assert log_height_rational(1) == 0.0
    assert log_height_rational(Fraction(-171, 4)) == pytest.approx(math.log(171))
    assert log_height_rational(Fraction(3, 10)) == pytest.approx(math.log(10))


def test_power_rule():
    rng = random.Random(31)
    for _ in range(1000):
        q = _random_rational(rng)
        n = rng.randint(-4, 4)
        if n == 0:
            continue
        assert log_height_rational(q ** n) == pytest.approx(abs(n) * log_height_rational(q), rel=TOL)


def test_product_rule():
    rng = random.Random(32)
    for _ in range(1000):
        a, b = _random_rational(rng), _random_rational(rng)
        assert log_height_rational(a * b) <= log_height_rational(a) + log_height_rational(b) + TOL


def test_sum_rule():
    rng = random.Random(33)
    for _ in range(1000):
        a, b = _random_rational(rng), _random_rational(rng)
        bound = log_height_rational(a) + log_height_rational(b) + math.log(2)
        assert log_height_rational(a + b) <= bound + TOL


def test_inverse_rule():
    rng = random.Random(34)
    for _ in range(1000):
        q = _random_rational(rng)
        assert log_height_rational(1 / q) == pytest.approx(log_height_rational(q), rel=TOL, abs=TOL)


def test_projective_point_height():
    assert log_height_point([2, 4, 6]) == pytest.approx(math.log(3))
    assert log_height_point([Fraction(1, 2), 1]) == pytest.approx(math.log(2))
    with pytest.raises(MathDomainError):
        log_height_point([0, 0])


def test_polynomial_height_is_projective():
    assert log_height_poly(UniPoly([2, 4, 6])) == pytest.approx(math.log(3))
    assert log_height_poly(UniPoly([Fraction(1, 2), 3])) == pytest.approx(math.log(6))
    with pytest.raises(MathDomainError):
        log_height_poly(UniPoly())


def test_mahler_measure():
    assert log_mahler_measure(UniPoly([-2, 0, 1])) == pytest.approx(math.log(2))
    assert log_mahler_measure(UniPoly([1, 1])) == pytest.approx(0.0, abs=TOL)


def test_tower_heights():
    T = Tower((7,))
    assert log_height_multiquad(Tower((2,)).sqrt(2)) == pytest.approx(math.log(2) / 2)
    x = T.from_terms([(-1, 1), (2, 7)])
    assert x.minimal_polynomial() == UniPoly([-27, 2, 1])
    assert log_height_multiquad(x) == pytest.approx(math.log(27) / 2)
    assert log_height_multiquad(T.rational(Fraction(5, 3))) == pytest.approx(math.log(5))


def test_min_poly_bound():
    x = Tower((7,)).from_terms([(-1, 1), (2, 7)])
    check = check_min_poly_bound(x)
    assert check.holds
    assert check.h_falpha == pytest.approx(math.log(27))
    with pytest.raises(MathDomainError):
        check_min_poly_bound(Tower((7,)).rational(3))


def test_gelfand_chain():
    rng = random.Random(35)
    for _ in range(200):
        coeffs = [rng.randint(-50, 50) for _ in range(rng.randint(2, 6))]
        coeffs.append(rng.randint(1, 20))
        assert check_gelfand(UniPoly(coeffs)).holds
    with pytest.raises(MathDomainError):
        check_gelfand(UniPoly([3]))


def test_divisor_abscissas_within_bounds(example_curve, abscissa_tower):
    limit = abscissa_height_bound(4, example_curve)
    for terms in example_abscissas():
        x = abscissa_tower.from_terms(terms)
        assert log_height_multiquad(x) <= limit
        if not x.is_rational():
            assert check_min_poly_bound(x).holds


def _random_tower_element(rng: random.Random, tower: Tower):
    return tower.element({mask: rng.randint(-6, 6) for mask in range(tower.dim)})


def test_product_rule_in_a_tower():
    rng = random.Random(36)
    T = Tower((2, 3))
    for _ in range(60):
        a, b = _random_tower_element(rng, T), _random_tower_element(rng, T)
        bound = log_height_multiquad(a) + log_height_multiquad(b)
        assert log_height_multiquad(a * b) <= bound + TOL


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_sum_rule_for_several_terms(r):
    rng = random.Random(40 + r)
    for _ in range(300):
        terms = [_random_rational(rng) for _ in range(r)]
        bound = sum(log_height_rational(q) for q in terms) + math.log(r)
        assert log_height_rational(sum(terms)) <= bound + TOL


def test_height_is_invariant_under_conjugation():
    rng = random.Random(37)
    T = Tower((-1, 2, 5))
    for _ in range(20):
        x = _random_tower_element(rng, T)
        h = log_height_multiquad(x)
        for flip in range(T.dim):
            assert log_height_multiquad(x.conjugate(flip)) == pytest.approx(h, rel=TOL, abs=TOL)
