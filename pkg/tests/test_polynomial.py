import random
from fractions import Fraction

import pytest

from divlab.arith.polynomial import UniPoly, poly_discriminant, poly_gcd, resultant
from divlab.errors import MathDomainError

X = UniPoly.x()


def test_discriminant_of_quadratic():
    assert poly_discriminant(UniPoly([-27, 2, 1])) == 112


def test_discriminant_of_short_cubic(example_curve):
    b, c = example_curve.b, example_curve.c
    assert poly_discriminant(example_curve.two_torsion_poly()) == -4 * b ** 3 - 27 * c ** 2
    assert 16 * poly_discriminant(example_curve.two_torsion_poly()) == example_curve.discriminant == 36578304


def test_discriminant_needs_degree_one():
    with pytest.raises(MathDomainError, match="degree too small"):
        poly_discriminant(UniPoly([5]))


def test_resultant_of_linear_factors():
    assert resultant(UniPoly([-2, 1]), UniPoly([-5, 1])) == -3
    assert resultant(UniPoly([-5, 1]), UniPoly([-2, 1])) == 3


def test_resultant_vanishes_on_common_root():
    f = (X - 1) * (X + 2)
    g = (X - 1) * (X - 3)
    assert resultant(f, g) == 0
    assert poly_gcd(f, g) == X - 1


def test_resultant_matches_root_product():
    rng = random.Random(7)
    for _ in range(20):
        roots_f = [rng.randint(-9, 9) for _ in range(rng.randint(1, 4))]
        roots_g = [rng.randint(-9, 9) for _ in range(rng.randint(1, 4))]
        f = UniPoly([1])
        for r in roots_f:
            f = f * (X - r)
        g = UniPoly([1])
        for s in roots_g:
            g = g * (X - s)
        expected = Fraction(1)
        for r in roots_f:
            expected *= g(Fraction(r))
        assert resultant(f, g) == expected


def test_divmod_and_evaluation():
    q, r = divmod(X * X - 1, X - 1)
    assert q == X + 1
    assert r.is_zero()
    f = UniPoly([Fraction(1, 2), 0, 3])
    assert f(Fraction(1, 3)) == Fraction(5, 6)
    assert f.derivative() == UniPoly([0, 6])


def test_content_and_primitive():
    content, prim = UniPoly([Fraction(1, 2), Fraction(-3, 4)]).content_and_primitive()
    assert content == Fraction(-1, 4)
    assert prim == UniPoly([-2, 3])
    assert prim.is_integral()


def test_squarefree_part_keeps_roots_once():
    f = (X - 1) ** 2 * (X + 2)
    assert f.squarefree_part() == UniPoly([-2, 1, 1])


def test_transforms():
    assert (X * X).taylor_shift(1) == UniPoly([1, 2, 1])
    assert UniPoly([1, 2, 3]).reversal() == UniPoly([3, 2, 1])
    assert UniPoly([2, 4]).monic() == UniPoly([Fraction(1, 2), 1])
    assert (X + 1).compose(X * X) == UniPoly([1, 0, 1])


def test_rendering():
    assert str(UniPoly([-27, 2, 1])) == "x^2 + 2*x - 27"
    assert str(UniPoly()) == "0"
    assert UniPoly().degree == -1


def test_integer_coefficients_rejects_fractions():
    with pytest.raises(MathDomainError):
        UniPoly([Fraction(1, 2)]).integer_coefficients()


def test_discriminant_divides_discriminant_of_product():
    rng = random.Random(11)
    for _ in range(60):
        f = UniPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 4))] + [rng.choice([1, 2, -3])])
        g = UniPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 4))] + [rng.choice([1, -1, 5])])
        disc_f = poly_discriminant(f)
        disc_fg = poly_discriminant(f * g)
        if disc_f == 0:
            assert disc_fg == 0
        else:
            assert (disc_fg / disc_f).denominator == 1
