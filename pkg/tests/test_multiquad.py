import random
from fractions import Fraction

import pytest

from divlab.arith.multiquad import Tower, mq_mul
from divlab.errors import MathDomainError


def test_square_roots_multiply_to_radicands():
    T = Tower((2, 3))
    assert T.sqrt(2) * T.sqrt(2) == 2
    assert T.sqrt(6) == T.sqrt(2) * T.sqrt(3)
    assert T.sqrt(8) == T.sqrt(2) * 2
    assert T.sqrt(Fraction(9, 4)) == Fraction(3, 2)


def test_negative_radicands(abscissa_tower):
    T = abscissa_tower
    assert T.radicands == (-1, 2, 3, 7)
    assert T.sqrt(-1) * T.sqrt(-1) == -1
    assert T.sqrt(-6) == T.sqrt(-1) * T.sqrt(2) * T.sqrt(3)
    assert T.sqrt(-6) * T.sqrt(-6) == -6
    assert T.sqrt(-1).to_complex() == pytest.approx(1j)


def test_sqrt_outside_tower():
    with pytest.raises(MathDomainError):
        Tower((2, 3)).sqrt(5)


def test_tower_validation():
    with pytest.raises(MathDomainError):
        Tower((2, 4))
    with pytest.raises(MathDomainError):
        Tower((2, 6))
    with pytest.raises(MathDomainError):
        Tower((1,))


def test_covering_uses_prime_radicands():
    assert Tower.covering([3, 24, -3, 21]).radicands == (-1, 2, 3, 7)
    assert Tower.covering([7]).radicands == (7,)


def test_inverse_and_division():
    T = Tower((2, 3))
    x = T.one() + T.sqrt(2) + T.sqrt(3)
    assert x * x.inverse() == 1
    assert (x / x) == 1
    assert x ** -2 * x ** 2 == 1
    with pytest.raises(ZeroDivisionError):
        T.zero().inverse()


def test_norm():
    assert (1 + Tower((2,)).sqrt(2)).norm() == -1
    assert (1 + Tower((2, 3)).sqrt(2)).norm() == 1


def test_minimal_polynomial():
    T = Tower((2, 3))
    alpha = T.sqrt(2) + T.sqrt(3)
    assert alpha.minimal_polynomial().coefficients == (1, 0, -10, 0, 1)
    assert len(alpha.conjugates()) == 4
    assert T.sqrt(2).minimal_polynomial().coefficients == (-2, 0, 1)


def test_conjugation_flips_signs():
    T = Tower((2, 3))
    x = T.sqrt(2) + T.sqrt(3)
    assert x.conjugate(0b01) == T.sqrt(3) - T.sqrt(2)
    assert x.conjugate(0b11) == -x


def test_incompatible_towers():
    with pytest.raises(MathDomainError, match="incompatible towers"):
        Tower((2,)).one() + Tower((3,)).one()


def test_embed_into_larger_tower():
    small, big = Tower((2,)), Tower((2, 3))
    assert small.sqrt(2).embed(big) == big.sqrt(2)
    with pytest.raises(MathDomainError):
        big.sqrt(3).embed(small)


def test_from_terms_and_rendering():
    T = Tower((7,))
    x = T.from_terms([(-1, 1), (2, 7)])
    assert str(x) == "-1 + 2*sqrt(7)"
    assert str(T.zero()) == "0"
    assert x.to_complex().real == pytest.approx(-1 + 2 * 7 ** 0.5)


def test_mq_mul_norm_of_lift_abscissa():
    T = Tower((7,))
    x = T.from_terms([(-1, 1), (2, 7)])
    assert mq_mul(x, x.conjugate(0b1)) == -27
    with pytest.raises(MathDomainError, match="incompatible towers"):
        mq_mul(x, Tower((2,)).one())


def test_multiplication_is_commutative_and_associative(abscissa_tower):
    rng = random.Random(21)
    T = abscissa_tower

    def sample():
        return T.element({mask: rng.randint(-4, 4) for mask in range(T.dim) if rng.random() < 0.5})

    for _ in range(40):
        x, y, z = sample(), sample(), sample()
        assert mq_mul(x, y) == mq_mul(y, x)
        assert mq_mul(mq_mul(x, y), z) == mq_mul(x, mq_mul(y, z))


def test_basis_products_follow_radicands(abscissa_tower):
    T = abscissa_tower
    for i in range(T.dim):
        for j in range(T.dim):
            ei, ej = T.element({i: 1}), T.element({j: 1})
            assert mq_mul(ei, ej) == mq_mul(ej, ei)
            assert mq_mul(ei, ei) == T.product(i)
