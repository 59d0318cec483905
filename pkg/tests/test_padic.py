import random
from fractions import Fraction

import pytest

from divlab.arith.polynomial import UniPoly, poly_discriminant
from divlab.config import DivLabConfig
from divlab.errors import MathDomainError, PreconditionError
from divlab.padic import (
    Certificate,
    Mode,
    compare_modes,
    is_qp_square,
    lift_root,
    local_divisibility_test,
    local_divisibility_verdict,
    qp_root_exists,
    qp_roots,
    sweep,
    zp_root_exists,
)
from divlab.reference import example_prime_lists
from divlab.utils.math_helpers import primes_up_to, valuation

X = UniPoly.x()


def test_square_root_of_two():
    report = zp_root_exists(X * X - 2, 7)
    assert report.exists
    assert report.certificate is Certificate.SIMPLE_ROOT_HENSEL
    assert (report.witness ** 2 - 2) % 7 == 0
    assert not zp_root_exists(X * X - 2, 5).exists
    assert zp_root_exists(X * X - 2, 5).certificate is Certificate.EXHAUSTED_NO_ROOT


def test_dyadic_squares():
    assert not zp_root_exists(X * X - 2, 2).exists
    assert not zp_root_exists(X * X - 3, 2).exists
    assert zp_root_exists(X * X + 7, 2).exists
    assert zp_root_exists(X * X - 17, 2).exists


def test_repeated_roots_are_handled():
    f = (X - 3) ** 2 * (X * X - 2)
    report = zp_root_exists(f, 5)
    assert report.exists
    assert report.witness % 5 == 3
    assert report.squarefree_reduced
    assert not zp_root_exists(X * X - 2, 7).squarefree_reduced


def test_negative_valuation_roots_use_the_reversal():
    f = X * 7 - 1
    assert not zp_root_exists(f, 7).exists
    report = qp_root_exists(f, 7)
    assert report.exists
    assert report.via_reversal


def test_input_validation():
    with pytest.raises(MathDomainError):
        zp_root_exists(X * X - 2, 9)
    with pytest.raises(MathDomainError, match="integer coefficients"):
        zp_root_exists(UniPoly([Fraction(1, 2), 1]), 3)
    with pytest.raises(MathDomainError, match="zero polynomial"):
        zp_root_exists(UniPoly(), 3)


def test_newton_lifting():
    approx, digits = lift_root([-2, 0, 1], 3, 7, 10)
    assert digits >= 10
    assert (approx * approx - 2) % 7 ** 10 == 0


def test_square_classes():
    assert is_qp_square(Fraction(2), 7)
    assert not is_qp_square(Fraction(3), 7)
    assert is_qp_square(Fraction(2, 49), 7)
    assert not is_qp_square(Fraction(7), 7)
    assert is_qp_square(Fraction(17), 2)
    assert not is_qp_square(Fraction(5), 2)
    assert is_qp_square(Fraction(9, 4), 2)


def test_all_roots():
    roots = qp_roots(X * X - 2, 7)
    assert len(roots) == 2
    assert all(not via for _, _, via in roots)
    assert sorted(a % 7 for a, _, _ in roots) == [3, 4]
    inverse_roots = qp_roots(X * 7 - 1, 7)
    assert len(inverse_roots) == 1
    assert inverse_roots[0][2]


def test_point_must_be_on_curve(example_curve):
    with pytest.raises(PreconditionError):
        local_divisibility_test(example_curve, (1, 1), 4, 3)


def test_small_primes(example_curve, example_point):
    assert not local_divisibility_test(example_curve, example_point, 4, 2)
    assert local_divisibility_test(example_curve, example_point, 4, 3)
    ok, cert = local_divisibility_verdict(example_curve, example_point, 4, 5)
    assert not ok
    assert cert is Certificate.EXHAUSTED_NO_ROOT


def test_sweep_prefix(example_curve, example_point):
    report = sweep(example_curve, example_point, 4, 20, group_order=16)
    assert report.unsolvable == [2, 5, 11]
    assert report.solvable == [3, 7, 13, 17, 19]
    assert report.density_unsolvable == Fraction(3, 8)
    assert report.summary_line() == "solvable=5 unsolvable=3 density=0.375 threshold=0.0625"


def test_sweep_csv(example_curve, example_point):
    report = sweep(example_curve, example_point, 4, 12)
    lines = report.to_csv().splitlines()
    assert lines[0] == "prime,mode,solvable,certificate"
    assert lines[1] == "2,abscissa,0,exhausted-no-root"
    assert len(lines) == 1 + 5


def test_sweep_limit(example_curve, example_point):
    with pytest.raises(MathDomainError):
        sweep(example_curve, example_point, 4, 1)


def test_full_mode_is_stricter(example_curve, example_point):
    loose = sweep(example_curve, example_point, 4, 60, Mode.ABSCISSA)
    strict = sweep(example_curve, example_point, 4, 60, Mode.FULL)
    assert set(strict.solvable) <= set(loose.solvable)
    gap = compare_modes(example_curve, example_point, 4, 60)
    assert gap["abscissa_only"] == sorted(set(loose.solvable) - set(strict.solvable))


@pytest.mark.slow
def test_sweep_to_one_thousand(example_curve, example_point):
    solvable, unsolvable = example_prime_lists()
    report = sweep(example_curve, example_point, 4, 1000, group_order=16)
    assert report.solvable == solvable
    assert report.unsolvable == unsolvable
    assert report.density_unsolvable == Fraction(45, 168)
    assert float(report.density_unsolvable) > 1 / 16


@pytest.mark.slow
def test_parallel_sweep_matches_serial(example_curve, example_point):
    serial = sweep(example_curve, example_point, 4, 200)
    parallel = sweep(example_curve, example_point, 4, 200, config=DivLabConfig(sweep_workers=2))
    assert parallel.solvable == serial.solvable
    assert parallel.certificates == serial.certificates


def _eval_int(coeffs, a):
    return sum(c * a ** i for i, c in enumerate(coeffs))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_hensel_witnesses_are_certified(p):
    rng = random.Random(100 + p)
    certified = 0
    for _ in range(150):
        coeffs = [rng.randint(-30, 30) for _ in range(rng.randint(2, 5))] + [1]
        f = UniPoly(coeffs)
        if poly_discriminant(f) == 0:
            continue
        report = zp_root_exists(f, p)
        if not report.exists:
            continue
        assert not report.squarefree_reduced
        a, t = report.witness, report.hensel_t
        deriv = [i * c for i, c in enumerate(coeffs)][1:]
        assert valuation(_eval_int(deriv, a), p) == t
        assert _eval_int(coeffs, a) % p ** (2 * t + 1) == 0
        assert 2 * t + 1 <= report.precision
        assert _eval_int(coeffs, a) % p ** min(report.precision, 60) == 0
        assert report.root_radius >= 1
        certified += 1
    assert certified > 0


def test_rational_roots_are_found_at_every_prime():
    rng = random.Random(41)
    for _ in range(25):
        f = UniPoly([rng.randint(1, 9), 0, 1])
        for _ in range(rng.randint(1, 3)):
            a = rng.choice([1, 2, 3, 5, 7, 12, 25])
            f = f * UniPoly([-rng.randint(-30, 30), a])
        for p in primes_up_to(50):
            assert qp_root_exists(f, p).exists, (f, p)


@pytest.mark.slow
@pytest.mark.parametrize("limit", [500, 1000, 2000])
def test_unsolvable_density_stays_near_one_quarter(example_curve, example_point, limit):
    report = sweep(example_curve, example_point, 4, limit, group_order=16)
    assert 0.15 <= float(report.density_unsolvable) <= 0.40
