"""
End-to-end check of the worked pseudodivisible example.

Eleven checks run in order and stop at the first failure:

    group, cocycle-failing-set, h1loc, quartic-model, lift, four-times-divisor,
    conjugate-difference, phi4-coefficients, abscissas, sweep, density

A sweep below 1000 only compares prefixes of the reference prime lists and is
reported as PARTIAL. ``b`` replaces the curve coefficient in the checks that
use the short Weierstrass form, which makes a convenient negative control.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from divlab.config import DivLabConfig
from divlab.curves.curve import Curve
from divlab.curves.division_poly import preimage_poly
from divlab.descent import (
    EXAMPLE_LEGENDRE,
    TowerPoint,
    conjugate_point,
    lift_quartic_point,
    point_mul,
    point_sub,
    quartic_model,
    radical_flip,
    verify_divisor_abscissas,
)
from divlab.errors import DivLabError
from divlab.galois.cohomology import example_cocycle, h1_and_h1loc, local_condition_check
from divlab.galois.groups import example_group, sigma_family
from divlab.padic import Mode, sweep
from divlab.reference import (
    example_abscissas,
    example_ordinates,
    example_phi4,
    example_point,
    example_prime_lists,
    example_tower,
    load_example_data,
)

logger = logging.getLogger(__name__)

FULL_LIMIT = 1000


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PARTIAL = "PARTIAL"


@dataclass
class CheckResult:
    name: str
    status: Status
    detail: str = ""

    def line(self) -> str:
        return f"{self.status.value} {self.name}: {self.detail}"


class _Ledger:
    """Shared state between checks of one run."""

    def __init__(self, limit: int, b: Optional[Fraction], config: DivLabConfig):
        data = load_example_data()
        self.limit = limit
        self.config = config
        self.curve = Curve(b if b is not None else Fraction(data["curve"]["b"]),
                           Fraction(data["curve"]["c"]), "paper-sec6")
        self.point = example_point()
        self.quartic_curve = quartic_model(EXAMPLE_LEGENDRE)
        self.divisor: Optional[TowerPoint] = None
        self.sweep_result = None

    def group(self) -> Tuple[bool, str]:
        g = example_group()
        ok = g.order == 16 and g.is_elementary_abelian()
        return ok, f"order {g.order}, exponent {g.exponent()}"

    def cocycle(self) -> Tuple[bool, str]:
        failing = local_condition_check(example_cocycle())
        expected = {sigma_family(*v) for v in load_example_data()["failing_elements"]}
        return failing == expected, f"{len(failing)} elements fail the local conditions"

    def h1loc(self) -> Tuple[bool, str]:
        report = h1_and_h1loc(example_group(), self.config)
        return report.h1loc == [], f"H1 {report.h1 or 0}, H1_loc {report.h1loc or 0}"

    def quartic(self) -> Tuple[bool, str]:
        q = self.quartic_curve
        ok = (q.delta, q.A, q.B, q.C) == (7, 7, -54, 63)
        return ok, f"delta={q.delta}, {q}"

    def lift(self) -> Tuple[bool, str]:
        self.divisor = lift_quartic_point(self.quartic_curve, 4, 1, EXAMPLE_LEGENDRE)
        tower = self.divisor.tower
        data = load_example_data()["divisor"]
        expected_x = tower.from_terms([(Fraction(c), Fraction(d)) for c, d in data["x"]])
        expected_y = tower.from_terms([(Fraction(c), Fraction(d)) for c, d in data["y"]])
        ok = self.divisor.x == expected_x and self.divisor.y == expected_y
        return ok, f"D = {self.divisor}"

    def four_times(self) -> Tuple[bool, str]:
        image = point_mul(self.divisor, 4)
        coords = image.rational_coordinates()
        return coords == self.point, f"[4]D = {image}"

    def conjugate_difference(self) -> Tuple[bool, str]:
        D = self.divisor
        flip = radical_flip(D.tower, self.quartic_curve.delta)
        diff = point_sub(conjugate_point(D, flip), D)
        expected = tuple(Fraction(v) for v in load_example_data()["conjugate_difference"])
        return diff.rational_coordinates() == expected, f"conj(D) - D = {diff}"

    def phi4(self) -> Tuple[bool, str]:
        phi = preimage_poly(self.curve, 4, self.point[0])
        reference = example_phi4()
        mismatched = sum(1 for i in range(17) if phi.coeff(i) != reference.coeff(i))
        ok = phi == reference
        return ok, "17 coefficients match" if ok else f"{mismatched} coefficients differ"

    def abscissas(self) -> Tuple[bool, str]:
        report = verify_divisor_abscissas(self.curve, self.point, example_abscissas(),
                                          example_ordinates(), example_tower())
        good = sum(1 for r in report["abscissas"] if r["root"] and r["on_curve"])
        return report["all_pass"], f"{good}/16 abscissas verified in tower {report['tower']}"

    def sweep(self) -> Tuple[bool, str]:
        self.sweep_result = sweep(self.curve, self.point, 4, self.limit, Mode.ABSCISSA,
                                  group_order=16, config=self.config)
        solvable, unsolvable = example_prime_lists()
        cut = min(self.limit, FULL_LIMIT)
        found = self.sweep_result
        ok = ([p for p in found.solvable if p <= cut] == [p for p in solvable if p <= cut]
              and [p for p in found.unsolvable if p <= cut] == [p for p in unsolvable if p <= cut])
        return ok, self.sweep_result.summary_line()

    def density(self) -> Tuple[bool, str]:
        result = self.sweep_result
        density = result.density_unsolvable
        ok = density > Fraction(1, 16)
        if self.limit == FULL_LIMIT:
            ok = ok and density == Fraction(45, 168)
        return ok, f"{density} = {float(density):.4f} vs 1/16 = 0.0625"


def run_example_ledger(limit: int = FULL_LIMIT, b: Optional[Fraction] = None,
                       config: Optional[DivLabConfig] = None) -> List[CheckResult]:
    ledger = _Ledger(limit, b, config or DivLabConfig())
    checks: List[Tuple[str, Callable[[], Tuple[bool, str]], bool]] = [
        ("group", ledger.group, False),
        ("cocycle-failing-set", ledger.cocycle, False),
        ("h1loc", ledger.h1loc, False),
        ("quartic-model", ledger.quartic, False),
        ("lift", ledger.lift, False),
        ("four-times-divisor", ledger.four_times, False),
        ("conjugate-difference", ledger.conjugate_difference, False),
        ("phi4-coefficients", ledger.phi4, False),
        ("abscissas", ledger.abscissas, False),
        ("sweep", ledger.sweep, True),
        ("density", ledger.density, True),
    ]
    results: List[CheckResult] = []
    for name, check, limited in checks:
        try:
            ok, detail = check()
        except DivLabError as e:
            ok, detail = False, f"{type(e).__name__}: {e}"
        if not ok:
            status = Status.FAIL
        elif limited and limit < FULL_LIMIT:
            status = Status.PARTIAL
        else:
            status = Status.PASS
        results.append(CheckResult(name, status, detail))
        logger.info(f"{status.value} {name}")
        if status is Status.FAIL:
            logger.error(f"❌ check {name} failed: {detail}")
            break
    return results


def ledger_passed(results: List[CheckResult]) -> bool:
    return bool(results) and all(r.status is not Status.FAIL for r in results)
