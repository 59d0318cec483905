import math

import pytest

from divlab.arith.matmod import Mat2Mod
from divlab.config import DivLabConfig
from divlab.errors import CapExceededError, ConfigError, MathDomainError
from divlab.galois.cohomology import (
    coboundary,
    example_cocycle,
    h1_and_h1loc,
    image_of_sigma_minus_one,
    local_condition_check,
    make_cocycle,
    parse_cocycle_spec,
)
from divlab.galois.groups import (
    EXAMPLE_GENERATORS,
    cyclic_subgroups,
    density_threshold,
    general_linear_group,
    group_closure,
    parse_group_spec,
    sigma_coordinates,
    sigma_family,
)
from divlab.reference import load_example_data


def test_image_of_sigma_minus_one():
    assert image_of_sigma_minus_one(Mat2Mod.identity(4)) == frozenset({(0, 0)})
    minus = Mat2Mod(4, -1, 0, 0, -1)
    assert image_of_sigma_minus_one(minus) == frozenset({(0, 0), (2, 0), (0, 2), (2, 2)})


def test_example_cocycle_values():
    z = example_cocycle()
    for g in z.group:
        w = sigma_coordinates(g)[3]
        assert z(g) == ((2 * w) % 4, 0)


def test_example_cocycle_failing_set():
    failing = local_condition_check(example_cocycle())
    expected = {sigma_family(*v) for v in load_example_data()["failing_elements"]}
    assert len(failing) == 4
    assert failing == expected


def test_coboundaries_are_locally_trivial(example_matrix_group):
    for A in [(0, 0), (1, 0), (1, 3), (2, 2)]:
        z = coboundary(example_matrix_group, A)
        assert local_condition_check(z) == set()
    assert coboundary(example_matrix_group, (0, 0)).is_zero()
    assert not coboundary(example_matrix_group, (1, 0)).is_zero()


def test_make_cocycle_rejects_inconsistent_values(example_matrix_group):
    seeds = {s: (0, 0) for s in EXAMPLE_GENERATORS}
    seeds[EXAMPLE_GENERATORS[3]] = (0, 1)
    with pytest.raises(MathDomainError, match="not a cocycle"):
        make_cocycle(example_matrix_group, seeds)


def test_make_cocycle_needs_generator_values(example_matrix_group):
    with pytest.raises(MathDomainError, match="not a cocycle"):
        make_cocycle(example_matrix_group, {EXAMPLE_GENERATORS[0]: (0, 0)})


def test_example_h1loc_vanishes(example_matrix_group):
    report = h1_and_h1loc(example_matrix_group, cocycle=example_cocycle())
    assert report.h1loc == []
    assert report.h1loc_order == 1
    assert report.h1_order >= 2
    assert report.local_count == report.coboundary_count
    assert len(report.failing) == 4
    assert report.to_dict()["h1loc"] == []


def test_minus_identity_h1():
    group = parse_group_spec("gens:4:-1,0,0,-1")
    report = h1_and_h1loc(group)
    assert report.cocycle_count == 16
    assert report.coboundary_count == 4
    assert report.h1 == [2, 2]
    assert report.h1_order == 4
    assert report.h1loc == []


def test_eta_cyclic_h1loc_vanishes():
    report = h1_and_h1loc(parse_group_spec("cyclic:eta:25"))
    assert report.group_order == 50
    assert report.h1loc == []


def test_cyclic_subgroups_of_gl2_mod_4_have_trivial_h1loc():
    subs = cyclic_subgroups(general_linear_group(4))
    assert subs
    for h in subs:
        assert h1_and_h1loc(h).h1loc == []


def test_h1_caps():
    with pytest.raises(CapExceededError):
        h1_and_h1loc(general_linear_group(4))
    with pytest.raises(CapExceededError):
        h1_and_h1loc(parse_group_spec("cyclic:eta:25"), DivLabConfig(max_modulus=8))
    with pytest.raises(CapExceededError):
        h1_and_h1loc(parse_group_spec("paper-sec6"), DivLabConfig(cocycle_candidate_cap=100))


def test_parse_cocycle_spec_linear_forms(example_matrix_group):
    z = parse_cocycle_spec("2w,0", example_matrix_group, "paper-sec6")
    assert z.values == example_cocycle().values
    z2 = parse_cocycle_spec("2x, 2y", example_matrix_group, "paper-sec6")
    assert z2(sigma_family(1, 1, 0, 0)) == (2, 2)


def test_parse_cocycle_spec_generator_values():
    group = parse_group_spec("gens:4:-1,0,0,-1")
    z = parse_cocycle_spec("1,0", group, "gens:4:-1,0,0,-1")
    assert z(Mat2Mod(4, -1, 0, 0, -1)) == (1, 0)
    assert local_condition_check(z) == {Mat2Mod(4, -1, 0, 0, -1)}


@pytest.mark.parametrize("spec", ["1,0;2,0", "2w,0", "a,b"])
def test_parse_cocycle_spec_rejects_on_other_groups(spec):
    group = parse_group_spec("gens:4:-1,0,0,-1")
    with pytest.raises(ConfigError):
        parse_cocycle_spec(spec, group, "gens:4:-1,0,0,-1")


def test_parse_cocycle_spec_rejects_bad_example_spec(example_matrix_group):
    with pytest.raises(ConfigError):
        parse_cocycle_spec("1,0,0", example_matrix_group, "paper-sec6")


def test_trivial_group_has_trivial_cohomology():
    trivial = group_closure([Mat2Mod.identity(4)], 4)
    assert trivial.order == 1
    report = h1_and_h1loc(trivial)
    assert report.h1 == []
    assert report.h1loc == []
    assert density_threshold(trivial) == 1.0
    assert density_threshold(parse_group_spec("cyclic:eta:25")) == pytest.approx(1 / 50)


def test_linear_form_that_is_not_a_cocycle_is_rejected(example_matrix_group):
    with pytest.raises(MathDomainError, match="not a cocycle"):
        parse_cocycle_spec("0,2", example_matrix_group, "paper-sec6")
    with pytest.raises(MathDomainError, match="not a cocycle"):
        parse_cocycle_spec("x,0", example_matrix_group, "paper-sec6")


def test_linear_form_values_hold_on_every_element(example_matrix_group):
    z = parse_cocycle_spec("2x+2y,2z", example_matrix_group, "paper-sec6")
    for g in example_matrix_group:
        x, y, zc, _ = sigma_coordinates(g)
        assert z(g) == ((2 * x + 2 * y) % 4, (2 * zc) % 4)


SMALL_GROUPS = ["paper-sec6", "gens:4:-1,0,0,-1", "cyclic:eta:25", "gens:3:1,1,0,1", "gens:2:0,1,1,1"]


@pytest.mark.parametrize("spec", SMALL_GROUPS)
def test_cocycles_split_into_coboundary_classes(spec):
    group = parse_group_spec(spec)
    n = group.n
    report = h1_and_h1loc(group)
    images = {g: image_of_sigma_minus_one(g) for g in group}
    boundaries = set()
    for a in range(n):
        for b in range(n):
            z = coboundary(group, (a, b))
            assert all(z(g) in images[g] for g in group)
            boundaries.add(frozenset(z.values.items()))
    assert len(boundaries) == report.coboundary_count
    assert report.cocycle_count == report.coboundary_count * math.prod(report.h1)
    assert report.local_count == report.coboundary_count * math.prod(report.h1loc)
