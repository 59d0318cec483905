import itertools

import pytest

from divlab.arith.matmod import Mat2Mod, mat_pow
from divlab.errors import CapExceededError, ConfigError, MathDomainError
from divlab.galois.groups import (
    EXAMPLE_GENERATORS,
    StabilizerKind,
    cyclic_subgroups,
    density_threshold,
    eta,
    eta_power_closed_form,
    find_thm22_counterexample,
    general_linear_group,
    gl2_order,
    group_closure,
    omega,
    parse_group_spec,
    sigma_coordinates,
    sigma_family,
    stabilizer_enumeration,
    verify_fixed_abscissa_core,
    verify_thm22_core,
)


def test_example_group_structure(example_matrix_group):
    g = example_matrix_group
    assert g.order == 16
    assert g.n == 4
    assert g.is_abelian()
    assert g.is_elementary_abelian()
    assert g.exponent() == 2
    assert not g.is_cyclic()
    assert len(g.minimal_generators()) == 4
    assert density_threshold(g) == pytest.approx(1 / 16)


def test_example_generators_are_sigma_basis():
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    assert tuple(sigma_family(*v) for v in basis) == EXAMPLE_GENERATORS


def test_sigma_coordinates_invert_family(example_matrix_group):
    seen = set()
    for v in itertools.product(range(2), repeat=4):
        g = sigma_family(*v)
        assert g in example_matrix_group
        assert sigma_coordinates(g) == v
        seen.add(g)
    assert len(seen) == 16


def test_sigma_coordinates_rejects_other_matrices():
    with pytest.raises(MathDomainError):
        sigma_coordinates(Mat2Mod(4, 1, 1, 0, 1))


@pytest.mark.parametrize("n", [5, 9, 25, 49])
def test_eta_powers_closed_form(n):
    for k in range(2 * n + 3):
        assert mat_pow(eta(n), k) == eta_power_closed_form(k, n)


def test_eta_and_omega_cyclic_groups():
    g = group_closure([eta(25)], 25)
    assert g.order == 50
    assert g.is_cyclic()
    h = group_closure([omega(25)], 25)
    assert h.order == 25
    assert h.cyclic_generator() is not None


@pytest.mark.parametrize("p,r", [(5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3), (11, 1), (11, 2), (13, 1), (13, 2)])
def test_thm22_core_holds(p, r):
    assert verify_thm22_core(p, r)
    assert find_thm22_counterexample(p, r) is None


def test_thm22_core_fails_at_three():
    witness = find_thm22_counterexample(3, 1)
    assert witness == Mat2Mod.from_rows([[1, 1], [0, 1]], 3)
    assert mat_pow(witness, 3).is_identity()
    assert not verify_thm22_core(3, 1)


def test_thm22_core_cap_and_domain():
    with pytest.raises(CapExceededError):
        verify_thm22_core(7, 5, cap=1000)
    with pytest.raises(MathDomainError):
        verify_thm22_core(9, 1)


def test_fixed_abscissa_core():
    for p, r in [(3, 1), (5, 2), (7, 1), (11, 2)]:
        assert verify_fixed_abscissa_core(p, r)
    assert verify_fixed_abscissa_core(2, 1)
    assert not verify_fixed_abscissa_core(2, 2)


@pytest.mark.parametrize("p,r", [(5, 1), (5, 2), (7, 1), (7, 2)])
def test_stabilizer_enumeration(p, r):
    n = p ** r
    plus_minus = stabilizer_enumeration(p, r, StabilizerKind.PLUS_MINUS_DET1)
    assert plus_minus.order == 2 * n
    assert plus_minus.elements == group_closure([eta(n)], n).elements
    fixed = stabilizer_enumeration(p, r, StabilizerKind.FIX_DET1)
    assert fixed.order == n
    assert fixed.is_cyclic()
    mod_p = stabilizer_enumeration(p, r, StabilizerKind.PLUS_MINUS_DET1_MOD_P)
    assert (2 * p ** (2 * r - 1)) % mod_p.order == 0
    assert plus_minus.elements <= mod_p.elements


def test_stabilizer_enumeration_needs_large_prime():
    with pytest.raises(MathDomainError):
        stabilizer_enumeration(3, 1, StabilizerKind.FIX_DET1)


def test_general_linear_group_mod_4():
    assert gl2_order(4) == 96
    assert gl2_order(2) == 6
    assert gl2_order(5) == 480
    gl = general_linear_group(4)
    assert gl.order == 96
    assert not gl.is_abelian()
    with pytest.raises(CapExceededError):
        general_linear_group(8, cap=1000)


def test_cyclic_subgroups_of_gl2_mod_2():
    subs = cyclic_subgroups(general_linear_group(2))
    assert [h.order for h in subs] == [1, 2, 2, 2, 3]


def test_reduction_kernel(example_matrix_group):
    kernel = example_matrix_group.reduction_kernel(2)
    assert kernel.order == 16


def test_closure_rejects_singular_and_caps():
    with pytest.raises(MathDomainError, match="singular"):
        group_closure([Mat2Mod(4, 2, 0, 0, 1)], 4)
    with pytest.raises(CapExceededError):
        group_closure([omega(101)], 101, cap=50)


def test_parse_group_spec():
    assert parse_group_spec("paper-sec6").order == 16
    assert parse_group_spec("cyclic:eta:25").order == 50
    assert parse_group_spec("cyclic:omega:7").order == 7
    g = parse_group_spec("gens:4:-1,0,2,-1;1,2,2,-1")
    assert g.order == 4
    assert g.is_elementary_abelian()


@pytest.mark.parametrize("spec", ["cyclic:zeta:5", "cyclic:eta", "gens:x:1,0,0,1", "gens:4:1,0,0", "nonsense"])
def test_parse_group_spec_rejects(spec):
    with pytest.raises(ConfigError):
        parse_group_spec(spec)


def test_parse_group_spec_singular_generator():
    with pytest.raises(MathDomainError):
        parse_group_spec("gens:4:2,0,0,2")


@pytest.mark.parametrize("spec", ["paper-sec6", "cyclic:eta:25", "cyclic:omega:49", "gens:4:-1,0,0,-1"])
def test_closure_of_a_group_is_the_group(spec):
    group = parse_group_spec(spec)
    again = group_closure(list(group.elements), group.n)
    assert again.elements == group.elements


def test_closure_of_gl2_mod_3():
    full = general_linear_group(3)
    assert full.order == 48
    assert group_closure(list(full.elements), 3).elements == full.elements
