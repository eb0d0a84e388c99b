from fractions import Fraction

import pytest

from padiclocal.discrete_series_check import (
    TruncatedGOModule,
    kernel_is_stable,
    projection_coefficient,
    sign_twist_intertwines,
    solve_omega_structures,
    verify_extension_structure,
    verify_ladder_relations,
    verify_omega_structure,
    verify_rotation_exchange,
)

K = 20


@pytest.fixture
def plus():
    return TruncatedGOModule(K, 1)


@pytest.fixture
def minus():
    return TruncatedGOModule(K, -1)


def test_ladder_coefficients_at_known_spots(plus):
    assert plus.apply_R(1) == (2, 2)
    assert plus.apply_L(1) == (0, 0)
    assert plus.apply_R(-1) == (0, 0)
    assert plus.apply_L(0) == (1, -1)


@pytest.mark.parametrize("index", [K, -K, K + 3])
def test_ladder_refuses_indices_at_or_past_the_window(plus, index):
    with pytest.raises(ValueError, match="truncation"):
        plus.apply_R(index)


def test_ladder_relations_hold_for_both_signs(plus, minus):
    assert verify_ladder_relations(plus)
    assert verify_ladder_relations(minus)


def test_constant_reflection_tables_verify(plus, minus):
    assert verify_omega_structure(plus)
    assert verify_omega_structure(minus)


@pytest.mark.parametrize(
    "table",
    [lambda k: (-1) ** k, lambda k: 1 if k >= 0 else -1],
    ids=["alternating", "step"],
)
def test_nonconstant_reflection_tables_fail(table):
    assert not verify_omega_structure(TruncatedGOModule(K, table))


def test_rotation_exchange(plus, minus):
    assert verify_rotation_exchange(plus)
    assert verify_rotation_exchange(minus)


def test_exactly_two_reflection_structures_both_constant():
    solutions = solve_omega_structures(K)
    assert len(solutions) == 2
    assert sorted(set(table[0] for table in solutions)) == [Fraction(-1), Fraction(1)]
    for table in solutions:
        assert len(set(table.values())) == 1
        assert verify_omega_structure(TruncatedGOModule(K, lambda k, t=table: t[k]))


def test_projection_picks_out_the_spherical_slot():
    assert projection_coefficient(0) == 1
    assert all(projection_coefficient(k) == 0 for k in range(-K, K + 1) if k)


def test_kernel_stability_and_sign_twist(plus, minus):
    assert kernel_is_stable(plus)
    assert kernel_is_stable(minus)
    assert sign_twist_intertwines(plus, minus)


def test_extension_structure():
    assert verify_extension_structure(K)


def test_extension_check_refuses_a_too_small_window():
    with pytest.raises(ValueError):
        verify_extension_structure(2)
