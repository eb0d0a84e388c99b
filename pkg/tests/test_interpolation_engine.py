import math
from fractions import Fraction

import pytest

from padiclocal.interpolation_engine import (
    LInvariantVector,
    PlaceData,
    TateLatticePairing,
    c_pi_steinberg,
    c_v_constant,
    derivative_class,
    derivative_measure,
    euler_factor_C,
    geometric_L_invariant,
    interpolation_value,
)
from padiclocal.iwasawa_algebra import FiniteLevelGroup, psi_class
from padiclocal.local_integrals import SteinbergDatum, is_exceptional
from padiclocal.padic_core import PrimeLocalField
from padiclocal.steinberg_cocycles import LocalHomomorphism, ord_homomorphism
from padiclocal.torus_local import LocalTorusCase, characters, trivial_character


def test_euler_factor_vanishes_exactly_on_exceptional_configurations():
    checked = zeros = 0
    for q in (2, 3, 5):
        field = PrimeLocalField(q)
        for kind in ("split", "inert", "ramified"):
            for n_T in (0, 1):
                case = LocalTorusCase(kind, field, n_T)
                for alpha in (1, -1):
                    datum = SteinbergDatum("special", alpha)
                    for chi in characters(case, 2):
                        value = euler_factor_C(case, datum, chi)
                        assert (value == 0) == is_exceptional(case, alpha, chi)
                        checked += 1
                        zeros += value == 0
    assert zeros and checked > zeros


def test_euler_factor_spherical_branch_is_a_ratio_of_supplied_values():
    case = LocalTorusCase("split", PrimeLocalField(3))
    value = euler_factor_C(
        case,
        SteinbergDatum("spherical"),
        trivial_character(case),
        l_ad=Fraction(9, 8),
        l_half=Fraction(3, 4),
    )
    assert value == Fraction(3, 2)


def test_pairing_constant_inert_spherical_is_the_torus_volume():
    got = c_v_constant(PlaceData(5, "inert", "spherical"))
    assert got.value == 1
    assert got.depends_on == ("vol_T",)


@pytest.mark.parametrize(
    "place",
    [
        PlaceData(5, "ramified", "special", alpha=1),
        PlaceData(5, "ramified", "special", alpha=-1, divides_disc=True),
    ],
    ids=["matrix_side", "quaternion_side"],
)
def test_ramified_special_sign_condition(place):
    assert c_v_constant(place, chi_uniformizer=-1).value == 1
    with pytest.raises(ValueError, match="Hom space vanishes"):
        c_v_constant(place, chi_uniformizer=1)


def test_ramified_spherical_eigenvalue_product_and_l_value_route():
    got = c_v_constant(PlaceData(3, "ramified", "spherical", alpha=2), 1)
    assert got.value == (1 + Fraction(1, 2)) * (1 + Fraction(2, 3)) / (1 + Fraction(1, 3))
    got = c_v_constant(
        PlaceData(3, "ramified", "spherical", l_half=Fraction(2), l_ad=Fraction(9, 8))
    )
    assert got.value == 2


def test_split_spherical_folds_in_supplied_pieces():
    got = c_v_constant(PlaceData(7, "split", "spherical", l_half=Fraction(5, 2)))
    assert got.value == Fraction(5, 2)
    assert set(got.depends_on) == {"norm_diff", "w_inner"}
    got = c_v_constant(
        PlaceData(7, "split", "spherical", l_half=2, norm_diff=3, w_inner=4)
    )
    assert got.value == Fraction(3, 2)
    assert got.depends_on == ()


def test_non_squarefree_level_is_refused():
    with pytest.raises(ValueError):
        c_v_constant(PlaceData(3, "inert", "spherical", squarefree_level=False))


def test_interpolation_assembly_values():
    value = interpolation_value("def", 1, 3, 1, 2, Fraction(1, 2), 1)
    assert abs(value - math.sqrt(3) / 2) < 1e-15
    value = interpolation_value("ind", 1, 3, 1, 2, Fraction(1, 2), 1)
    assert abs(value - math.sqrt(3) / 4) < 1e-15
    assert interpolation_value("def", 1, 3, 1, 0, Fraction(1, 2), 1) == 0


@pytest.mark.parametrize(
    "args",
    [("def", 1, -3, 1, 1, 1, 1), ("def", 1, 3, 1, 1, 1, 0)],
    ids=["negative_discriminant", "zero_period"],
)
def test_interpolation_rejects_bad_inputs(args):
    with pytest.raises(ValueError):
        interpolation_value(*args)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_steinberg_derivative_constant(q):
    assert c_pi_steinberg(q) == -1 / (1 - Fraction(q) ** -2)


def test_steinberg_derivative_constant_with_supplied_adjoint_value():
    assert c_pi_steinberg(3, ad_value=Fraction(9, 8)) == Fraction(-9, 8)


@pytest.fixture
def rank_one_setup():
    field = PrimeLocalField(3)
    log_ell = LocalHomomorphism(field, 0, 1, precision=10)
    ord_ell = ord_homomorphism(field, precision=10)
    return field, log_ell, ord_ell


def test_rank_one_l_invariants(rank_one_setup):
    field, log_ell, ord_ell = rank_one_setup
    p = field.p
    tate = TateLatticePairing(field, [[p]])
    assert geometric_L_invariant(tate, log_ell) == 0
    assert geometric_L_invariant(tate, ord_ell) == 1
    tate = TateLatticePairing(field, [[p * (1 + p)]])
    assert geometric_L_invariant(tate, ord_ell) == 1
    assert geometric_L_invariant(tate, log_ell) == 1


def test_singular_valuation_matrix_is_refused(rank_one_setup):
    field, log_ell, _ = rank_one_setup
    with pytest.raises(ValueError, match="pairing not perfect"):
        geometric_L_invariant(TateLatticePairing(field, [[3, 9], [3, 9]]), log_ell)


def rank_two_pairing(field, action=((0, 1), (2, 0))):
    p = field.p
    q1 = Fraction(p * (1 + p))
    q2 = Fraction(p ** 3 * (1 + p) ** 2)
    return TateLatticePairing(
        field,
        [[q1, q2], [q2, q1 ** 2]],
        action_matrices=[[list(row) for row in action]],
    )


def test_rank_two_invariant_lands_in_the_commutant(rank_one_setup):
    field, log_ell, _ = rank_one_setup
    matrix = geometric_L_invariant(rank_two_pairing(field), log_ell)
    modulus = field.p ** 10
    expected = [[Fraction(4, 7), Fraction(1, 7)], [Fraction(2, 7), Fraction(4, 7)]]
    inv7 = pow(7, -1, modulus)
    for row, exp_row in zip(matrix, expected):
        for got_entry, exp_entry in zip(row, exp_row):
            assert got_entry == exp_entry.numerator * inv7 % modulus


def test_non_commuting_action_is_rejected(rank_one_setup):
    field, log_ell, _ = rank_one_setup
    bad = rank_two_pairing(field, action=((0, 1), (1, 0)))
    with pytest.raises(AssertionError, match="commute"):
        geometric_L_invariant(bad, log_ell)


def test_invariant_is_linear_in_the_homomorphism(rank_one_setup):
    field, _, _ = rank_one_setup
    modulus = field.p ** 10
    tate2 = rank_two_pairing(field)
    ell_a = LocalHomomorphism(field, 2, 3, precision=10)
    ell_b = LocalHomomorphism(field, 1, -4, precision=10)
    combo = LocalHomomorphism(field, 2 * 2 + 5 * 1, 2 * 3 + 5 * (-4), precision=10)
    m_a = geometric_L_invariant(tate2, ell_a)
    m_b = geometric_L_invariant(tate2, ell_b)
    m_c = geometric_L_invariant(tate2, combo)
    for i in range(2):
        for j in range(2):
            assert m_c[i][j] == (2 * m_a[i][j] + 5 * m_b[i][j]) % modulus


def test_derivative_classes_scale_the_normalized_vector():
    linv = LInvariantVector(2, 7)
    assert linv.normalized() == LInvariantVector(Fraction(1), Fraction(7, 2))
    assert derivative_class(Fraction(3, 2), linv) == {
        "ord": 3,
        "log": Fraction(21, 2),
    }
    assert derivative_class(0, linv) == {"ord": 0, "log": 0}


def test_derivative_measure_round_trips_through_the_coordinate_map():
    G = FiniteLevelGroup(3, 2, 3)
    assert psi_class(derivative_measure(G, (5, 17))) == (5, 17)
    assert psi_class(derivative_measure(G, (Fraction(40), Fraction(-1)))) == (
        40 % 27,
        26,
    )
