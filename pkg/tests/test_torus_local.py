import itertools
from fractions import Fraction

import pytest

from padiclocal.padic_core import PrimeLocalField
from padiclocal.rational_forms import LocalRationalFunction
from padiclocal.torus_local import (
    LocalTorusCase,
    ShellFunction,
    abelian_basis,
    brute_shell_character_integral,
    characters,
    characters_of_exact_conductor,
    formal_character,
    indicator_unit_ball,
    shell_character_integral,
    shell_difference_character_integral,
    shell_difference_volume,
    shell_volume,
    torus_weight,
    trivial_character,
    unit_ball_weight_integral,
    unit_quotient,
)

KINDS = ("split", "inert", "ramified")


def case_of(kind, q, n_T=0):
    return LocalTorusCase(kind, PrimeLocalField(q), n_T)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("p", [2, 3, 5])
def test_unit_quotient_is_a_group(kind, p):
    group = unit_quotient(kind, p, 2)
    elems = group.elements
    assert group.identity in elems
    sample = elems[:: max(1, len(elems) // 8)]
    for x in sample:
        assert group.mul(x, group.identity) == x
        assert group.power(x, group.order_of(x)) == group.identity
        for y in sample:
            assert group.mul(x, y) in elems
            for z in sample[:3]:
                assert group.mul(group.mul(x, y), z) == group.mul(x, group.mul(y, z))


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_quotient_sizes_match_volume_formulas(kind, p, n):
    case = case_of(kind, p)
    group = unit_quotient(kind, p, n)
    assert shell_volume(case, n) == Fraction(1, len(group))


@pytest.mark.parametrize("kind", KINDS)
def test_filtration_indices(kind):
    group = unit_quotient(kind, 3, 3)
    sizes = [len(group.filtration(n)) for n in range(4)]
    assert sizes[0] == len(group)
    for shallow, deep in zip(sizes, sizes[1:]):
        assert shallow % deep == 0
        assert shallow // deep in (1, 2, 3, 4)
    assert group.filtration(3) == {group.identity}


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("p", [2, 3])
def test_abelian_basis_decomposes_the_group(kind, p):
    group = unit_quotient(kind, p, 3)
    gens, table = abelian_basis(group)
    assert len(table) == len(group)
    total = 1
    for _, order in gens:
        total *= order
    assert total == len(group)


def test_volume_is_decreasing_and_telescopes():
    for kind in KINDS:
        case = case_of(kind, 3)
        vols = [shell_volume(case, n) for n in range(6)]
        assert vols[0] == 1
        assert all(a > b for a, b in zip(vols, vols[1:]))
        for n in range(5):
            assert shell_difference_volume(case, n) == vols[n] - vols[n + 1]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("q", [2, 3, 5])
def test_character_enumeration_and_conductors(kind, q):
    case = case_of(kind, q)
    chis = characters(case, 2)
    seen = set()
    for chi in chis:
        assert 0 <= chi.n_chi <= 2
        assert chi.detected_conductor() == chi.n_chi
        seen.add((chi.n_chi, chi.uniformizer_value, id(chi)))
    if kind == "inert":
        assert all(chi.uniformizer_value is None for chi in chis)
    else:
        values = {chi.uniformizer_value for chi in chis}
        assert values == {Fraction(1), Fraction(-1)}
    exact2 = characters_of_exact_conductor(case, 2)
    assert all(chi.n_chi == 2 for chi in exact2)
    assert len(exact2) > 0


def test_trivial_character_basics():
    case = case_of("split", 3)
    chi = trivial_character(case)
    assert chi.n_chi == 0
    assert chi.is_trivial_on_units()
    assert chi.inverse().n_chi == 0


def test_formal_character_has_no_unit_table():
    case = case_of("split", 3)
    chi = formal_character(case, 2, -1)
    assert chi.n_chi == 2
    assert chi.uniformizer_value == -1
    with pytest.raises(KeyError):
        chi.value_on_unit(2, 2)
    with pytest.raises(ValueError):
        formal_character(case, -1)


def brute_sweep_configs():
    for q in (2, 3, 5):
        for kind in KINDS:
            yield q, kind


@pytest.mark.parametrize("q, kind", list(brute_sweep_configs()))
def test_brute_integral_matches_closed_form(q, kind):
    case = case_of(kind, q)
    for n_chi in range(4):
        pool = characters_of_exact_conductor(case, n_chi)
        if not pool:
            continue
        chi = pool[0]
        for n in range(6):
            closed = shell_character_integral(case, chi, n)
            assert brute_shell_character_integral(case, chi, n) == closed
            closed_diff = shell_difference_character_integral(case, chi, n)
            got_diff = brute_shell_character_integral(case, chi, n, difference=True)
            assert got_diff == closed_diff


def test_brute_integral_depth_guard():
    case = case_of("split", 5)
    chi = trivial_character(case)
    with pytest.raises(ValueError):
        brute_shell_character_integral(case, chi, 12)


def test_torus_weight_cells():
    case = case_of("split", 3, 1)
    for m in (1, 2, 3):
        sym_plus = torus_weight(case, 1, ("valuation", m))
        sym_minus = torus_weight(case, 1, ("valuation", -m))
        # the kernel is symmetric in the sign of the valuation
        assert sym_plus.equal(sym_minus)
        twisted = torus_weight(case, -1, ("valuation", m))
        assert twisted.equal(sym_plus * Fraction(-1) ** m)
    # at s = 1 the prefactor, the shell weight, and the cell weight are all 1
    assert torus_weight(case, -1, ("unit", 2)).evaluate_at_s(1) == 1
    assert torus_weight(case, -1, ("valuation", 1)).evaluate_at_s(1) == -1
    with pytest.raises(ValueError):
        torus_weight(case_of("inert", 3), 1, ("valuation", 1))
    with pytest.raises(ValueError):
        torus_weight(case, 1, ("valuation", 0))
    with pytest.raises(ValueError):
        torus_weight(case, 1, ("uniformizer",))
    ram = case_of("ramified", 3)
    assert torus_weight(ram, -1, ("uniformizer",)).evaluate_at_s(1) == -1


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [0, 1, 2])
def test_unit_ball_weight_matches_partial_sums(kind, n):
    q = 3
    case = LocalTorusCase(kind, PrimeLocalField(q), 1)
    closed = unit_ball_weight_integral(case, n)
    # resum by hand at s = 2: weight q**(2n') vol(shell n') per shell
    x = Fraction(q) ** -2
    total = Fraction(0)
    for shell in range(n, 60):
        weight = Fraction(q ** 2 * x ** 2) ** shell
        total += weight * shell_difference_volume(case, shell)
    prefactor = Fraction(q ** 2 * x ** 2) ** case.n_T
    got = closed.evaluate_at_s(2)
    assert abs(got - prefactor * total) < Fraction(1, 10 ** 25)


def test_shell_function_translate_and_indicator():
    case = case_of("split", 3, 0)
    ind = indicator_unit_ball(case, 1)
    assert isinstance(ind, ShellFunction)
    shifted = ind.translate(Fraction(3))
    assert shifted.entries != ind.entries
    back = shifted.translate(Fraction(1, 3))
    assert back.entries == ind.entries
