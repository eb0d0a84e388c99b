from fractions import Fraction

import pytest
import sympy

from padiclocal._cyclotomic import CycNumber, conj, cyclotomic_polynomial


@pytest.mark.parametrize("m", list(range(1, 31)) + [36, 48, 60, 100, 105])
def test_cyclotomic_polynomial_matches_sympy(m):
    x = sympy.symbols("x")
    want = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(m)) == [int(c) for c in want]


def test_cyclotomic_polynomial_rejects_nonpositive_index():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 12])
def test_root_of_unity_has_exact_order(m):
    z = CycNumber.root_of_unity(m)
    power = CycNumber.rational(1)
    for _ in range(m):
        power = power * z
    assert power == 1
    if m > 1:
        assert z != 1


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 12])
def test_all_roots_sum_to_zero(m):
    total = CycNumber.rational(0)
    for k in range(m):
        total = total + CycNumber.root_of_unity(m, k)
    assert total.is_zero()
    assert total.to_fraction() == 0


def test_mixed_order_arithmetic_promotes():
    z6 = CycNumber.root_of_unity(6)
    z3 = CycNumber.root_of_unity(3)
    assert z6 * z6 == z3
    # a primitive sixth root satisfies z^2 - z + 1 = 0
    assert (z6 * z6 - z6 + 1).is_zero()


def test_rational_detection():
    z4 = CycNumber.root_of_unity(4)
    assert not z4.is_rational()
    assert (z4 * z4).is_rational()
    assert (z4 * z4).to_fraction() == -1
    with pytest.raises(ValueError):
        z4.to_fraction()


def test_to_complex_tracks_the_embedding():
    z8 = CycNumber.root_of_unity(8)
    v = z8.to_complex()
    assert abs(v - complex(2 ** -0.5, 2 ** -0.5)) < 1e-12


def test_conjugation():
    z5 = CycNumber.root_of_unity(5)
    assert z5.conjugate() == CycNumber.root_of_unity(5, 4)
    norm = z5 * z5.conjugate()
    assert norm == 1


def test_conj_dispatch():
    assert conj(Fraction(3, 2)) == Fraction(3, 2)
    assert conj(2 + 3j) == 2 - 3j
    z = CycNumber.root_of_unity(3)
    assert conj(z) == z.conjugate()


def test_scalar_mixing():
    z = CycNumber.root_of_unity(3)
    w = 2 * z + Fraction(1, 2)
    assert w - 2 * z == Fraction(1, 2)
    assert (z - z).is_zero()
