from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padiclocal.padic_core import (
    PrimeLocalField,
    absolute_value,
    residue_mod,
    unit_part,
    unit_residues,
    valuation,
)

F3 = PrimeLocalField(3)


def test_field_descriptor_validates():
    assert PrimeLocalField(7).q == 7
    assert PrimeLocalField(2, f=3).q == 8
    with pytest.raises(ValueError):
        PrimeLocalField(6)
    with pytest.raises(ValueError):
        PrimeLocalField(5, f=0)


@pytest.mark.parametrize(
    "x, expected",
    [(9, 2), (Fraction(1, 3), -1), (Fraction(18, 5), 2), (-27, 3), (5, 0)],
)
def test_valuation_examples(x, expected):
    assert valuation(F3, x) == expected


def test_valuation_of_zero_is_refused():
    with pytest.raises(ValueError):
        valuation(F3, 0)


nonzero_fracs = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=1000
).filter(lambda x: x != 0)


@given(x=nonzero_fracs, y=nonzero_fracs)
def test_valuation_is_additive(x, y):
    assert valuation(F3, x * y) == valuation(F3, x) + valuation(F3, y)


@given(x=nonzero_fracs, y=nonzero_fracs)
def test_valuation_ultrametric(x, y):
    if x + y == 0:
        return
    assert valuation(F3, x + y) >= min(valuation(F3, x), valuation(F3, y))


@given(x=nonzero_fracs, y=nonzero_fracs)
def test_absolute_value_multiplicative(x, y):
    assert absolute_value(F3, x * y) == absolute_value(F3, x) * absolute_value(F3, y)


def test_absolute_value_uses_residue_size():
    wide = PrimeLocalField(3, f=2)
    assert absolute_value(wide, 3) == Fraction(1, 9)
    assert absolute_value(F3, 3) == Fraction(1, 3)


@given(x=nonzero_fracs)
def test_unit_part_is_a_unit(x):
    u = unit_part(F3, x)
    assert valuation(F3, u) == 0
    assert u * Fraction(3) ** valuation(F3, x) == Fraction(x)


@pytest.mark.parametrize("p, N", [(2, 3), (3, 2), (5, 2)])
def test_unit_residue_count(p, N):
    residues = unit_residues(PrimeLocalField(p), N)
    assert len(residues) == (p - 1) * p ** (N - 1)
    assert all(r % p for r in residues)
    assert len(set(residues)) == len(residues)


def test_unit_residues_refuse_extensions_and_bad_levels():
    with pytest.raises(ValueError):
        unit_residues(PrimeLocalField(3, f=2), 1)
    with pytest.raises(ValueError):
        unit_residues(F3, 0)


def test_residue_mod_inverts_denominators():
    assert residue_mod(F3, Fraction(1, 2), 2) == 5
    assert (residue_mod(F3, Fraction(1, 2), 2) * 2) % 9 == 1
    assert residue_mod(F3, -1, 1) == 2
    assert residue_mod(F3, 40, 3) == 13


def test_residue_mod_rejects_nonintegral_input():
    with pytest.raises(ValueError):
        residue_mod(F3, Fraction(1, 3), 2)


@given(
    x=st.fractions(min_value=-500, max_value=500, max_denominator=100).filter(
        lambda v: v.denominator % 3
    ),
    y=st.fractions(min_value=-500, max_value=500, max_denominator=100).filter(
        lambda v: v.denominator % 3
    ),
)
def test_residue_mod_is_a_ring_map(x, y):
    N = 3
    mod = 3 ** N
    assert residue_mod(F3, x + y, N) == (residue_mod(F3, x, N) + residue_mod(F3, y, N)) % mod
    assert residue_mod(F3, x * y, N) == (residue_mod(F3, x, N) * residue_mod(F3, y, N)) % mod
