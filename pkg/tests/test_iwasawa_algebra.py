import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padiclocal.iwasawa_algebra import (
    CompatibleFamily,
    FiniteLevelGroup,
    GroupAlgebraElement,
    augmentation_quotient_order,
    convolve,
    degree,
    integrate,
    phi_map,
    psi_class,
)

SHAPES = [(2, 1, 2), (3, 2, 2), (3, 1, 3)]


def random_element(group, rng, denominators=(1, 2, 3)):
    coeffs = {}
    for _ in range(rng.randrange(1, 5)):
        g = tuple(rng.randrange(group.modulus) for _ in range(group.r))
        coeffs[g] = Fraction(rng.randrange(-6, 7), rng.choice(denominators))
    return GroupAlgebraElement(group, coeffs)


def test_group_structure():
    G = FiniteLevelGroup(3, 2, 2)
    assert G.modulus == 9
    assert G.order == 81
    assert G.add((4, 7), (6, 5)) == (1, 3)
    assert G.negate((4, 0)) == (5, 0)
    assert G.reduce((7, 8), 1) == (1, 2)
    assert len(list(G.elements())) == 81
    assert G.generator(0) == (1, 0) and G.generator(1) == (0, 1)


def test_convolution_axioms_exhaustive_on_the_delta_basis():
    G = FiniteLevelGroup(2, 1, 2)
    deltas = [GroupAlgebraElement.delta(G, g) for g in G.elements()]
    unit = GroupAlgebraElement.delta(G, G.zero())
    for a in deltas:
        assert convolve(unit, a) == a
        for b in deltas:
            assert convolve(a, b) == convolve(b, a)
            for c in deltas:
                assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
                assert convolve(a + b, c) == convolve(a, c) + convolve(b, c)


def test_convolution_axioms_on_random_elements():
    rng = random.Random(31)
    G = FiniteLevelGroup(2, 1, 2)
    for _ in range(60):
        a, b, c = (random_element(G, rng) for _ in range(3))
        assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
        assert convolve(a, b) == convolve(b, a)
        assert convolve(a + b, c) == convolve(a, c) + convolve(b, c)
        assert degree(convolve(a, b)) == degree(a) * degree(b)


@pytest.mark.parametrize("p, r, N", [(2, 1, 2), (3, 2, 2), (5, 1, 1)])
def test_translation_identity(p, r, N):
    rng = random.Random(47)
    G = FiniteLevelGroup(p, r, N)
    d0 = GroupAlgebraElement.delta(G, G.zero())
    for _ in range(40):
        g = tuple(rng.randrange(G.modulus) for _ in range(r))
        h = tuple(rng.randrange(G.modulus) for _ in range(r))
        lhs = (
            GroupAlgebraElement.delta(G, G.add(g, h))
            - GroupAlgebraElement.delta(G, g)
            - GroupAlgebraElement.delta(G, h)
            + d0
        )
        assert lhs == convolve(phi_map(G, g), phi_map(G, h))


@pytest.mark.parametrize("p, r, N", SHAPES)
def test_coordinate_map_inverts_the_insertion_exhaustively(p, r, N):
    G = FiniteLevelGroup(p, r, N)
    for g in G.elements():
        assert psi_class(phi_map(G, g)) == G.element(g)


def test_precision_truncates_below_the_level():
    G = FiniteLevelGroup(3, 1, 3)
    assert psi_class(phi_map(G, (25,)), precision=2) == (25 % 9,)


def test_coordinate_map_kills_products_of_augmentation_elements():
    rng = random.Random(53)
    G = FiniteLevelGroup(3, 2, 2)
    zero = (0,) * G.r
    for _ in range(200):
        a = random_element(G, rng, denominators=(1, 2))
        b = random_element(G, rng, denominators=(1, 2))
        a = a - GroupAlgebraElement.delta(G, G.zero()).scale(degree(a))
        b = b - GroupAlgebraElement.delta(G, G.zero()).scale(degree(b))
        assert degree(a) == 0 and degree(b) == 0
        assert psi_class(convolve(a, b)) == zero


def test_coordinate_map_requires_total_mass_zero():
    G = FiniteLevelGroup(3, 2, 2)
    with pytest.raises(ValueError, match="not in augmentation ideal"):
        psi_class(GroupAlgebraElement.delta(G, G.zero()))


@pytest.mark.parametrize("p, r, N", SHAPES)
def test_augmentation_quotient_order(p, r, N):
    assert augmentation_quotient_order(FiniteLevelGroup(p, r, N)) == p ** (N * r)


def test_integration_and_mass():
    G = FiniteLevelGroup(5, 1, 2)
    mu = GroupAlgebraElement(G, {(3,): Fraction(2), (7,): Fraction(-1, 5)})
    assert integrate(mu, lambda g: g[0] ** 2) == 2 * 9 - Fraction(49, 5)
    assert degree(mu) == Fraction(9, 5)
    assert not mu.is_integral
    assert mu.min_valuation() == -1
    assert GroupAlgebraElement(G, {(3,): 10}).is_integral
    assert GroupAlgebraElement(G).min_valuation() is None


@settings(max_examples=40)
@given(
    coeff=st.fractions(min_value=-9, max_value=9, max_denominator=6),
    point=st.integers(min_value=0, max_value=8),
)
def test_degree_is_the_integral_of_one(coeff, point):
    G = FiniteLevelGroup(3, 1, 2)
    mu = GroupAlgebraElement(G, {(point,): coeff})
    assert degree(mu) == integrate(mu, lambda g: 1) == coeff


def constant_family(p, r, levels, scale=Fraction(1)):
    out = []
    for k in range(1, levels + 1):
        G = FiniteLevelGroup(p, r, k)
        out.append(GroupAlgebraElement.delta(G, G.zero()).scale(scale))
    return out


def test_bounded_certificate_for_constant_families():
    assert CompatibleFamily(constant_family(3, 1, 4)).is_bounded() == (True, 0)
    scaled = CompatibleFamily(constant_family(3, 1, 4, scale=Fraction(1, 27)))
    assert scaled.is_bounded() == (True, -3)


def test_equidistributed_mass_is_flagged_unbounded():
    growing = []
    for k in range(1, 5):
        G = FiniteLevelGroup(3, 1, k)
        coeffs = {(g,): Fraction(1, 3 ** k) for g in range(3 ** k)}
        growing.append(GroupAlgebraElement(G, coeffs))
    bounded, witness = CompatibleFamily(growing).is_bounded()
    assert not bounded
    assert witness == -4


def test_incoherent_families_are_refused():
    bad = constant_family(3, 1, 2)[:1] + [
        GroupAlgebraElement.delta(FiniteLevelGroup(3, 1, 2), (1,))
    ]
    with pytest.raises(ValueError, match="incompatible family"):
        CompatibleFamily(bad)
