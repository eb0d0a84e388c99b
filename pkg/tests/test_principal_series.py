import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padiclocal.padic_core import PrimeLocalField, valuation
from padiclocal.principal_series import (
    GL2Element,
    chart_route_integral,
    chart_route_rational,
    check_congruence_invariant,
    comparison_constant,
    diagonal,
    hecke_operator,
    identity,
    iwasawa_decompose,
    mu_alpha,
    omega,
    p1_points,
    point_representative,
    reduce_to_point,
    required_level,
    series_from_torus,
    spherical_vector,
    torus_matrix,
    torus_route_integral,
    translate_vector,
)
from padiclocal.rational_forms import LocalRationalFunction, geometric_tail
from padiclocal.torus_local import LocalTorusCase, ShellFunction, indicator_unit_ball

F3 = PrimeLocalField(3)


small_fracs = st.fractions(min_value=-40, max_value=40, max_denominator=40)


def test_iwasawa_decomposition_examples():
    b, k = iwasawa_decompose(diagonal(3, 1), F3)
    assert b == diagonal(3, 1) and k == identity()
    b, k = iwasawa_decompose(omega(), F3)
    assert b == identity() and k == omega()
    b, k = iwasawa_decompose(GL2Element(1, 0, Fraction(1, 3), 1), F3)
    assert valuation(F3, b.d) - valuation(F3, b.a) == -2


@settings(max_examples=150)
@given(a=small_fracs, b=small_fracs, c=small_fracs, d=small_fracs)
def test_iwasawa_round_trip(a, b, c, d):
    if a * d - b * c == 0:
        return
    g = GL2Element(a, b, c, d)
    upper, unit = iwasawa_decompose(g, F3)
    assert upper * unit == g
    assert upper.c == 0
    for entry in (unit.a, unit.b, unit.c, unit.d):
        assert entry == 0 or valuation(F3, entry) >= 0
    assert valuation(F3, unit.det()) == 0


def test_singular_matrix_is_refused():
    with pytest.raises(ValueError):
        GL2Element(1, 2, 2, 4)


def test_module_character_examples():
    assert mu_alpha(diagonal(1, 3), -1, F3) == -1
    assert mu_alpha(diagonal(3, 3), -1, F3) == 1
    assert mu_alpha(diagonal(9, 1), Fraction(5), F3) == Fraction(1, 25)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_point_model(q):
    fld = PrimeLocalField(q)
    pts = p1_points(fld, 3)
    assert len(pts) == q ** 3 + q ** 2
    for pt in pts:
        rep = point_representative(pt, fld)
        assert valuation(fld, rep.det()) == 0
        assert reduce_to_point(rep.c, rep.d, fld, 3) == pt


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("alpha", [1, -1])
def test_hecke_eigenvalue_on_the_new_vector(q, alpha):
    fld = PrimeLocalField(q)
    phi0 = spherical_vector(fld, alpha, 3)
    assert check_congruence_invariant(phi0)
    eig = Fraction(alpha) + q * Fraction(alpha) ** -1
    assert hecke_operator(phi0) == phi0.scale(eig)


def test_hecke_refuses_non_invariant_input():
    bad = spherical_vector(F3, 1, 2)
    bad.table[("f", 1)] = Fraction(7)
    with pytest.raises(ValueError):
        hecke_operator(bad)


def test_hecke_is_linear():
    v1 = spherical_vector(F3, -1, 2)
    v2 = translate_vector(v1, GL2Element(1, 1, 1, 2))
    if check_congruence_invariant(v2):
        assert hecke_operator(v1) + hecke_operator(v2) == hecke_operator(v1 + v2)


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("alpha", [1, -1])
def test_spherical_line_integral_closed_form_and_vanishing(q, alpha):
    fld = PrimeLocalField(q)
    case = LocalTorusCase("split", fld, 0)
    phi0 = spherical_vector(fld, alpha, 3)
    got = chart_route_rational(phi0, case, 1)
    one = LocalRationalFunction.constant(1, q)
    ratio = LocalRationalFunction.monomial(Fraction(q), 2, q)
    want = one + (1 - Fraction(1, q)) * geometric_tail(ratio, 1)
    assert got == want
    assert got.evaluate_at_s(0) == 0


def test_unit_ball_embedding_values():
    case = LocalTorusCase("split", F3, 0)
    f_unit = indicator_unit_ball(case, 0)
    vec = series_from_torus(f_unit, -1, required_level(f_unit, 0))
    for y in (Fraction(1), Fraction(2), Fraction(4, 7)):
        assert vec.evaluate(torus_matrix(case, y)) == 1
    for y in (Fraction(3), Fraction(1, 3), Fraction(18)):
        assert vec.evaluate(torus_matrix(case, y)) == 0


def random_shell_function(case, rng):
    p = case.field.p
    entries = {}
    for m in rng.sample(range(-2, 3), rng.randint(1, 3)):
        n = rng.randint(0, 2)
        if n == 0:
            entries[(m, 0, 1)] = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        else:
            reps = [r for r in range(1, p ** n) if r % p]
            for rep in rng.sample(reps, rng.randint(1, min(2, len(reps)))):
                entries[(m, n, rep)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return ShellFunction(case, entries)


def test_embedding_is_equivariant():
    rng = random.Random(11)
    for trial in range(30):
        n_T = rng.choice((0, 1))
        case = LocalTorusCase("split", F3, n_T)
        f = random_shell_function(case, rng)
        t = Fraction(rng.choice((1, 2, 4))) * Fraction(3) ** rng.randint(-1, 1)
        lvl = max(required_level(f, n_T), required_level(f.translate(t), n_T))
        left = series_from_torus(f.translate(t), -1, lvl)
        right = translate_vector(series_from_torus(f, -1, lvl), torus_matrix(case, t))
        assert left.table == right.table, (trial, t)


@pytest.mark.parametrize("n_T", [0, 1])
def test_route_comparison_is_an_exact_constant(n_T):
    rng = random.Random(17)
    case = LocalTorusCase("split", F3, n_T)
    expected = Fraction(2, 3) * Fraction(3) ** (-n_T)
    checked = 0
    for _ in range(10):
        f = random_shell_function(case, rng)
        if torus_route_integral(f, -1).is_zero:
            continue
        c = comparison_constant(f, -1, required_level(f, n_T))
        assert c == LocalRationalFunction.constant(expected, 3)
        checked += 1
    assert checked >= 5


def test_numeric_route_ratio_at_translated_arguments():
    rng = random.Random(19)
    case = LocalTorusCase("split", F3, 1)
    expected = Fraction(2, 3) * Fraction(1, 3)
    ratios = []
    while len(ratios) < 10:
        f = random_shell_function(case, rng)
        t = Fraction(rng.choice((1, 2, 5, 7))) * Fraction(3) ** rng.randint(-1, 1)
        shells = torus_route_integral(f, -1, t).evaluate_at_s(2)
        if shells == 0:
            continue
        lvl = max(required_level(f, 1), required_level(f.translate(t), 1))
        vec = series_from_torus(f, -1, lvl)
        direct = chart_route_integral(vec, case, 2, t, truncation=60)
        ratios.append(Fraction(direct) / shells)
    assert all(abs(r / expected - 1) < 1e-9 for r in ratios)


def test_divergence_region_is_refused():
    case = LocalTorusCase("split", F3, 1)
    with pytest.raises(ValueError):
        chart_route_integral(spherical_vector(F3, 1, 2), case, Fraction(1, 2))
