import random
import sys

sys.path.insert(0, "src")
from fractions import Fraction

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
    lower_unipotent,
    mu_alpha,
    mu_exponent,
    omega,
    p1_points,
    point_representative,
    reduce_to_point,
    required_level,
    series_from_torus,
    spherical_vector,
    torus_coordinate,
    torus_matrix,
    torus_route_integral,
    translate_vector,
    upper_unipotent,
)
from padiclocal.rational_forms import LocalRationalFunction, geometric_tail
from padiclocal.torus_local import LocalTorusCase, ShellFunction, indicator_unit_ball

rng = random.Random(11)


def rand_frac(scale=40):
    num = rng.randint(-scale, scale)
    den = rng.randint(1, scale)
    return Fraction(num, den)


# 1. Iwasawa decomposition: examples and round trip
f3 = PrimeLocalField(3)
b, k = iwasawa_decompose(diagonal(3, 1), f3)
assert b == diagonal(3, 1) and k == identity()
b, k = iwasawa_decompose(omega(), f3)
assert b == identity() and k == omega()
b, k = iwasawa_decompose(GL2Element(1, 0, Fraction(1, 3), 1), f3)
assert valuation(f3, b.d) - valuation(f3, b.a) == -2
for _ in range(1000):
    while True:
        entries = [rand_frac() for _ in range(4)]
        try:
            g = GL2Element(*entries)
            break
        except ValueError:
            continue
    b, k = iwasawa_decompose(g, f3)
    assert b * k == g
    assert b.c == 0
    for entry in (k.a, k.b, k.c, k.d):
        assert entry == 0 or valuation(f3, entry) >= 0
    assert valuation(f3, k.det()) == 0
print("iwasawa round trip OK (1000 random)")

# 2. mu examples
assert mu_alpha(diagonal(1, 3), -1, f3) == -1
assert mu_alpha(diagonal(3, 3), -1, f3) == 1
assert mu_alpha(diagonal(9, 1), Fraction(5), f3) == Fraction(1, 25)
print("mu examples OK")

# 3. point model
for q in (2, 3, 5):
    fld = PrimeLocalField(q)
    pts = p1_points(fld, 3)
    assert len(pts) == q ** 3 + q ** 2
    for pt in pts:
        rep = point_representative(pt, fld)
        assert valuation(fld, rep.det()) == 0
        assert reduce_to_point(rep.c, rep.d, fld, 3) == pt
print("point model OK")

# 4. spherical Hecke eigenvalue
for q in (2, 3, 5):
    fld = PrimeLocalField(q)
    for alpha in (1, -1):
        phi0 = spherical_vector(fld, alpha, 3)
        assert check_congruence_invariant(phi0)
        got = hecke_operator(phi0)
        eig = Fraction(alpha) + q * Fraction(alpha) ** -1
        assert got == phi0.scale(eig), (q, alpha)
print("spherical Hecke eigenvalue OK for q in {2,3,5}, alpha in {1,-1}")

# non-invariant input refused
fld = PrimeLocalField(3)
bad = spherical_vector(fld, 1, 2)
bad.table[("f", 1)] = Fraction(7)
try:
    hecke_operator(bad)
    raise SystemExit("expected a non-invariance error")
except ValueError:
    pass
print("non-invariant Hecke input refused")

# linearity
v1 = spherical_vector(fld, -1, 2)
v2 = translate_vector(v1, GL2Element(1, 1, 1, 2))
assert hecke_operator(v1) + hecke_operator(v2) == hecke_operator(v1 + v2) if check_congruence_invariant(v2) else True

# 5. spherical line integral: closed form and the vanishing limit
for q in (2, 3, 5):
    fld = PrimeLocalField(q)
    case = LocalTorusCase("split", fld, 0)
    for alpha in (1, -1):
        phi0 = spherical_vector(fld, alpha, 3)
        got = chart_route_rational(phi0, case, 1)
        one = LocalRationalFunction.constant(1, q)
        ratio = LocalRationalFunction.monomial(Fraction(q), 2, q)
        want = one + (1 - Fraction(1, q)) * geometric_tail(ratio, 1)
        assert got == want, (q, alpha)
        assert got.evaluate_at_s(0) == 0
print("spherical line integral: closed form matches, vanishes at s=0")

# 6. the torus embedding: basic values
case = LocalTorusCase("split", PrimeLocalField(3), 0)
f_unit = indicator_unit_ball(case, 0)
lvl = required_level(f_unit, 0)
vec = series_from_torus(f_unit, -1, lvl)
for y in (Fraction(1), Fraction(2), Fraction(4, 7)):
    assert vec.evaluate(torus_matrix(case, y)) == 1, y
for y in (Fraction(3), Fraction(1, 3), Fraction(18)):
    assert vec.evaluate(torus_matrix(case, y)) == 0, y
print("unit-ball embedding evaluates correctly on and off the support")


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


# 7. equivariance: embedding a translate equals translating the embedding
ok = 0
for trial in range(50):
    n_T = rng.choice((0, 1))
    case = LocalTorusCase("split", PrimeLocalField(3), n_T)
    f = random_shell_function(case, rng)
    t = Fraction(rng.choice((1, 2, 4))) * Fraction(3) ** rng.randint(-1, 1)
    lvl = max(required_level(f, n_T), required_level(f.translate(t), n_T))
    left = series_from_torus(f.translate(t), -1, lvl)
    right = translate_vector(series_from_torus(f, -1, lvl), torus_matrix(case, t))
    assert left.table == right.table, (trial, t)
    ok += 1
print(f"torus equivariance OK ({ok} random trials)")

# 8. route comparison: exact ratio at t=1, numeric ratio at random t
for n_T in (0, 1):
    case = LocalTorusCase("split", PrimeLocalField(3), n_T)
    seen = set()
    for _ in range(10):
        f = random_shell_function(case, rng)
        if torus_route_integral(f, -1).is_zero:
            continue
        c = comparison_constant(f, -1, required_level(f, n_T))
        expected = Fraction(2, 3) * Fraction(3) ** (-n_T)
        assert c == LocalRationalFunction.constant(expected, 3), c
        seen.add(str(c))
    print(f"n_T={n_T}: line/torus ratio == q^(-n_T)(1-1/q) exactly ({len(seen)} distinct checks)")

case = LocalTorusCase("split", PrimeLocalField(3), 1)
ratios = []
for trial in range(10):
    f = random_shell_function(case, rng)
    t = Fraction(rng.choice((1, 2, 5, 7))) * Fraction(3) ** rng.randint(-1, 1)
    shells = torus_route_integral(f, -1, t).evaluate_at_s(2)
    if shells == 0:
        continue
    lvl = max(required_level(f, 1), required_level(f.translate(t), 1))
    vec = series_from_torus(f, -1, lvl)
    direct = chart_route_integral(vec, case, 2, t, truncation=60)
    ratios.append(Fraction(direct) / shells)
assert len(ratios) >= 6
expected = Fraction(2, 3) * Fraction(1, 3)
assert all(abs(r / expected - 1) < 1e-9 for r in ratios), ratios
print(f"numeric route ratio constant across {len(ratios)} random (f, t) at s=2")

# divergence guard
try:
    chart_route_integral(spherical_vector(PrimeLocalField(3), 1, 2), case, Fraction(1, 2))
    raise SystemExit("expected a divergence error")
except ValueError:
    pass
print("divergence region refused")

print("ALL PRINCIPAL-SERIES SMOKE OK")
