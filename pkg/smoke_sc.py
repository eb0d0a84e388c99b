import random
import sys
from fractions import Fraction

sys.path.insert(0, "src")

from padiclocal.padic_core import PrimeLocalField, valuation
from padiclocal.torus_local import LocalTorusCase
from padiclocal.steinberg_cocycles import (
    LocalHomomorphism, SteinbergElement, X1_POINT, boundary_eigenvalues,
    check_coboundary, check_cocycle_identity, cocycle_z,
    compact_support_decomposition, in_open_set, open_set_element,
    ord_homomorphism, phi1_section, point_torus_coordinate,
    stabilized_values, translated_cocycle,
)
from padiclocal.principal_series import p1_points

rng = random.Random(23)

# 1. homomorphism basics: additivity, torsion killed, normalization
for p in (2, 3, 5):
    field = PrimeLocalField(p)
    M = 10
    ell = LocalHomomorphism(field, 3, 7, M)
    base = 1 + p if p != 2 else 5
    norm = LocalHomomorphism(field, 0, 1, M)
    assert norm.value(base) == 1, (p, norm.value(base))
    assert norm.value(base * base) == 2
    # torsion: the Teichmuller lift of any unit has coordinate 0
    for u in range(1, p):
        if p == 2:
            break
        assert norm.value(u) == norm.value(Fraction(u)) == norm.value(u) % p ** M
    for _ in range(200):
        num = rng.randint(1, 400)
        den = rng.choice([1, 1, 3, 7, 11, 13])
        x = Fraction(num, den)
        ymul = Fraction(rng.randint(1, 400), rng.choice([1, 7, 9]))
        lhs = ell.value(x * ymul)
        rhs = (ell.value(x) + ell.value(ymul)) % p ** M
        assert lhs == rhs, (p, x, ymul, lhs, rhs)
    assert ord_homomorphism(field).value(Fraction(p ** 4 * (p + 1), p + 1)) == 4
    assert LocalHomomorphism(field, 0, 1, M).value(-1) == 0  # torsion
print("homomorphism additivity / normalization / torsion OK for p in {2,3,5}")

# 2. open set membership and the indicator element
case = LocalTorusCase("split", PrimeLocalField(3), 0)
elt = open_set_element(case, 4, 8)
assert elt.table[X1_POINT] == 1
assert elt.table[("i", 0)] == 1  # coordinate 1 lies inside
n_in = sum(elt.table.values())
assert 0 < n_in < len(elt.table)
# the second excluded point never appears among the exact samples
for point in p1_points(case.field, 4):
    u = point_torus_coordinate(case, point)
    if u is not None:
        assert u != 0
print("open set element OK")

# 3. the ord cocycle at valuation k: clamp shape, unit-independence
field3 = PrimeLocalField(3)
for n_T in (0, 1):
    case = LocalTorusCase("split", field3, n_T)
    ordl = ord_homomorphism(field3, 8)
    for k in (1, 2):
        tables = []
        for unit in (1, 2, 4):
            z = cocycle_z(ordl, case, Fraction(3 ** k * unit), k + n_T + 2)
            tables.append(z.table)
            for point, value in z.table.items():
                u = point_torus_coordinate(case, point)
                if u is None:
                    assert value == k
                else:
                    m = valuation(field3, u)
                    assert value == min(max(m, 0), k) % 3 ** 8, (point, u, value)
        assert tables[0] == tables[1] == tables[2]
print("ord cocycle clamp shape OK, depends only on the valuation")

# 4. cocycle identity, random data (the acceptance configuration)
field = PrimeLocalField(3)
case = LocalTorusCase("split", field, 0)
ok = 0
for trial in range(100):
    a1, b1 = rng.randint(0, 3 ** 8 - 1), rng.randint(0, 3 ** 8 - 1)
    ell = LocalHomomorphism(field, a1, b1, 8)
    y1 = Fraction(rng.choice([1, 2, 4, 5])) * Fraction(3) ** rng.randint(-2, 2)
    y2 = Fraction(rng.choice([1, 2, 7, 8])) * Fraction(3) ** rng.randint(-2, 2)
    assert check_cocycle_identity(ell, case, y1, y2, 6), (trial, y1, y2)
    ok += 1
print(f"cocycle identity OK ({ok} random trials, p=3, N=6, M=8)")

# t2 = t1^{-1} consistency: z(1) = 0
ell = LocalHomomorphism(field, 2, 5, 8)
z1 = cocycle_z(ell, case, 1, 5)
assert set(z1.table.values()) == {0}
assert check_cocycle_identity(ell, case, Fraction(6), Fraction(1, 6), 5)
print("inverse pair consistency OK")

# 5. linearity in the homomorphism
for trial in range(20):
    a1, b1 = rng.randint(0, 80), rng.randint(0, 80)
    a2, b2 = rng.randint(0, 80), rng.randint(0, 80)
    c1, c2 = rng.randint(0, 80), rng.randint(0, 80)
    ell1 = LocalHomomorphism(field, a1, b1, 8)
    ell2 = LocalHomomorphism(field, a2, b2, 8)
    comb = LocalHomomorphism(field, c1 * a1 + c2 * a2, c1 * b1 + c2 * b2, 8)
    y = Fraction(rng.choice([2, 3, 12]))
    lhs = cocycle_z(comb, case, y, 5)
    rhs = cocycle_z(ell1, case, y, 5).scale(c1) + cocycle_z(ell2, case, y, 5).scale(c2)
    assert lhs == rhs, trial
print("linearity in the homomorphism OK")

# 6. compact support decomposition
for y in (Fraction(3), Fraction(18), Fraction(2, 9), Fraction(5)):
    sign, window, tail = compact_support_decomposition(ell, case, y, 6)
    k = valuation(field, y)
    assert sign == (1 if k >= 0 else -1)
    # window vanishes at the limit sample and off a bounded valuation band
    assert window.table[X1_POINT] == 0
print("compact support decomposition OK")

# 7. section: equivariance of the linear forms, coboundary identity
case1 = LocalTorusCase("split", field, 1)
for trial in range(30):
    # random integral matrix with unit determinant bottom data
    c = rng.randint(0, 80)
    d = rng.randint(1, 80)
    y = Fraction(rng.choice([1, 2, 5])) * Fraction(3) ** rng.randint(-1, 1)
    lam1, lam2 = boundary_eigenvalues(case1, y)
    l1, l2 = stabilized_values(case1, c, d)
    # the embedded torus matrix at coordinate y has rows (1,0),(C(y-1), y)
    C = Fraction(3) ** case1.n_T
    c_t, d_t = c + d * C * (y - 1), d * y
    t1, t2 = stabilized_values(case1, c_t, d_t)
    if l1 != 0:
        assert t1 == l1 * lam1, trial
    if l2 != 0:
        assert t2 == l2 * lam2, trial
print("linear form equivariance OK")

for n_T in (0, 1):
    case_n = LocalTorusCase("split", field, n_T)
    for trial in range(25):
        a1, b1 = rng.randint(0, 3 ** 8 - 1), rng.randint(0, 3 ** 8 - 1)
        ell_r = LocalHomomorphism(field, a1, b1, 8)
        y = Fraction(rng.choice([1, 2, 4, 7])) * Fraction(3) ** rng.randint(-2, 2)
        assert check_coboundary(ell_r, case_n, y, 6 + n_T), (n_T, trial, y)
print("coboundary identity OK (random homomorphisms, n_T in {0,1})")

# zero homomorphism: constant section, zero class
zell = LocalHomomorphism(field, 0, 0, 8)
sec = phi1_section(zell, case, 4)
assert set(sec.values()) == {0}
print("zero homomorphism gives the zero class")

print("ALL STEINBERG-COCYCLE SMOKE OK")
