import math
import sys
from fractions import Fraction

sys.path.insert(0, "src")

from padiclocal.padic_core import PrimeLocalField
from padiclocal.torus_local import LocalTorusCase, characters
from padiclocal.local_integrals import SteinbergDatum, is_exceptional
from padiclocal.steinberg_cocycles import LocalHomomorphism, ord_homomorphism
from padiclocal.iwasawa_algebra import FiniteLevelGroup, psi_class
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

# 1. euler factor zero pattern against the exceptional predicate
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
                    exceptional = is_exceptional(case, alpha, chi)
                    assert (value == 0) == exceptional, (q, kind, alpha)
                    checked += 1
                    zeros += value == 0
assert zeros and checked > zeros
print(f"euler factor pattern ok ({checked} configs, {zeros} zeros)")

# spherical branch is a plain ratio of caller values
case = LocalTorusCase("split", PrimeLocalField(3))
from padiclocal.torus_local import trivial_character

chi0 = trivial_character(case)
assert euler_factor_C(case, SteinbergDatum("spherical"), chi0,
                      l_ad=Fraction(9, 8), l_half=Fraction(3, 4)) == Fraction(3, 2)

# 2. local pairing constants, branch by branch
vol = c_v_constant(PlaceData(5, "inert", "spherical"))
assert vol.value == 1 and vol.depends_on == ("vol_T",)

# ramified special, matrix side: sign -1 required
place = PlaceData(5, "ramified", "special", alpha=1)
assert c_v_constant(place, chi_uniformizer=-1).value == 1
try:
    c_v_constant(place, chi_uniformizer=1)
except ValueError as err:
    assert str(err) == "Hom space vanishes"
else:
    raise AssertionError("wrong sign accepted")

# ramified special, quaternionic side: sign +1 required
place = PlaceData(5, "ramified", "special", alpha=-1, divides_disc=True)
assert c_v_constant(place, chi_uniformizer=-1).value == 1
try:
    c_v_constant(place, chi_uniformizer=1)
except ValueError as err:
    assert str(err) == "Hom space vanishes"
else:
    raise AssertionError("wrong sign accepted")

# ramified spherical: explicit eigenvalue product, and the L-value route
got = c_v_constant(PlaceData(3, "ramified", "spherical", alpha=2), 1)
assert got.value == (1 + Fraction(1, 2)) * (1 + Fraction(2, 3)) / (1 + Fraction(1, 3))
got = c_v_constant(
    PlaceData(3, "ramified", "spherical", l_half=Fraction(2), l_ad=Fraction(9, 8))
)
assert got.value == 2 * Fraction(9, 8) / Fraction(9, 8) == 2

# split: supplied pieces fold in, missing ones stay symbolic
got = c_v_constant(PlaceData(7, "split", "spherical", l_half=Fraction(5, 2)))
assert got.value == Fraction(5, 2)
assert set(got.depends_on) == {"norm_diff", "w_inner"}
got = c_v_constant(
    PlaceData(7, "split", "spherical", l_half=2, norm_diff=3, w_inner=4)
)
assert got.value == Fraction(3, 2) and got.depends_on == ()

try:
    c_v_constant(PlaceData(3, "inert", "spherical", squarefree_level=False))
except ValueError:
    pass
else:
    raise AssertionError("hypothesis violation accepted")
print("pairing constants ok")

# 3. interpolation assembly
value = interpolation_value("def", 1, 3, 1, 2, Fraction(1, 2), 1)
assert abs(value - math.sqrt(3) / 2) < 1e-15
value = interpolation_value("ind", 1, 3, 1, 2, Fraction(1, 2), 1)
assert abs(value - math.sqrt(3) / 4) < 1e-15
assert interpolation_value("def", 1, 3, 1, 0, Fraction(1, 2), 1) == 0
for bad in (("def", 1, -3, 1, 1, 1, 1), ("def", 1, 3, 1, 1, 1, 0)):
    try:
        interpolation_value(*bad)
    except ValueError:
        pass
    else:
        raise AssertionError("bad input accepted")

# 4. derivative constant with the symbolic cancellation
for q in (2, 3, 5):
    qq = Fraction(q)
    assert c_pi_steinberg(q) == -1 / (1 - qq ** -2)
assert c_pi_steinberg(3, ad_value=Fraction(9, 8)) == Fraction(-9, 8)
print("constants ok")

# 5. rank-one L-invariants, precision 10
p = 3
field = PrimeLocalField(p)
log_ell = LocalHomomorphism(field, 0, 1, precision=10)
ord_ell = ord_homomorphism(field, precision=10)

tate = TateLatticePairing(field, [[p]])
assert geometric_L_invariant(tate, log_ell) == 0
assert geometric_L_invariant(tate, ord_ell) == 1

tate = TateLatticePairing(field, [[p * (1 + p)]])
assert geometric_L_invariant(tate, ord_ell) == 1
assert geometric_L_invariant(tate, log_ell) == 1

try:
    geometric_L_invariant(TateLatticePairing(field, [[3, 9], [3, 9]]), log_ell)
except ValueError as err:
    assert str(err) == "pairing not perfect"
else:
    raise AssertionError("singular valuation matrix accepted")

# 6. rank two with a quadratic action: invariant commutes with it
q1 = Fraction(p * (1 + p))          # valuation 1, unit coordinate 1
q2 = Fraction(p ** 3 * (1 + p) ** 2)  # valuation 3, unit coordinate 2
action = [[0, 1], [2, 0]]
tate2 = TateLatticePairing(
    field, [[q1, q2], [q2, q1 ** 2]], action_matrices=[action]
)
matrix = geometric_L_invariant(tate2, log_ell)
modulus = p ** 10
expected = [[Fraction(4, 7), Fraction(1, 7)], [Fraction(2, 7), Fraction(4, 7)]]
inv7 = pow(7, -1, modulus)
for row, exp_row in zip(matrix, expected):
    for got_entry, exp_entry in zip(row, exp_row):
        assert got_entry == exp_entry.numerator * inv7 % modulus

# a non-commuting action is rejected
bad = TateLatticePairing(
    field, [[q1, q2], [q2, q1 ** 2]], action_matrices=[[[0, 1], [1, 0]]]
)
try:
    geometric_L_invariant(bad, log_ell)
except AssertionError as err:
    assert "commute" in str(err)
else:
    raise AssertionError("non-commuting action accepted")

# 7. linearity in the homomorphism, exact mod p^10
ell_a = LocalHomomorphism(field, 2, 3, precision=10)
ell_b = LocalHomomorphism(field, 1, -4, precision=10)
combo = LocalHomomorphism(field, 2 * 2 + 5 * 1, 2 * 3 + 5 * (-4), precision=10)
m_a = geometric_L_invariant(tate2, ell_a)
m_b = geometric_L_invariant(tate2, ell_b)
m_c = geometric_L_invariant(tate2, combo)
for i in range(2):
    for j in range(2):
        assert m_c[i][j] == (2 * m_a[i][j] + 5 * m_b[i][j]) % modulus
print("L-invariants ok")

# 8. derivative classes and the measure round trip
linv = LInvariantVector(2, 7)
assert linv.normalized() == LInvariantVector(Fraction(1), Fraction(7, 2))
assert derivative_class(Fraction(3, 2), linv) == {
    "ord": 3, "log": Fraction(21, 2)
}
assert derivative_class(0, linv) == {"ord": 0, "log": 0}

G = FiniteLevelGroup(3, 2, 3)
mu = derivative_measure(G, (5, 17))
assert psi_class(mu) == (5, 17)
mu = derivative_measure(G, (Fraction(40), Fraction(-1)))
assert psi_class(mu) == (40 % 27, 26)
print("derivative classes ok")

print("ALL INTERPOLATION-ENGINE SMOKE OK")
