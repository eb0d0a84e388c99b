import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

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

rng = random.Random(31)


def random_element(group, denominators=(1, 2, 3)):
    coeffs = {}
    for _ in range(rng.randrange(1, 5)):
        g = tuple(rng.randrange(group.modulus) for _ in range(group.r))
        coeffs[g] = Fraction(rng.randrange(-6, 7), rng.choice(denominators))
    return GroupAlgebraElement(group, coeffs)


# 1. algebra axioms, exhaustive over the delta basis at p=2 N=2 r=1
G = FiniteLevelGroup(2, 1, 2)
deltas = [GroupAlgebraElement.delta(G, g) for g in G.elements()]
unit = GroupAlgebraElement.delta(G, G.zero())
for a in deltas:
    assert convolve(unit, a) == a and convolve(a, unit) == a
    for b in deltas:
        assert convolve(a, b) == convolve(b, a)
        for c in deltas:
            assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
            assert convolve(a + b, c) == convolve(a, c) + convolve(b, c)
for _ in range(100):
    a, b, c = (random_element(G) for _ in range(3))
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
    assert convolve(a, b) == convolve(b, a)
    assert convolve(a + b, c) == convolve(a, c) + convolve(b, c)
    assert degree(convolve(a, b)) == degree(a) * degree(b)
print("axioms ok")

# 2. translation identity d_{g+h} - d_g - d_h + d_0 = (d_g - d_0)*(d_h - d_0)
for p, r, N in [(2, 1, 2), (3, 2, 2), (5, 1, 1)]:
    G = FiniteLevelGroup(p, r, N)
    d0 = GroupAlgebraElement.delta(G, G.zero())
    for _ in range(60):
        g = tuple(rng.randrange(G.modulus) for _ in range(r))
        h = tuple(rng.randrange(G.modulus) for _ in range(r))
        lhs = (
            GroupAlgebraElement.delta(G, G.add(g, h))
            - GroupAlgebraElement.delta(G, g)
            - GroupAlgebraElement.delta(G, h)
            + d0
        )
        assert lhs == convolve(phi_map(G, g), phi_map(G, h))
print("translation identity ok")

# 3. psi o phi = identity, exhaustively at the three reference shapes
start = time.time()
for p, r, N in [(2, 1, 2), (3, 2, 2), (3, 1, 3)]:
    G = FiniteLevelGroup(p, r, N)
    for g in G.elements():
        assert psi_class(phi_map(G, g)) == G.element(g)
print(f"psi o phi = id ok ({time.time() - start:.2f}s)")

# truncated precision wins when below the level
G = FiniteLevelGroup(3, 1, 3)
assert psi_class(phi_map(G, (25,)), precision=2) == (25 % 9,)

# 4. psi kills the ideal square (on measures with p-integral coefficients)
G = FiniteLevelGroup(3, 2, 2)
zero = (0,) * G.r
for _ in range(200):
    a = random_element(G, denominators=(1, 2))
    b = random_element(G, denominators=(1, 2))
    a = a - GroupAlgebraElement.delta(G, G.zero()).scale(degree(a))
    b = b - GroupAlgebraElement.delta(G, G.zero()).scale(degree(b))
    assert degree(a) == 0 and degree(b) == 0
    prod = convolve(a, b)
    assert psi_class(prod) == zero
print("psi(I^2) = 0 ok")

try:
    psi_class(GroupAlgebraElement.delta(G, G.zero()))
except ValueError as err:
    assert str(err) == "not in augmentation ideal"
else:
    raise AssertionError("degree-one element accepted")

# 5. quotient size |I/I^2| = p^{Nr} at all three shapes
start = time.time()
for p, r, N in [(2, 1, 2), (3, 2, 2), (3, 1, 3)]:
    G = FiniteLevelGroup(p, r, N)
    size = augmentation_quotient_order(G)
    assert size == p ** (N * r), (p, r, N, size)
print(f"quotient order ok ({time.time() - start:.2f}s)")

# 6. integrate against explicit functions
G = FiniteLevelGroup(5, 1, 2)
mu = GroupAlgebraElement(G, {(3,): Fraction(2), (7,): Fraction(-1, 5)})
assert integrate(mu, lambda g: g[0] ** 2) == 2 * 9 - Fraction(49, 5)
assert degree(mu) == Fraction(9, 5)
assert not mu.is_integral and mu.min_valuation() == -1
assert GroupAlgebraElement(G, {(3,): 10}).is_integral

# 7. compatible families and the bounded certificate
def constant_family(p, r, levels, scale=Fraction(1)):
    out = []
    for k in range(1, levels + 1):
        G = FiniteLevelGroup(p, r, k)
        out.append(GroupAlgebraElement.delta(G, G.zero()).scale(scale))
    return out

fam = CompatibleFamily(constant_family(3, 1, 4))
assert fam.is_bounded() == (True, 0)

fam = CompatibleFamily(constant_family(3, 1, 4, scale=Fraction(1, 27)))
assert fam.is_bounded() == (True, -3)

# equidistributed mass p^{-k} per point at level k: compatible but unbounded
growing = []
for k in range(1, 5):
    G = FiniteLevelGroup(3, 1, k)
    coeffs = {(g,): Fraction(1, 3 ** k) for g in range(3 ** k)}
    growing.append(GroupAlgebraElement(G, coeffs))
fam = CompatibleFamily(growing)
bounded, witness = fam.is_bounded()
assert not bounded and witness == -4

try:
    CompatibleFamily(
        constant_family(3, 1, 2)[:1]
        + [GroupAlgebraElement.delta(FiniteLevelGroup(3, 1, 2), (1,))]
    )
except ValueError as err:
    assert str(err) == "incompatible family"
else:
    raise AssertionError("incompatible family accepted")
print("families ok")

print("ALL IWASAWA-ALGEBRA SMOKE OK")
