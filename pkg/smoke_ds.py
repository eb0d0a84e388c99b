import sys
from fractions import Fraction

sys.path.insert(0, "src")

from padiclocal.discrete_series_check import (
    TruncatedGOModule,
    kernel_is_stable,
    projection_coefficient,
    sign_twist_intertwines,
    solve_omega_structures,
    verify_extension_structure,
    verify_ladder_relations,
    verify_omega_structure,
    verify_rotation_exchange,
)

K = 20
plus = TruncatedGOModule(K, 1)
minus = TruncatedGOModule(K, -1)

# ladder coefficients at the quoted spots
assert plus.apply_R(1) == (2, 2)
assert plus.apply_L(1) == (0, 0)
assert plus.apply_R(-1) == (0, 0)
assert plus.apply_L(0) == (1, -1)
for bad in (K, -K, K + 3):
    try:
        plus.apply_R(bad)
    except ValueError as err:
        assert "truncation" in str(err)
    else:
        raise AssertionError("boundary index accepted")

assert verify_ladder_relations(plus) and verify_ladder_relations(minus)
print("ladder ok")

# reflection structures: both constants pass, the alternating table fails
assert verify_omega_structure(plus)
assert verify_omega_structure(minus)
assert not verify_omega_structure(TruncatedGOModule(K, lambda k: (-1) ** k))
assert not verify_omega_structure(
    TruncatedGOModule(K, lambda k: 1 if k >= 0 else -1)
)
assert verify_rotation_exchange(plus) and verify_rotation_exchange(minus)

solutions = solve_omega_structures(K)
assert len(solutions) == 2
values = sorted(set(table[0] for table in solutions))
assert values == [Fraction(-1), Fraction(1)]
for table in solutions:
    assert len(set(table.values())) == 1
    assert verify_omega_structure(TruncatedGOModule(K, lambda k, t=table: t[k]))
print("reflection structures ok (exactly two, both constant)")

# projection and the two extensions
assert projection_coefficient(0) == 1
assert all(projection_coefficient(k) == 0 for k in range(-K, K + 1) if k)
assert kernel_is_stable(plus) and kernel_is_stable(minus)
assert sign_twist_intertwines(plus, minus)
assert verify_extension_structure(K)
try:
    verify_extension_structure(2)
except ValueError:
    pass
else:
    raise AssertionError("too-small window accepted")
print("extensions ok")

print("ALL DISCRETE-SERIES SMOKE OK")
