import sys

sys.path.insert(0, "src")
from fractions import Fraction

from padiclocal.local_integrals import (
    CompactTorusFunction,
    SteinbergDatum,
    euler_factor,
    height_kernel,
    height_kernel_oracle,
    height_pairing_total,
    height_total,
    is_exceptional,
    new_vector_inner_product,
    new_vector_inner_product_from_shells,
    pairing_alpha,
    steinberg_height_constant,
    toric_integral_oracle,
    toric_integral_proof_form,
    toric_integral_statement,
)
from padiclocal.padic_core import PrimeLocalField
from padiclocal.rational_forms import PoleError
from padiclocal.torus_local import (
    LocalTorusCase,
    characters,
    formal_character,
    trivial_character,
    unit_quotient,
)


def case_of(kind, q, n_T=0):
    return LocalTorusCase(kind, PrimeLocalField(q), n_T)


def same(a, b):
    diff = a - b
    return diff.is_zero() if hasattr(diff, "is_zero") else diff == 0


# ---- frozen single values --------------------------------------------------
c = case_of("split", 3)
chi1 = formal_character(c, 1, 1)
v = toric_integral_statement(c, 1, chi1).evaluate_at_s(0)
print("statement(split,3,nchi=1) at 0:", v)
assert v == Fraction(-2), v

chi0 = formal_character(c, 0, 1)
v2 = toric_integral_statement(c, 1, chi0).evaluate_at_s(2)
print("split q=3 trivial at s=2:", v2)
assert v2 == Fraction(-32, 13), v2

# ---- statement == proofform, formal sweep ----------------------------------
checked = 0
for q in (2, 3, 5):
    for kind in ("split", "inert", "ramified"):
        for n_T in (0, 1, 2):
            cs = case_of(kind, q, n_T)
            for alpha in (1, -1):
                for n_chi in range(5):
                    uvs = (None,) if kind == "inert" else (1, -1)
                    for uv in uvs:
                        ch = formal_character(cs, n_chi, 1 if uv is None else uv)
                        st = toric_integral_statement(cs, alpha, ch)
                        pf = toric_integral_proof_form(cs, alpha, ch)
                        assert st.equal(pf), (q, kind, n_T, alpha, n_chi, uv)
                        checked += 1
print("statement == proofform sweep OK;", checked, "configs")

# ---- oracle vs statement ---------------------------------------------------
oracle_checked = 0
pole_checked = 0
for q in (2, 3):
    for kind in ("split", "inert", "ramified"):
        for n_T in (0, 1):
            cs = case_of(kind, q, n_T)
            for alpha in (1, -1):
                for ch in characters(cs, 2):
                    for s in (1, Fraction(3, 2), 2):
                        try:
                            st = toric_integral_statement(cs, alpha, ch).evaluate_at_s(s)
                        except PoleError:
                            try:
                                toric_integral_oracle(cs, alpha, ch, s, truncation=60)
                            except PoleError:
                                pole_checked += 1
                                continue
                            raise AssertionError(
                                ("oracle missed pole", q, kind, n_T, alpha, ch.n_chi, s)
                            )
                        res = toric_integral_oracle(cs, alpha, ch, s, truncation=60)
                        err = abs(res.value - st)
                        assert err <= res.tail_bound + Fraction(1, 10**12), (
                            q, kind, n_T, alpha, ch.n_chi, ch.uniformizer_value, s,
                            res.value, st, err, res.tail_bound,
                        )
                        oracle_checked += 1
print("oracle vs statement OK;", oracle_checked, "configs,", pole_checked, "pole agreements")

# ---- exceptional <=> vanishing order ---------------------------------------
exc_checked = 0
for q in (2, 3, 5):
    for kind in ("split", "inert", "ramified"):
        cs = case_of(kind, q, 1)
        for alpha in (1, -1):
            for n_chi in range(3):
                uvs = (None,) if kind == "inert" else (1, -1)
                for uv in uvs:
                    ch = formal_character(cs, n_chi, 1 if uv is None else uv)
                    st = toric_integral_statement(cs, alpha, ch)
                    order = st.order_at_point(1)
                    flag = is_exceptional(cs, alpha, ch)
                    assert flag == (order >= 1), (q, kind, alpha, n_chi, uv, order, flag)
                    exc_checked += 1
print("exceptional <=> vanishing order OK;", exc_checked, "configs")

# ---- euler factor ----------------------------------------------------------
c3 = case_of("split", 3)
d_special = SteinbergDatum("special", alpha=1)
e = euler_factor(c3, d_special, formal_character(c3, 0, -1))
print("euler(split, alpha=1, chi(pi)=-1):", e)
assert e == Fraction(4), e
assert euler_factor(c3, d_special, formal_character(c3, 0, 1)) == 0
ci = case_of("inert", 3)
assert euler_factor(ci, d_special, formal_character(ci, 0)) == 0
cr = case_of("ramified", 3)
assert euler_factor(cr, d_special, formal_character(cr, 0, -1)) == Fraction(2)
assert euler_factor(cr, d_special, formal_character(cr, 0, 1)) == 0
assert euler_factor(c3, d_special, formal_character(c3, 2, 1)) == Fraction(9)
for q in (2, 3, 5):
    for kind in ("split", "inert", "ramified"):
        cs = case_of(kind, q)
        for alpha in (1, -1):
            dd = SteinbergDatum("special", alpha=alpha)
            for n_chi in range(3):
                uvs = (None,) if kind == "inert" else (1, -1)
                for uv in uvs:
                    ch = formal_character(cs, n_chi, 1 if uv is None else uv)
                    zero = euler_factor(cs, dd, ch) == 0
                    assert zero == is_exceptional(cs, alpha, ch), (q, kind, alpha, n_chi, uv)
print("euler factor zero <=> exceptional OK")

# ---- inner products: closed forms vs shell re-derivation -------------------
for q in (2, 3):
    for kind in ("split", "inert", "ramified"):
        for n_T in (0, 1):
            cs = case_of(kind, q, n_T)
            if kind == "split":
                for nu_c, nu_d in ((0, 0), (0, 1), (1, 2)):
                    a = new_vector_inner_product(
                        cs, SteinbergDatum("spherical"), n_s=nu_c + nu_d
                    )
                    b = new_vector_inner_product_from_shells(
                        cs, SteinbergDatum("spherical"), nu_c=nu_c, nu_d=nu_d
                    )
                    assert a.value == b.value, (kind, q, n_T, nu_c, nu_d, a, b)
            else:
                a = new_vector_inner_product(cs, SteinbergDatum("spherical"))
                b = new_vector_inner_product_from_shells(cs, SteinbergDatum("spherical"))
                assert a.value == b.value, (kind, q, n_T, a.value, b.value)
            for alpha in (1, -1):
                dd = SteinbergDatum("special", alpha=alpha)
                a = new_vector_inner_product(cs, dd)
                b = new_vector_inner_product_from_shells(cs, dd)
                assert a.value == b.value, (kind, q, n_T, alpha, a.value, b.value)
print("inner product closed == shell re-derivation OK")

# ---- height kernel ---------------------------------------------------------
hk = height_kernel(3, 0, 1)
print("height_kernel(3,0,1):", hk)
assert hk == Fraction(3, 4), hk
assert height_kernel(3, 0, 0) == Fraction(1, 4)
for q in (2, 3, 5):
    for n_T in (0, 1):
        for ordv in (-2, -1, 0, 1, 2):
            a = height_kernel(q, n_T, ordv)
            res = height_kernel_oracle(q, n_T, ordv, truncation=40)
            assert res == a, (q, n_T, ordv, a, res)
tot = height_total(3, 0)
exp = (1 + Fraction(1, 3)) / (3 * (1 - Fraction(1, 3)) ** 3)
print("height_total(3,0):", tot, "expected:", exp)
assert tot == exp, (tot, exp)
print("height kernel + oracle + total OK")

shc = steinberg_height_constant(3)
print("steinberg_height_constant(3):", shc)
assert shc == Fraction(-9, 8), shc

hp = height_pairing_total(3, 0)
print("height_pairing_total(3,0):", hp.value, "deps:", hp.depends_on)

# ---- pairing ---------------------------------------------------------------
ci = case_of("inert", 3, 0)
group2 = unit_quotient("inert", 3, 2)
elems = sorted(group2.elements)
ones = {e: Fraction(1) for e in elems}
f_const = CompactTorusFunction(ci, 2, ones)
dd = SteinbergDatum("special", alpha=1)
ch = trivial_character(ci)
pr = pairing_alpha(ci, dd, ch, f_const, f_const)
print("pairing inert trivial: value", pr.value, "exceptional", pr.exceptional)
assert pr.exceptional
assert pr.value == 0

ch2 = next(c_ for c_ in characters(ci, 2) if c_.n_chi == 2)
f_delta = CompactTorusFunction(ci, 2, {elems[0]: Fraction(1)})
g_delta = CompactTorusFunction(ci, 2, {elems[1]: Fraction(1)})
pr2 = pairing_alpha(ci, dd, ch2, f_delta, g_delta)
print("pairing inert nchi=2 delta: exceptional", pr2.exceptional)
assert not pr2.exceptional
assert not same(pr2.value, 0)

left = pairing_alpha(ci, dd, ch2, f_delta, g_delta)
right = pairing_alpha(ci, dd, ch2.inverse(), g_delta, f_delta)
print("pairing conjugate symmetry:", same(left.value, right.value))
assert same(left.value, right.value), (left.value, right.value)

print("ALL LOCAL-INTEGRAL SMOKE OK")
