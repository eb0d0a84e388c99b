"""Interpolation constants and lattice-pairing L-invariants.

The square of an anticyclotomic period integral factors into an
archimedean-normalized global part, supplied by the caller, and a product
of local constants this module assembles exactly: the per-place pairing
constants for unramified characters, the interpolation Euler factor whose
zeros mark the exceptional configurations, and the derivative-side
constants of the special (trivial Satake) branch.  The second half of the
module computes L-invariants out of a multiplicative lattice pairing: the
ratio of the homomorphism-valued period matrix against the valuation-valued
one, an element of the endomorphism algebra at p.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .padic_core import PrimeLocalField, valuation, residue_mod
from .torus_local import LocalTorusCase, TorusCharacter, trivial_character
from .local_integrals import (
    SteinbergDatum,
    SymbolicValue,
    euler_factor,
    l_factor,
    steinberg_height_constant,
)
from .iwasawa_algebra import FiniteLevelGroup, GroupAlgebraElement, phi_map


@dataclass(frozen=True)
class PlaceData:
    """Everything the pairing constant of one finite place depends on.

    Global L-values, Whittaker norms, and torus volumes are never computed
    here; when absent they stay symbolic in the output.  alpha is the
    uniformizer eigenvalue (only needed away from the inert branch),
    divides_disc marks the places where the quaternion algebra ramifies,
    and squarefree_level records the standing squarefree-gcd hypothesis on
    the level against the relative discriminant.
    """

    q: int
    torus_kind: str
    pi_kind: str
    alpha: object = None
    divides_disc: bool = False
    l_half: object = None
    l_ad: object = None
    w_inner: object = None
    norm_diff: object = None
    squarefree_level: bool = True

    def __post_init__(self):
        if self.torus_kind not in ("split", "inert", "ramified"):
            raise ValueError(f"unknown torus kind {self.torus_kind!r}")
        if self.pi_kind not in ("spherical", "special"):
            raise ValueError(f"unknown representation kind {self.pi_kind!r}")
        if self.pi_kind == "special" and self.alpha not in (
            1, -1, Fraction(1), Fraction(-1),
        ):
            raise ValueError("special places require alpha = +1 or -1")


def c_v_constant(place: PlaceData, chi_uniformizer=1) -> SymbolicValue:
    """The local pairing constant of one place, for an unramified character.

    chi_uniformizer is the character's value on a uniformizer of the
    quadratic algebra; it only matters on the ramified branch.  The result
    is a rational coefficient times the symbols listed in depends_on:
    always the torus volume except on the split branch, which instead
    assembles caller-supplied Whittaker data.  A special place whose sign
    pattern has no invariant functional raises.
    """
    if not place.squarefree_level:
        raise ValueError("pairing constants need the squarefree-level hypothesis")
    q = Fraction(place.q)
    if place.torus_kind == "inert":
        return SymbolicValue(Fraction(1), ("vol_T",))
    if place.torus_kind == "ramified":
        u = Fraction(chi_uniformizer)
        if place.pi_kind == "special":
            product = Fraction(place.alpha) * u
            if place.divides_disc:
                # quaternionic side: the twisted eigenvalue must be +1
                if product != 1:
                    raise ValueError("Hom space vanishes")
            elif product != -1:
                raise ValueError("Hom space vanishes")
            return SymbolicValue(Fraction(1), ("vol_T",))
        if place.alpha is not None:
            a = Fraction(place.alpha)
            coeff = (1 + u / a) * (1 + a * u / q) / (1 + 1 / q)
            return SymbolicValue(coeff, ("vol_T",))
        if place.l_half is None or place.l_ad is None:
            raise ValueError(
                "spherical ramified branch needs alpha or both L-values"
            )
        xi2 = 1 / (1 - q ** -2)
        coeff = Fraction(place.l_half) * xi2 / Fraction(place.l_ad)
        return SymbolicValue(coeff, ("vol_T",))
    # split branch: squared Whittaker period against the inner product
    value = Fraction(1)
    deps = []
    for name, supplied in (
        ("L_half_K", place.l_half),
        ("norm_diff", place.norm_diff),
    ):
        if supplied is None:
            deps.append(name)
        else:
            value *= Fraction(supplied)
    if place.w_inner is None:
        deps.append("w_inner")
    else:
        value /= Fraction(place.w_inner)
    return SymbolicValue(value, tuple(deps))


def euler_factor_C(case: LocalTorusCase, datum: SteinbergDatum,
                   chi: TorusCharacter, l_ad=None, l_half=None):
    """The interpolation factor at the distinguished place.

    Spherical branch: adjoint value over central twisted value, both
    caller-supplied.  Special branch, unramified character: reciprocal
    twisted factor at the reflected half-integer point, which vanishes
    exactly on the exceptional configurations.  Special branch, ramified
    character: q to the conductor exponent.
    """
    return euler_factor(case, datum, chi, l_ad=l_ad, l_half=l_half)


def interpolation_value(setting: str, d: int, norm_disc, k_ram, e_factor,
                        l_ratio, norm_f_sq) -> float:
    """Assemble the square of a period integral from its global inputs.

    setting 'def' divides by 2^d and pairs with a central value; 'ind'
    divides by 2^{d+1} and pairs with a central derivative.  The L-slot
    semantics live with the caller; this is pure formula assembly.
    """
    if setting not in ("def", "ind"):
        raise ValueError(f"unknown setting {setting!r}")
    if norm_disc < 0:
        raise ValueError("discriminant norm must be nonnegative")
    if norm_f_sq <= 0:
        raise ValueError("newform norm must be positive")
    power = d + 1 if setting == "ind" else d
    return (
        math.sqrt(norm_disc) / 2 ** power * k_ram * e_factor * l_ratio / norm_f_sq
    )


def c_pi_steinberg(q: int, ad_value=None):
    """The derivative-formula constant on the special branch: minus the
    adjoint value.  The twisted factor at the center cancels the squared
    zeta factor; the cancellation is verified as an identity of rational
    functions on every call, not just at the evaluation point."""
    field = PrimeLocalField(q)
    case = LocalTorusCase("split", field)
    chi = trivial_character(case)
    twisted = l_factor("pi_chi", case, 1, chi)
    one = twisted.__class__.constant(1, q, half_shift=True)
    y = twisted.__class__.monomial(1, 1, q, half_shift=True)
    shifted_zeta_sq = one / ((one - y) * (one - y))
    assert twisted.equal(shifted_zeta_sq), (
        "twisted center factor must equal the squared shifted zeta"
    )
    return steinberg_height_constant(q, ad_value=ad_value)


# -- lattice pairings and geometric L-invariants ------------------------------


def _mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
        for i in range(n)
    ]


def _mat_inverse(a):
    """Gauss-Jordan over the rationals; None for a singular matrix."""
    n = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if work[i][col]), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        scale = work[col][col]
        work[col] = [x / scale for x in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                factor = work[i][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[col])]
    return [row[n:] for row in work]


class TateLatticePairing:
    """A multiplicative pairing of two rank-d lattices, stored through its
    matrix of period values (exact nonzero rationals).

    The valuation matrix of the periods must be invertible over the
    rationals; that is the perfect-duality condition and it is what makes
    the invariant ratio well defined.  Optional action matrices describe a
    ring acting on the covaluation side; the invariant must commute with
    them.
    """

    def __init__(self, field: PrimeLocalField, periods, action_matrices=None):
        self.field = field
        self.periods = [[Fraction(x) for x in row] for row in periods]
        self.d = len(self.periods)
        if any(len(row) != self.d for row in self.periods):
            raise ValueError("period matrix must be square")
        if any(x == 0 for row in self.periods for x in row):
            raise ValueError("period values must be nonzero")
        self.action_matrices = [
            [[Fraction(x) for x in row] for row in mat]
            for mat in (action_matrices or [])
        ]

    def ord_matrix(self):
        return [
            [Fraction(valuation(self.field, x)) for x in row]
            for row in self.periods
        ]

    def ell_matrix(self, ell):
        return [[Fraction(ell.value(x)) for x in row] for row in self.periods]


def geometric_L_invariant(pairing: TateLatticePairing, ell, precision=None):
    """The pairing's L-invariant for one homomorphism: the homomorphism
    period matrix times the inverse valuation matrix, reduced mod
    p^precision.  Scalar for rank one, a matrix otherwise; commutation
    against any supplied action matrices is asserted."""
    if precision is None:
        precision = ell.precision
    inverse = _mat_inverse(pairing.ord_matrix())
    if inverse is None:
        raise ValueError("pairing not perfect")
    matrix = _mat_mul(pairing.ell_matrix(ell), inverse)
    field = pairing.field
    reduced = [[residue_mod(field, x, precision) for x in row] for row in matrix]
    modulus = field.p ** precision
    for action in pairing.action_matrices:
        left = _mat_mul(reduced, action)
        right = _mat_mul(action, reduced)
        for row_l, row_r in zip(left, right):
            for a, b in zip(row_l, row_r):
                assert residue_mod(field, Fraction(a - b), precision) == 0, (
                    "invariant must commute with the module action"
                )
    if pairing.d == 1:
        return reduced[0][0]
    return reduced


# -- derivative classes -------------------------------------------------------


@dataclass(frozen=True)
class LInvariantVector:
    """Values of an L-invariant on the two-dimensional space of local
    homomorphisms, recorded against the standard basis: the valuation map
    and the principal-unit coordinate."""

    ord_value: object
    log_value: object

    def normalized(self) -> "LInvariantVector":
        """Rescale so the valuation component is 1."""
        if self.ord_value == 0:
            raise ValueError("valuation component must be nonzero to normalize")
        scale = Fraction(self.ord_value)
        return LInvariantVector(Fraction(1), Fraction(self.log_value) / scale)

    def components(self) -> dict:
        return {"ord": self.ord_value, "log": self.log_value}


def derivative_class(base_value, linv: LInvariantVector) -> dict:
    """First-derivative data of the interpolated function, presented as the
    coordinates of its class against the homomorphism basis: each direction
    picks up the invariant's component times the shared base value."""
    base = Fraction(base_value)
    return {
        name: Fraction(component) * base
        for name, component in linv.components().items()
    }


def derivative_measure(group: FiniteLevelGroup, coordinates) -> GroupAlgebraElement:
    """A finite-level measure in the augmentation ideal with the prescribed
    coordinate-map integrals, for round trips through the coordinate class
    extraction."""
    coordinates = list(coordinates)
    if len(coordinates) != group.r:
        raise ValueError(f"expected {group.r} coordinates")
    total = GroupAlgebraElement(group, {})
    for i, c in enumerate(coordinates):
        total = total + phi_map(group, group.generator(i)).scale(c)
    return total
