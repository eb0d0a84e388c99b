"""Toric local integrals with analytic continuation, and their companions.

The central object is the weighted character integral over the torus,
carried in two independently assembled closed forms (the headline formula
and the shell-by-shell form its derivation produces) plus a numeric oracle
that sums the defining series directly. Around it sit the local L-factor
table, the exceptional-vanishing predicate, the two-route pairing constants,
the new-vector inner products, and the height kernel for the split torus.

Conventions: X = q**(-s), Y = q**(-s-1/2); vol(unit part) = 1; the
uniformizer weight alpha is +1 or -1 on the special branch and has square
norm q on the spherical branch. Unnormalized constants of the underlying
theory (c_T and friends) are carried symbolically with default value 1 and
reported through ``depends_on`` fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ._cyclotomic import CycNumber, conj
from .rational_forms import LocalRationalFunction, PoleError, geometric_tail
from .torus_local import (
    LocalTorusCase,
    ShellFunction,
    TorusCharacter,
    brute_shell_character_integral,
    level_prefactor,
    shell_character_integral,
    shell_difference_volume,
    shell_volume,
    unit_ball_weight_integral,
    unit_quotient,
)

CONSTANT_NAMES = ("c_T", "C_T_bar", "K_T", "C_K", "C_phi", "k_T")


@dataclass(frozen=True)
class SteinbergDatum:
    """The uniformizer eigenvalue data: branch 'special' carries alpha = +-1,
    branch 'spherical' carries an alpha of square norm q (value optional,
    since the closed forms below depend on it only through that norm)."""

    branch: str
    alpha: object = None

    def __post_init__(self):
        if self.branch not in ("special", "spherical"):
            raise ValueError(f"unknown branch {self.branch!r}")
        if self.branch == "special":
            if self.alpha not in (1, -1, Fraction(1), Fraction(-1)):
                raise ValueError("special branch requires alpha = +1 or -1")

    @property
    def is_special(self) -> bool:
        return self.branch == "special"

    def hecke_eigenvalue(self, q: int):
        """alpha + q/alpha on the spherical branch, alpha itself on the
        special branch."""
        if self.is_special:
            return Fraction(self.alpha)
        if self.alpha is None:
            raise ValueError("spherical eigenvalue needs a concrete alpha")
        return self.alpha + q / self.alpha


@dataclass(frozen=True)
class SymbolicConstant:
    """A nonzero constant the theory asserts to exist but never evaluates."""

    name: str
    value: object = Fraction(1)

    def __post_init__(self):
        if self.name not in CONSTANT_NAMES:
            raise ValueError(f"unknown symbolic constant {self.name!r}")
        if self.value == 0:
            raise ValueError("symbolic constants are nonzero by definition")


def resolve_constants(constants=None) -> dict:
    """Accept None, a {name: value} mapping, or SymbolicConstant iterables."""
    values = {name: Fraction(1) for name in CONSTANT_NAMES}
    if constants is None:
        return values
    if isinstance(constants, dict):
        items = constants.items()
    else:
        items = [(c.name, c.value) for c in constants]
    for name, value in items:
        if name not in CONSTANT_NAMES:
            raise ValueError(f"unknown symbolic constant {name!r}")
        if value == 0:
            raise ValueError("symbolic constants are nonzero by definition")
        values[name] = value
    return values


@dataclass(frozen=True)
class SymbolicValue:
    """A number together with the symbolic constants it is proportional to."""

    value: object
    depends_on: tuple = ()


# -- L-factor table ----------------------------------------------------------


def l_factor(kind: str, case: LocalTorusCase, alpha=None, chi=None):
    """Local L-factors as exact rational functions.

    kind 'zeta': 1/(1 - X).  kind 'eta': the quadratic-algebra factor,
    1/(1 - X) split, 1/(1 + X) inert, 1 ramified.  kind 'pi_chi': the
    twisted factor in the half-shifted variable Y = q**(-s-1/2); requires
    alpha = +-1 and an unramified character.
    """
    q = case.q
    if kind == "zeta":
        one = LocalRationalFunction.constant(1, q)
        return one / (one - LocalRationalFunction.monomial(1, 1, q))
    if kind == "eta":
        one = LocalRationalFunction.constant(1, q)
        x = LocalRationalFunction.monomial(1, 1, q)
        if case.kind == "split":
            return one / (one - x)
        if case.kind == "inert":
            return one / (one + x)
        return one
    if kind == "pi_chi":
        if alpha not in (1, -1, Fraction(1), Fraction(-1)):
            raise ValueError("pi_chi factor requires alpha = +1 or -1")
        if chi is None or chi.n_chi != 0:
            raise ValueError("pi_chi factor requires an unramified character")
        one = LocalRationalFunction.constant(1, q, half_shift=True)
        y = LocalRationalFunction.monomial(1, 1, q, half_shift=True)
        if case.kind == "inert":
            return one / (one - y * y)
        a = Fraction(alpha) * Fraction(chi.uniformizer_value)
        if case.kind == "split":
            return one / ((one - a * y) * (one - y / a))
        return one / (one - a * y)
    raise ValueError(f"unknown L-factor kind {kind!r}")


def _eta_at_one(case: LocalTorusCase) -> Fraction:
    q = case.q
    if case.kind == "split":
        return Fraction(q, q - 1)
    if case.kind == "inert":
        return Fraction(q, q + 1)
    return Fraction(1)


def _zeta_at(case: LocalTorusCase, s: int) -> Fraction:
    q = Fraction(case.q)
    return 1 / (1 - q ** (-s))


# -- the toric integral: statement form -------------------------------------


def _require_unit_alpha(alpha):
    if alpha not in (1, -1, Fraction(1), Fraction(-1)):
        raise ValueError("statement form only defined for alpha = +1 or -1")
    return Fraction(alpha)


def _twist_value(case: LocalTorusCase, alpha, chi: TorusCharacter) -> Fraction:
    """alpha times the character's uniformizer value, as an exact rational."""
    uv = chi.uniformizer_value
    if uv is None:
        raise ValueError("this branch needs a uniformizer value on the character")
    return Fraction(alpha) * Fraction(uv)


def toric_integral_statement(
    case: LocalTorusCase, alpha, chi: TorusCharacter
) -> LocalRationalFunction:
    """Headline closed form of the weighted character integral.

    prefactor * L(1, eta) * (1 - q**(2s-2))/(1 - q**(1-2s)) times either
    q**((1-2s) n_chi) (ramified character) or the ratio of twisted
    L-factors at the reflected points (unramified character).
    """
    alpha = _require_unit_alpha(alpha)
    q = case.q
    one = LocalRationalFunction.constant(1, q)
    pre = level_prefactor(case)
    core_num = one - LocalRationalFunction.q_power_of_s(q, 2, -2)
    core_den = one - LocalRationalFunction.q_power_of_s(q, -2, 1)
    core = core_num / core_den
    if chi.n_chi >= 1:
        tail = LocalRationalFunction.monomial(Fraction(q) ** chi.n_chi, 2 * chi.n_chi, q)
    else:
        x = LocalRationalFunction.monomial(1, 1, q)
        x_inv = LocalRationalFunction.q_power_of_s(q, 1, -1)  # q**(s-1)
        if case.kind == "split":
            a = _twist_value(case, alpha, chi)
            tail = ((one - a * x) * (one - x / a)) / (
                (one - a * x_inv) * (one - x_inv / a)
            )
        elif case.kind == "inert":
            tail = (one - x * x) / (one - x_inv * x_inv)
        else:
            a = _twist_value(case, alpha, chi)
            tail = (one - a * x) / (one - a * x_inv)
    return pre * _eta_at_one(case) * core * tail


def toric_integral_proof_form(
    case: LocalTorusCase, alpha, chi: TorusCharacter
) -> LocalRationalFunction:
    """The same integral assembled shell by shell, the way its derivation
    produces it: orbit-cell weights times character-orthogonality volumes,
    with every infinite shell sum resummed by ``geometric_tail``."""
    alpha = _require_unit_alpha(alpha)
    q = case.q
    one = LocalRationalFunction.constant(1, q)
    pre = level_prefactor(case)
    ratio_shell = LocalRationalFunction.monomial(Fraction(q), 2, q)  # q**(1-2s)
    n_chi = chi.n_chi
    if case.kind == "split":
        if n_chi == 0:
            a = _twist_value(case, alpha, chi)
            plus = geometric_tail(
                LocalRationalFunction.monomial(a / q, -1, q), 1
            )
            minus = geometric_tail(
                LocalRationalFunction.monomial(1 / (a * q), -1, q), 1
            )
            ball = Fraction(q - 2, q - 1) + geometric_tail(ratio_shell, 1)
            return pre * (plus + minus + ball)
        jump = LocalRationalFunction.monomial(
            Fraction(q ** (n_chi - 1), q - 1), 2 * (n_chi - 1), q
        )
        return pre * (geometric_tail(ratio_shell, n_chi) - jump)
    if case.kind == "inert":
        if n_chi == 0:
            ball = Fraction(q, q + 1) + Fraction(q - 1, q + 1) * geometric_tail(
                ratio_shell, 1
            )
            return pre * ball
        jump = LocalRationalFunction.monomial(
            Fraction(q ** (n_chi - 1), q + 1), 2 * (n_chi - 1), q
        )
        tail = Fraction(q - 1, q + 1) * geometric_tail(ratio_shell, n_chi)
        return pre * (tail - jump)
    # ramified
    if n_chi == 0:
        a = _twist_value(case, alpha, chi)
        coset = LocalRationalFunction.q_power_of_s(q, 1, -1) * a  # a q**(s-1)
        ball = Fraction(q - 1, q) * geometric_tail(ratio_shell, 0)
        return pre * (coset + ball)
    jump = LocalRationalFunction.monomial(
        Fraction(q ** (n_chi - 1), q), 2 * (n_chi - 1), q
    )
    tail = Fraction(q - 1, q) * geometric_tail(ratio_shell, n_chi)
    return pre * (tail - jump)


# -- the toric integral: summation oracle ------------------------------------


@dataclass(frozen=True)
class OracleResult:
    value: object
    tail_bound: object
    truncation: int


def _as_scalar(value, exact: bool):
    if isinstance(value, CycNumber):
        value = value.to_fraction()
    return value if exact else float(value)


def toric_integral_oracle(
    case: LocalTorusCase, alpha, chi: TorusCharacter, s, truncation: int = 60
) -> OracleResult:
    """Sum the defining series directly, using brute character sums on the
    concrete finite quotients.

    Valuation-direction tails are geometric and are resummed in closed form
    (this is what extends the oracle past the raw convergence strip); the
    shell direction is truncated at ``truncation`` with a reported geometric
    tail bound. Values are exact rationals at integer s. At the point where
    the valuation-direction ratio hits 1 the continued value has a pole and
    PoleError is raised, matching the closed forms.
    """
    s = Fraction(s) if not isinstance(s, float) else Fraction(repr(s))
    if 2 * s <= 1:
        raise ValueError("s lies in the divergence region")
    alpha = _require_unit_alpha(alpha)
    q = case.q
    exact = s.denominator == 1
    if exact:
        q_pow = lambda e: Fraction(q) ** int(e)
    else:
        q_pow = lambda e: float(q) ** float(e)
    pre = q_pow((2 - 2 * s) * case.n_T)

    # Shell direction, truncated. Shallow shells (through the conductor
    # region, where all the cancellation happens) are summed by explicit
    # enumeration; past that depth the character is identically 1 on H_n by
    # the definition of its conductor, so each shell contributes its plain
    # volume and enumeration would only recount elements.
    feasible = 1
    while case.field.p ** (feasible + 2) <= 20_000:
        feasible += 1
    brute_depth = min(max(chi.n_chi + 1, 3), feasible, truncation)
    if brute_depth < chi.n_chi:
        raise ValueError("conductor too deep for brute shell enumeration")
    shells = 0
    for n in range(truncation + 1):
        if n <= brute_depth:
            cell = brute_shell_character_integral(case, chi, n, difference=True)
        else:
            cell = shell_difference_volume(case, n)
        if cell:
            shells = shells + q_pow((2 - 2 * s) * n) * cell
    ratio = q_pow(1 - 2 * s)
    tail_bound = pre * ratio ** (truncation + 1) / (1 - ratio)

    extra = 0
    if case.kind == "split" and chi.n_chi == 0:
        # both valuation directions resum to geometric series with ratio
        # a^{+-1} q^{s-1}
        a = _twist_value(case, alpha, chi)
        base = q_pow(s - 1)
        for aa in (a, 1 / a):
            r = aa * base
            if r == 1:
                raise PoleError(
                    "valuation-direction ratio equals 1: continued value has a pole",
                    order=-1,
                )
            extra = extra + r / (1 - r)
    elif case.kind == "ramified":
        ball = brute_shell_character_integral(case, chi, 0)
        if ball:
            a = _twist_value(case, alpha, chi)
            extra = extra + a * q_pow(s - 1) * ball
    value = pre * (_as_scalar(shells, exact) + _as_scalar(extra, exact))
    return OracleResult(value, abs(tail_bound), truncation)


def is_exceptional(case: LocalTorusCase, alpha, chi: TorusCharacter) -> bool:
    """Whether the continued integral vanishes at s = 0: true exactly when
    the character agrees with the alpha-power-of-valuation character."""
    alpha = _require_unit_alpha(alpha)
    if chi.n_chi != 0:
        return False
    if case.kind == "split":
        return Fraction(chi.uniformizer_value) == alpha
    if case.kind == "inert":
        return True
    return _twist_value(case, alpha, chi) == 1


# -- Euler-type factor and the two-route pairing ------------------------------


def euler_factor(case: LocalTorusCase, datum: SteinbergDatum, chi: TorusCharacter,
                 l_ad=None, l_half=None):
    """The interpolation factor, exact.

    Spherical branch: the ratio of caller-supplied values (adjoint at 1 over
    twisted at 1/2); both default to 1 and are non-normative. Special branch
    with unramified character: the reciprocal twisted L-factor evaluated at
    the reflected half-integer point, which is where exceptional zeros live.
    Special branch with ramified character: q**n_chi.
    """
    q = case.q
    if not datum.is_special:
        l_ad = Fraction(1) if l_ad is None else l_ad
        l_half = Fraction(1) if l_half is None else l_half
        if isinstance(l_ad, LocalRationalFunction):
            l_ad = l_ad.evaluate_at_s(1)
        if isinstance(l_half, LocalRationalFunction):
            l_half = l_half.evaluate_at_s(Fraction(1, 2))
        return l_ad / l_half
    if chi.n_chi > 0:
        # ramified-character convention: the twisted factor is 1
        return Fraction(q) ** chi.n_chi
    inverse = LocalRationalFunction.constant(1, q, half_shift=True) / l_factor(
        "pi_chi", case, datum.alpha, chi
    )
    return inverse.evaluate_at_s(Fraction(-1, 2))


class CompactTorusFunction:
    """A locally constant function on a compact torus (inert or ramified),
    stored as a table on the level-``level`` unit quotient; a ramified torus
    carries a second table for the uniformizer coset."""

    def __init__(self, case: LocalTorusCase, level: int, table, w_table=None):
        if case.kind == "split":
            raise ValueError("use ShellFunction for a split torus")
        self.case = case
        self.level = level
        group = unit_quotient(case.kind, case.field.p, level)
        allowed = set(group.elements)
        self.table = {}
        for key, value in dict(table).items():
            if key not in allowed:
                raise ValueError(f"{key!r} is not a level-{level} element")
            self.table[key] = value
        if w_table is not None and case.kind != "ramified":
            raise ValueError("only a ramified torus has a uniformizer coset")
        self.w_table = {}
        if w_table:
            for key, value in dict(w_table).items():
                if key not in allowed:
                    raise ValueError(f"{key!r} is not a level-{level} element")
                self.w_table[key] = value


def character_integral_of_function(case: LocalTorusCase, f, chi: TorusCharacter,
                                   inverse: bool = True):
    """Exact integral of f against chi (or its inverse) by cell summation."""

    def chi_unit(key, level):
        value = chi.value_on_unit(key, level)
        return conj(value) if inverse else value

    def chi_uniformizer(power):
        uv = Fraction(chi.uniformizer_value)
        return uv ** (-power) if inverse else uv ** power

    if isinstance(f, ShellFunction):
        if case.kind != "split":
            raise ValueError("shell functions live on a split torus")
        total = 0
        for (m, n, rep), value in f.items():
            if n < chi.n_chi:
                continue  # the cell integral vanishes by orthogonality
            cell = value * chi_uniformizer(m) * chi_unit(rep, n) * shell_volume(case, n)
            total = total + cell
        return total
    if not isinstance(f, CompactTorusFunction):
        raise TypeError("expected a ShellFunction or CompactTorusFunction")
    total = 0
    if f.level >= chi.n_chi:
        vol = shell_volume(case, f.level)
        for key, value in f.table.items():
            total = total + value * chi_unit(key, f.level) * vol
        if f.w_table:
            w_val = chi_uniformizer(1)
            for key, value in f.w_table.items():
                total = total + value * w_val * chi_unit(key, f.level) * vol
    return total


@dataclass(frozen=True)
class PairingResult:
    value: object
    k_factor: object
    e_factor: object
    integral_left: object
    integral_right: object
    exceptional: bool
    depends_on: tuple


def pairing_alpha(case: LocalTorusCase, datum: SteinbergDatum, chi: TorusCharacter,
                  f1, f2, constants=None, xi2=None, l_ad=None, l_half=None) -> PairingResult:
    """Two-route pairing: structural constant times interpolation factor
    times the two character integrals. The factor and the constant are kept
    separate so an exceptional zero is visible as e_factor == 0."""
    consts = resolve_constants(constants)
    q = case.q
    xi2 = _zeta_at(case, 2) if xi2 is None else xi2
    eta1 = _eta_at_one(case)
    if not datum.is_special:
        k_factor = consts["c_T"] * eta1 / xi2
        deps = ("c_T",)
    else:
        xi_minus1 = 1 / (1 - Fraction(case.q))
        k_factor = (
            consts["c_T"]
            * consts["C_T_bar"]
            * eta1 ** 2
            * xi_minus1
            * Fraction(q) ** (2 * case.n_T)
            / xi2
        )
        deps = ("c_T", "C_T_bar")
    e_factor = euler_factor(case, datum, chi, l_ad=l_ad, l_half=l_half)
    left = character_integral_of_function(case, f1, chi, inverse=True)
    right = conj(character_integral_of_function(case, f2, chi, inverse=True))
    value = k_factor * e_factor * left * right
    exceptional = datum.is_special and is_exceptional(case, datum.alpha, chi)
    return PairingResult(value, k_factor, e_factor, left, right, exceptional, deps)


# -- new-vector inner products ------------------------------------------------


def new_vector_inner_product(case: LocalTorusCase, datum: SteinbergDatum,
                             n_s: int = 0, constants=None) -> SymbolicValue:
    """Closed forms of the self-pairing of the normalized new vector.

    Spherical branch: c_T q**n_s (1+1/q) L(1,eta). Special branch:
    -c_T C_T_bar q**(2 n_T - 1) L(1,eta)**2, with n_T read off the case.
    """
    consts = resolve_constants(constants)
    q = case.q
    eta1 = _eta_at_one(case)
    if not datum.is_special:
        value = consts["c_T"] * Fraction(q) ** n_s * (1 + Fraction(1, q)) * eta1
        return SymbolicValue(value, ("c_T",))
    value = (
        -consts["c_T"]
        * consts["C_T_bar"]
        * Fraction(q) ** (2 * case.n_T - 1)
        * eta1 ** 2
    )
    return SymbolicValue(value, ("c_T", "C_T_bar"))


def new_vector_inner_product_from_shells(
    case: LocalTorusCase,
    datum: SteinbergDatum,
    nu_c: int = 0,
    nu_d: int = 0,
    constants=None,
) -> SymbolicValue:
    """Re-derive the six inner-product branches from their defining sums.

    Each branch re-executes the shell computation that proves the closed
    form: volume telescoping (spherical inert), the two-sided valuation sum
    with exact geometric tails (spherical split, parametrized by nu_c and
    nu_d with n_s = nu_c + nu_d), the two-coset sum (spherical ramified),
    and the weight-integral-at-0 evaluations (all three special branches,
    where the shell sums are built through the torus weight machinery and
    the continued value is read off at s = 0).
    """
    consts = resolve_constants(constants)
    q = case.q
    c = consts["c_T"]
    if not datum.is_special:
        if case.kind == "inert":
            # f is the delta lift of the full indicator: its self-pairing is
            # c_T vol(T), with the volume telescoped through the shells
            depth = 25
            vol = sum(
                (shell_difference_volume(case, n) for n in range(depth)),
                Fraction(0),
            ) + shell_volume(case, depth)
            return SymbolicValue(c * vol, ("c_T",))
        if case.kind == "split":
            n0 = nu_d - nu_c
            # sum over all integer valuations; both tails are geometric
            left = Fraction(q) ** (2 * nu_c + n0) / (q - 1)
            right = Fraction(q) ** (2 * nu_d - n0 + 1) / (q - 1)
            return SymbolicValue(c * (left + right), ("c_T",))
        # ramified: value 1 on the unit coset, norm 1/q on the other
        return SymbolicValue(c * (1 + Fraction(1, q)), ("c_T",))
    cc = c * consts["C_T_bar"]
    if case.kind == "inert":
        inner = unit_ball_weight_integral(case, 1).evaluate_at_s(0)
        return SymbolicValue(cc * shell_volume(case, 1) * inner, ("c_T", "C_T_bar"))
    if case.kind == "split":
        # double valuation sum: the inner tail is geometric with ratio
        # q**(s-1), the outer with ratio q**(1-s); their continued closed
        # forms multiply, and the value is read off at s = 0
        inner = geometric_tail(LocalRationalFunction.q_power_of_s(q, 1, -1), 0)
        outer = geometric_tail(LocalRationalFunction.q_power_of_s(q, -1, 1), 0)
        total = (level_prefactor(case) * inner * outer).evaluate_at_s(0)
        return SymbolicValue(cc * total, ("c_T", "C_T_bar"))
    inner = unit_ball_weight_integral(case, 0).evaluate_at_s(0)
    return SymbolicValue(cc * inner, ("c_T", "C_T_bar"))


# -- height kernel on the split torus ----------------------------------------


def height_kernel(q: int, n_T: int, ord_t: int) -> Fraction:
    """The continued self-convolution kernel at s = 0, as a function of the
    valuation of the torus point."""
    pre = Fraction(q) ** (2 * n_T)
    if ord_t > 0:
        return pre * Fraction(q) ** (-ord_t) / (1 - Fraction(1, q)) ** 2
    return pre * Fraction(q) ** ord_t / (1 - Fraction(q)) ** 2


def height_kernel_oracle(q: int, n_T: int, ord_t: int, truncation: int = 40) -> Fraction:
    """The kernel re-derived from its defining double sum at s = 0.

    Inner integral values at s = 0: 1 for positive shells, q**(2 m) for
    negative ones, -2/(q-1) for the unit shell. Tails beyond the truncation
    point are geometric and added in closed form, so the result is exact.
    """
    q = Fraction(q)

    def inner_at_zero(m_y: int) -> Fraction:
        if m_y > 0:
            return Fraction(1)
        if m_y < 0:
            return q ** (2 * m_y)
        return Fraction(-2) / (q - 1)

    def column(m_x: int) -> Fraction:
        # sum over m_y >= m_x of q**(-m_y) inner(m_y), exactly
        total = Fraction(0)
        for m_y in range(m_x, max(m_x, 1)):
            total += q ** (-m_y) * inner_at_zero(m_y)
        first_pos = max(m_x, 1)
        # positive tail: inner = 1, ratio 1/q
        total += q ** (-first_pos) / (1 - 1 / q)
        return total

    total = Fraction(0)
    for m_x in range(ord_t, 1):
        total += column(m_x)
    first_pos = max(ord_t, 1)
    # columns with m_x >= 1 are purely geometric: column(m_x) = q^{1-m_x}/(q-1)
    total += (q ** (1 - first_pos) / (q - 1)) / (1 - 1 / q)
    return q ** (2 * n_T) * total


def height_total(q: int, n_T: int) -> Fraction:
    """Sum of the height kernel over all valuations, in closed form."""
    q = Fraction(q)
    return q ** (2 * n_T) * (1 + 1 / q) / (q * (1 - 1 / q) ** 3)


def height_pairing_total(q: int, n_T: int, constants=None, l_eta=None,
                         l_ad=None, zeta2=None, l_half=None) -> SymbolicValue:
    """The full pairing of the delta lift of the unit-ball indicator with
    itself: the printed L-prefactor times the summed kernel.

    Defaults (non-normative where the theory leaves them open): l_eta and
    l_half from the split L-table at the special point alpha = 1, zeta2 the
    local zeta at 2, l_ad the adjoint value for the special branch (equal to
    zeta2).
    """
    qq = Fraction(q)
    l_eta = qq / (qq - 1) if l_eta is None else l_eta
    zeta2 = 1 / (1 - qq ** -2) if zeta2 is None else zeta2
    l_half = 1 / (1 - 1 / qq) ** 2 if l_half is None else l_half
    l_ad = zeta2 if l_ad is None else l_ad
    consts = resolve_constants(constants)
    prefactor = l_eta * l_ad / (zeta2 * l_half)
    value = consts["c_T"] * consts["C_T_bar"] * prefactor * height_total(q, n_T)
    return SymbolicValue(value, ("c_T", "C_T_bar"))


def steinberg_height_constant(q: int, ad_value=None) -> Fraction:
    """The constant multiplying the central derivative in the height
    formula: minus the adjoint value, after the twisted factor at the
    center cancels the squared zeta at 1. The cancellation is checked
    symbolically each call."""
    case = LocalTorusCase("split", _field_for(q))
    from .torus_local import trivial_character

    chi = trivial_character(case)
    l_half = l_factor("pi_chi", case, 1, chi).evaluate_at_s(Fraction(1, 2))
    zeta1 = _zeta_at(case, 1)
    assert l_half == zeta1 ** 2, "twisted factor at the center must equal zeta(1)^2"
    if ad_value is None:
        ad_value = _zeta_at(case, 2)
    return -ad_value * zeta1 ** 2 / l_half


def _field_for(q: int):
    from .padic_core import PrimeLocalField

    return PrimeLocalField(q)
