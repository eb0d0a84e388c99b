"""Finite-level models of a one-dimensional torus over a local field.

Three kinds are supported, named by how the quadratic algebra splits:

* ``split``: the torus is the multiplicative group of the field; its unit
  part filters by congruence level, with level-n quotient ``(Z/p^n)^x``.
* ``inert``: units of the unramified quadratic extension modulo base units;
  modeled as pairs (a, b) standing for a + b*beta with an explicit beta.
* ``ramified``: units of a ramified quadratic extension modulo base units,
  with uniformizer w satisfying w**2 = p; the unit part is parametrized by
  t in 1 + t*w, and a two-element component tracks the w-coset.

Everything is exact: volumes are rationals under the normalization
vol(unit part) = 1, characters take values in exact roots of unity, and the
weight attached to each orbit cell is a rational function of X = q**(-s).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ._cyclotomic import CycNumber
from .padic_core import PrimeLocalField, valuation
from .rational_forms import LocalRationalFunction

KINDS = ("split", "inert", "ramified")


@dataclass(frozen=True)
class LocalTorusCase:
    """A torus kind over a given field, with embedding level n_T >= 0."""

    kind: str
    field: PrimeLocalField
    n_T: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown torus kind {self.kind!r}")
        if self.n_T < 0:
            raise ValueError("embedding level must be nonnegative")

    @property
    def q(self) -> int:
        return self.field.q


def _nonresidue(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise ValueError(f"no quadratic nonresidue found for p={p}")


class UnitQuotient:
    """The level-n quotient of the torus unit part, as a concrete group.

    Elements are hashable keys: unit residues (split), normalized pairs
    (inert), or coordinates t (ramified). ``mul`` is the group law, and
    ``filtration(n')`` is the image of the level-n' subgroup.
    """

    def __init__(self, kind: str, p: int, n: int):
        if kind not in KINDS:
            raise ValueError(f"unknown torus kind {kind!r}")
        if n < 0:
            raise ValueError("level must be nonnegative")
        self.kind = kind
        self.p = p
        self.n = n
        self.modulus = p ** n
        if kind == "inert":
            # beta generates the unramified quadratic extension:
            # beta^2 = r + t*beta with (r, t) chosen so the order is maximal.
            self._beta = (1, 1) if p == 2 else (_nonresidue(p), 0)
        if kind == "split":
            self.identity = 1
            self.elements = (
                [1] if n == 0 else [u for u in range(1, self.modulus) if u % p != 0]
            )
        elif kind == "inert":
            self.identity = (1, 0)
            if n == 0:
                self.elements = [(1, 0)]
            else:
                mod = self.modulus
                self.elements = [(x, 1) for x in range(mod)] + [
                    (1, u) for u in range(0, mod, p)
                ]
        else:
            self.identity = 0
            self.elements = list(range(max(1, self.modulus)))

    def __len__(self):
        return len(self.elements)

    def _normalize_pair(self, a: int, b: int):
        mod = self.modulus
        a %= mod
        b %= mod
        if b % self.p != 0:
            binv = pow(b, -1, mod)
            return (a * binv % mod, 1)
        ainv = pow(a, -1, mod)
        return (1, b * ainv % mod)

    def mul(self, x, y):
        if self.n == 0:
            return self.identity
        mod = self.modulus
        if self.kind == "split":
            return x * y % mod
        if self.kind == "inert":
            r, t = self._beta
            a, b = x
            c, d = y
            aa = (a * c + r * b * d) % mod
            bb = (a * d + b * c + t * b * d) % mod
            return self._normalize_pair(aa, bb)
        num = (x + y) % mod
        den = (1 + self.p * x * y) % mod
        return num * pow(den, -1, mod) % mod

    def power(self, x, k: int):
        out = self.identity
        base = x
        if k < 0:
            k = k % self.order_of(x)
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def order_of(self, x) -> int:
        k = 1
        acc = x
        while acc != self.identity:
            acc = self.mul(acc, x)
            k += 1
        return k

    def project(self, x, n_to: int):
        """Image of a level-n key in the level-n_to quotient (n_to <= n)."""
        if n_to > self.n:
            raise ValueError("cannot project to a deeper level")
        target = unit_quotient(self.kind, self.p, n_to)
        if n_to == 0:
            return target.identity
        mod = target.modulus
        if self.kind == "split":
            return x % mod
        if self.kind == "inert":
            return target._normalize_pair(x[0] % mod, x[1] % mod)
        return x % mod

    def filtration(self, n_prime: int) -> set:
        """Image of the level-n' unit subgroup inside this quotient."""
        if n_prime <= 0:
            return set(self.elements)
        if self.n == 0:
            return {self.identity}
        e = min(n_prime, self.n)
        mod_e = self.p ** e
        if self.kind == "split":
            return {u for u in self.elements if u % mod_e == 1}
        if self.kind == "inert":
            return {
                elem
                for elem in self.elements
                if elem[0] == 1 and elem[1] % mod_e == 0
            }
        return {t for t in self.elements if t % mod_e == 0}


@lru_cache(maxsize=None)
def unit_quotient(kind: str, p: int, n: int) -> UnitQuotient:
    return UnitQuotient(kind, p, n)


# -- abelian structure and characters ---------------------------------------


def _span(group: UnitQuotient, gens) -> set:
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def abelian_basis(group: UnitQuotient):
    """Generators (g_i, order_i) with the group the direct product of the
    cyclic pieces, plus the exponent table element -> tuple.

    Built greedily: a maximal-order element generates a direct summand of a
    finite abelian group, and a subgroup maximal among those meeting it
    trivially is a complement. The exponent table doubles as the correctness
    proof: it must be a bijection.
    """
    gens = []
    sub = list(group.elements)

    def decompose(elems):
        if len(elems) == 1:
            return
        orders = {e: group.order_of(e) for e in elems}
        g = max(elems, key=lambda e: orders[e])
        gens.append((g, orders[g]))
        g_span = _span(group, [g])
        complement = {group.identity}
        for h in sorted(elems, key=lambda e: orders[e]):
            if h in complement:
                continue
            candidate = _span(group, list(complement) + [h])
            if candidate & g_span == {group.identity}:
                complement = candidate
        assert len(complement) * orders[g] == len(elems), "complement search failed"
        decompose(sorted(complement))

    decompose(sub)
    table = {}
    ranges = [range(o) for _, o in gens]
    for exps in itertools.product(*ranges) if gens else [()]:
        elem = group.identity
        for (g, _), e in zip(gens, exps):
            elem = group.mul(elem, group.power(g, e))
        table[elem] = exps
    assert len(table) == len(group), "exponent map is not a bijection"
    return gens, table


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out // gcd(out, v) * v
    return out


class TorusCharacter:
    """A character of the torus, stored as a finite table on the unit part.

    ``n_chi`` is the exact conductor: the character is trivial on the level
    n_chi subgroup and (when n_chi > 0) nontrivial one level up.
    ``uniformizer_value`` is the value on the extra direction: the field
    uniformizer for a split torus, the quadratic uniformizer (value +1 or -1)
    for a ramified one, and None for an inert torus, which is compact.
    """

    def __init__(self, case: LocalTorusCase, n_chi: int, uniformizer_value, table):
        if case.kind == "inert":
            if uniformizer_value is not None:
                raise ValueError("inert torus characters have no uniformizer value")
        elif uniformizer_value is None:
            raise ValueError(f"{case.kind} torus characters need a uniformizer value")
        if case.kind == "ramified" and uniformizer_value is not None:
            square = uniformizer_value * uniformizer_value
            if not _value_eq(square, 1):
                raise ValueError("ramified uniformizer value must square to 1")
        self.case = case
        self.n_chi = int(n_chi)
        self.uniformizer_value = uniformizer_value
        self.table = dict(table)
        self.root_order = None
        self.exponents = None

    @classmethod
    def from_exponents(cls, case, n_chi, uniformizer_value, root_order, exponents):
        """Build a character whose unit values are the ``exponents[key]``-th
        powers of a fixed primitive ``root_order``-th root of unity. Keeps
        values symbolic until asked for, which is what makes large dual
        groups affordable."""
        chi = cls(case, n_chi, uniformizer_value, {})
        chi.root_order = int(root_order)
        chi.exponents = dict(exponents)
        return chi

    def value_on_unit(self, key, level: int):
        """Value at a unit-part element given by its level-``level`` key."""
        if self.n_chi == 0:
            return Fraction(1)
        group = unit_quotient(self.case.kind, self.case.field.p, level)
        small = group.project(key, self.n_chi)
        if self.exponents is not None:
            return _exponent_value(self.root_order, self.exponents[small])
        return self.table[small]

    def detected_conductor(self) -> int:
        """Recompute the conductor from the stored table."""
        if self.n_chi == 0:
            return 0
        group = unit_quotient(self.case.kind, self.case.field.p, self.n_chi)
        level = self.n_chi
        while level > 0:
            image = group.filtration(level - 1)
            if self.exponents is not None:
                flat = all(self.exponents[e] % self.root_order == 0 for e in image)
            else:
                flat = all(_value_eq(self.table[e], 1) for e in image)
            if flat:
                level -= 1
            else:
                break
        return level

    def is_trivial_on_units(self) -> bool:
        return self.n_chi == 0

    def inverse(self) -> "TorusCharacter":
        """The pointwise inverse character (conjugate on root-of-unity
        values)."""
        from ._cyclotomic import conj

        uv = self.uniformizer_value
        if uv is not None:
            uv = 1 / Fraction(uv)
        if self.exponents is not None:
            flipped = {key: (-e) % self.root_order for key, e in self.exponents.items()}
            return TorusCharacter.from_exponents(
                self.case, self.n_chi, uv, self.root_order, flipped
            )
        table = {key: conj(value) for key, value in self.table.items()}
        return TorusCharacter(self.case, self.n_chi, uv, table)

    def __repr__(self):
        return (
            f"TorusCharacter({self.case.kind}, conductor={self.n_chi}, "
            f"uniformizer={self.uniformizer_value!r})"
        )


def _value_eq(value, rational) -> bool:
    if isinstance(value, CycNumber):
        return value == rational
    return value == rational


def trivial_character(case: LocalTorusCase, uniformizer_value=1) -> TorusCharacter:
    if case.kind == "inert":
        uniformizer_value = None
    return TorusCharacter(case, 0, uniformizer_value, {})


def formal_character(case: LocalTorusCase, n_chi: int, uniformizer_value=1) -> TorusCharacter:
    """A character carrying only its conductor exponent and uniformizer
    value, with no unit-value table. Sufficient for every closed-form
    construction (those read nothing but ``n_chi`` and the uniformizer
    value); any attempt to evaluate it on a unit raises KeyError. Useful
    for sweeping conductor ranges where explicit dual-group tables would
    be large, or where no genuine character of that exact conductor
    exists (the residue-characteristic-two split torus at conductor one)."""
    if n_chi < 0:
        raise ValueError("conductor exponent must be nonnegative")
    if case.kind == "inert":
        uniformizer_value = None
    return TorusCharacter(case, n_chi, uniformizer_value, {})


def _exponent_value(m: int, e: int):
    e %= m
    if e == 0:
        return Fraction(1)
    if 2 * e == m:
        return Fraction(-1)
    return CycNumber.root_of_unity(m, e)


@lru_cache(maxsize=None)
def _unit_characters_cached(kind: str, p: int, level: int):
    """All characters of the level quotient as (conductor, root_order,
    exponent-items) tuples, each table trimmed to its conductor level.
    Cached: the dual group depends only on (kind, p, level)."""
    group = unit_quotient(kind, p, level)
    gens, exponents = abelian_basis(group)
    orders = [o for _, o in gens]
    m = _lcm(orders) if orders else 1
    out = []
    for params in itertools.product(*[range(o) for o in orders]) if orders else [()]:
        table = {}
        for elem, exps in exponents.items():
            total = 0
            for k, e, o in zip(params, exps, orders):
                total = (total + k * e * (m // o)) % m
            table[elem] = total
        conductor = level
        while conductor > 0:
            image = group.filtration(conductor - 1)
            if all(table[e] == 0 for e in image):
                conductor -= 1
            else:
                break
        if conductor < level:
            trimmed = {}
            for big, value in table.items():
                small = group.project(big, conductor)
                prior = trimmed.setdefault(small, value)
                assert prior == value, "character does not factor"
            table = trimmed
        out.append((conductor, m, tuple(sorted(table.items(), key=lambda kv: repr(kv[0])))))
    return tuple(out)


def unit_characters(case: LocalTorusCase, level: int):
    """All characters of the level-``level`` unit quotient, with their exact
    conductors, as (conductor, table) pairs with materialized values."""
    out = []
    for conductor, m, items in _unit_characters_cached(case.kind, case.field.p, level):
        out.append((conductor, {key: _exponent_value(m, e) for key, e in items}))
    return out


def characters(case: LocalTorusCase, max_conductor: int, uniformizer_values=(1, -1)):
    """Enumerate torus characters with conductor up to ``max_conductor``.

    Split and ramified tori get one character per (unit character,
    uniformizer value) pair; inert tori have no uniformizer direction.
    Values stay in exponent form internally.
    """
    out = []
    for conductor, m, items in _unit_characters_cached(
        case.kind, case.field.p, max_conductor
    ):
        if case.kind == "inert":
            out.append(
                TorusCharacter.from_exponents(case, conductor, None, m, dict(items))
            )
        else:
            for uv in uniformizer_values:
                out.append(
                    TorusCharacter.from_exponents(
                        case, conductor, Fraction(uv), m, dict(items)
                    )
                )
    return out


def characters_of_exact_conductor(case, n_chi, uniformizer_values=(1, -1)):
    return [
        chi
        for chi in characters(case, n_chi, uniformizer_values)
        if chi.n_chi == n_chi
    ]


# -- volumes -----------------------------------------------------------------


def shell_volume(case: LocalTorusCase, n: int) -> Fraction:
    """vol(H_n), the level-n unit subgroup, with vol(H_0) = 1.

    Equal to 1/|H_0/H_n|; the closed forms below match the quotient sizes.
    """
    if n < 0:
        raise ValueError("level must be nonnegative")
    if n == 0:
        return Fraction(1)
    q = case.q
    if case.kind == "split":
        return Fraction(q, (q - 1) * q ** n)
    if case.kind == "inert":
        return Fraction(q, (q + 1) * q ** n)
    return Fraction(1, q ** n)


def shell_difference_volume(case: LocalTorusCase, n: int) -> Fraction:
    """vol(H_n \\ H_{n+1})."""
    return shell_volume(case, n) - shell_volume(case, n + 1)


def _conductor_of(chi_or_n) -> int:
    if isinstance(chi_or_n, TorusCharacter):
        return chi_or_n.n_chi
    return int(chi_or_n)


def shell_character_integral(case, chi_or_conductor, n: int) -> Fraction:
    """Integral of the character over H_n: zero below the conductor, the
    volume at or above it (character orthogonality)."""
    n_chi = _conductor_of(chi_or_conductor)
    if n < n_chi:
        return Fraction(0)
    return shell_volume(case, n)


def shell_difference_character_integral(case, chi_or_conductor, n: int) -> Fraction:
    """Integral of the character over the shell H_n \\ H_{n+1}."""
    return shell_character_integral(case, chi_or_conductor, n) - shell_character_integral(
        case, chi_or_conductor, n + 1
    )


def brute_shell_character_integral(
    case: LocalTorusCase, chi: TorusCharacter, n: int, difference=False
) -> Fraction:
    """Character integral over H_n (or its boundary shell) by explicit
    enumeration of a deep enough finite quotient. Exactness check included:
    the cyclotomic total must reduce to a rational number."""
    level = max(n + 1, chi.n_chi, 1)
    if case.field.p ** level > 200_000:
        raise ValueError("enumeration level too deep for brute summation")
    group = unit_quotient(case.kind, case.field.p, level)
    inside = group.filtration(n)
    if difference:
        inside = inside - group.filtration(n + 1)
    if chi.n_chi == 0:
        return Fraction(len(inside)) * shell_volume(case, level)
    if chi.exponents is not None:
        # histogram the root-of-unity exponents, then reduce once
        counts = [0] * chi.root_order
        for elem in inside:
            counts[chi.exponents[group.project(elem, chi.n_chi)] % chi.root_order] += 1
        total = CycNumber(chi.root_order, [Fraction(c) for c in counts])
        return total.to_fraction() * shell_volume(case, level)
    total = CycNumber.rational(0)
    for elem in inside:
        total = total + chi.value_on_unit(elem, level)
    return total.to_fraction() * shell_volume(case, level)


# -- orbit-cell weights ------------------------------------------------------


def level_prefactor(case: LocalTorusCase) -> LocalRationalFunction:
    """q**((2-2s) n_T) as a rational function of X."""
    q = case.q
    return LocalRationalFunction.monomial(Fraction(q ** 2) ** case.n_T, 2 * case.n_T, q)


def torus_weight(case: LocalTorusCase, alpha, cell) -> LocalRationalFunction:
    """The s-dependent weight on one orbit cell, including the n_T prefactor.

    Cells: ('valuation', m) with m != 0 (split only), ('unit', n) for the
    shell at unit distance n in any kind, and ('uniformizer',) for the
    w-coset of a ramified torus.
    """
    q = case.q
    alpha = Fraction(alpha)
    pre = level_prefactor(case)
    kind = cell[0]
    if kind == "valuation":
        if case.kind != "split":
            raise ValueError("valuation cells only exist for a split torus")
        m = cell[1]
        if m == 0:
            raise ValueError("use a ('unit', n) cell at valuation zero")
        if m > 0:
            mono = LocalRationalFunction.q_power_of_s(q, m, -m)
        else:
            mono = LocalRationalFunction.q_power_of_s(q, -m, m)
        return pre * mono * alpha ** m
    if kind == "unit":
        n = cell[1]
        return pre * LocalRationalFunction.monomial(Fraction(q ** 2) ** n, 2 * n, q)
    if kind == "uniformizer":
        if case.kind != "ramified":
            raise ValueError("uniformizer cells only exist for a ramified torus")
        return pre * LocalRationalFunction.q_power_of_s(q, 1, -1) * alpha
    raise ValueError(f"unknown cell {cell!r}")


def unit_ball_weight_integral(case: LocalTorusCase, n: int) -> LocalRationalFunction:
    """Exact weight integral over the full unit ball H_n (all shells >= n),
    resummed as a rational function of X. Includes the n_T prefactor."""
    q = case.q
    one = LocalRationalFunction.constant(1, q)
    ratio = LocalRationalFunction.monomial(Fraction(q), 2, q)  # q X^2
    tail_from = lambda k: ratio ** k / (one - ratio)
    if case.kind == "split":
        if n >= 1:
            inner = tail_from(n)
        else:
            inner = Fraction(q - 2, q - 1) + tail_from(1)
    elif case.kind == "inert":
        if n >= 1:
            inner = Fraction(q - 1, q + 1) * tail_from(n)
        else:
            inner = Fraction(q, q + 1) + Fraction(q - 1, q + 1) * tail_from(1)
    else:
        inner = Fraction(q - 1, q) * tail_from(n)
    return level_prefactor(case) * inner


# -- finitely supported functions on the torus -------------------------------


class ShellFunction:
    """A compactly supported, locally constant function on a split torus.

    Entries are keyed (m, n, rep): the cell is w**m times the coset of the
    level-n unit subgroup represented by the unit residue ``rep`` (an integer
    prime to p, taken mod p**n). Cells must not overlap; each has volume
    vol(H_n) in the multiplicative normalization.
    """

    def __init__(self, case: LocalTorusCase, entries):
        if case.kind != "split":
            raise ValueError("shell functions are only implemented on a split torus")
        self.case = case
        self.entries = {}
        for (m, n, rep), value in dict(entries).items():
            if n < 0:
                raise ValueError("negative shell level")
            modulus = case.field.p ** n
            rep = rep % modulus if n > 0 else 1
            if n > 0 and rep % case.field.p == 0:
                raise ValueError("coset representative must be a unit")
            self.entries[(m, n, rep)] = value
        self._check_disjoint()

    def _check_disjoint(self):
        keys = list(self.entries)
        for i, a in enumerate(keys):
            for b in keys[i + 1 :]:
                if a[0] != b[0]:
                    continue
                n = max(a[1], b[1])
                mod_small = self.case.field.p ** min(a[1], b[1])
                if (a[2] - b[2]) % mod_small == 0:
                    raise ValueError(f"overlapping cells {a} and {b}")

    def evaluate(self, t) -> Fraction:
        t = Fraction(t)
        if t == 0:
            return Fraction(0)
        p = self.case.field.p
        m = valuation(self.case.field, t)
        unit = t / Fraction(p) ** m
        for (mm, n, rep), value in self.entries.items():
            if mm != m:
                continue
            modulus = p ** n
            # unit lies in the cell iff unit/rep == 1 mod p^n
            ratio = unit / rep
            if n == 0 or (ratio - 1).numerator % modulus == 0 and _p_integral(ratio, p):
                return value
        return Fraction(0)

    def items(self):
        return self.entries.items()

    def translate(self, t) -> "ShellFunction":
        """The function y -> self(t^{-1} y): cells shift by t."""
        t = Fraction(t)
        p = self.case.field.p
        shift = valuation(self.case.field, t)
        unit = t / Fraction(p) ** shift
        out = {}
        for (m, n, rep), value in self.entries.items():
            modulus = p ** n
            if n == 0:
                out[(m + shift, n, 1)] = value
            else:
                from .padic_core import residue_mod

                new_rep = rep * residue_mod(self.case.field, unit, n) % modulus
                out[(m + shift, n, new_rep)] = value
        return ShellFunction(self.case, out)


def _p_integral(x: Fraction, p: int) -> bool:
    return x.denominator % p != 0


def indicator_unit_ball(case: LocalTorusCase, n: int = 0) -> ShellFunction:
    """Indicator of the level-n unit subgroup."""
    return ShellFunction(case, {(0, n, 1): Fraction(1)})
