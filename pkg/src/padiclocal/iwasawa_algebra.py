"""Finite-level group algebras of free rank-r pro-p groups.

Everything here lives at a chosen level N: the group is (Z/p^N)^r, measures
are finitely supported coefficient maps with exact rational values, and the
inverse limit is represented only through compatible families of truncations.
The augmentation ideal, its square, and the two maps between the quotient and
the group are all computed by direct linear algebra over Z/p^N.
"""

import itertools
from fractions import Fraction

from .padic_core import PrimeLocalField, valuation, residue_mod


class FiniteLevelGroup:
    """(Z/p^N)^r with componentwise addition."""

    def __init__(self, p: int, r: int, N: int):
        if r < 1 or N < 1:
            raise ValueError("rank and level must be positive")
        self.p = p
        self.r = r
        self.N = N
        self.modulus = p ** N
        self.field = PrimeLocalField(p)

    @property
    def order(self) -> int:
        return self.modulus ** self.r

    def element(self, *coords) -> tuple:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != self.r:
            raise ValueError(f"expected {self.r} coordinates")
        return tuple(c % self.modulus for c in coords)

    def zero(self) -> tuple:
        return (0,) * self.r

    def generator(self, i: int) -> tuple:
        if not 0 <= i < self.r:
            raise ValueError("generator index out of range")
        return tuple(1 if j == i else 0 for j in range(self.r))

    def add(self, g: tuple, h: tuple) -> tuple:
        return tuple((a + b) % self.modulus for a, b in zip(g, h))

    def negate(self, g: tuple) -> tuple:
        return tuple((-a) % self.modulus for a in g)

    def elements(self):
        return itertools.product(range(self.modulus), repeat=self.r)

    def reduce(self, g: tuple, level: int) -> tuple:
        m = self.p ** level
        return tuple(a % m for a in g)

    def __eq__(self, other):
        if not isinstance(other, FiniteLevelGroup):
            return NotImplemented
        return (self.p, self.r, self.N) == (other.p, other.r, other.N)

    def __hash__(self):
        return hash((self.p, self.r, self.N))

    def __repr__(self):
        return f"FiniteLevelGroup(p={self.p}, r={self.r}, N={self.N})"


class GroupAlgebraElement:
    """Finitely supported rational coefficients on a finite-level group."""

    def __init__(self, group: FiniteLevelGroup, coefficients=None):
        self.group = group
        self.coefficients = {}
        for g, c in dict(coefficients or {}).items():
            c = Fraction(c)
            if c:
                self.coefficients[group.element(g)] = c

    @classmethod
    def delta(cls, group: FiniteLevelGroup, g) -> "GroupAlgebraElement":
        return cls(group, {group.element(g): Fraction(1)})

    @property
    def is_integral(self) -> bool:
        field = self.group.field
        return all(valuation(field, c) >= 0 for c in self.coefficients.values())

    def min_valuation(self):
        """Smallest coefficient valuation; None for the zero element."""
        field = self.group.field
        if not self.coefficients:
            return None
        return min(valuation(field, c) for c in self.coefficients.values())

    def __add__(self, other):
        self._compatible(other)
        coeffs = dict(self.coefficients)
        for g, c in other.coefficients.items():
            coeffs[g] = coeffs.get(g, Fraction(0)) + c
        return GroupAlgebraElement(self.group, coeffs)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "GroupAlgebraElement":
        c = Fraction(c)
        return GroupAlgebraElement(
            self.group, {g: c * v for g, v in self.coefficients.items()}
        )

    def _compatible(self, other):
        if not isinstance(other, GroupAlgebraElement) or self.group != other.group:
            raise ValueError("elements live on different groups")

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group == other.group and self.coefficients == other.coefficients

    __hash__ = None

    def __repr__(self):
        terms = ", ".join(f"{g}: {c}" for g, c in sorted(self.coefficients.items()))
        return f"GroupAlgebraElement({{{terms}}})"


def convolve(mu1: GroupAlgebraElement, mu2: GroupAlgebraElement) -> GroupAlgebraElement:
    mu1._compatible(mu2)
    group = mu1.group
    coeffs = {}
    for g, a in mu1.coefficients.items():
        for h, b in mu2.coefficients.items():
            k = group.add(g, h)
            coeffs[k] = coeffs.get(k, Fraction(0)) + a * b
    return GroupAlgebraElement(group, coeffs)


def degree(mu: GroupAlgebraElement) -> Fraction:
    return sum(mu.coefficients.values(), Fraction(0))


def integrate(mu: GroupAlgebraElement, f) -> Fraction:
    return sum(
        (c * Fraction(f(g)) for g, c in mu.coefficients.items()), Fraction(0)
    )


def phi_map(group: FiniteLevelGroup, g) -> GroupAlgebraElement:
    """The group element sent into the augmentation ideal: d_g - d_0."""
    return GroupAlgebraElement.delta(group, g) - GroupAlgebraElement.delta(
        group, group.zero()
    )


def psi_class(mu: GroupAlgebraElement, precision: int = 12) -> tuple:
    """Coordinates of an augmentation element modulo the ideal square.

    Integrates the r coordinate maps against mu and reduces mod
    p^{min(N, precision)}. For measures with p-integral coefficients,
    pairwise products of augmentation elements integrate to zero against
    every coordinate map, so this only sees the class modulo the square.
    """
    if degree(mu) != 0:
        raise ValueError("not in augmentation ideal")
    group = mu.group
    level = min(group.N, precision)
    out = []
    for i in range(group.r):
        total = sum(
            (c * g[i] for g, c in mu.coefficients.items()), Fraction(0)
        )
        out.append(residue_mod(group.field, total, level))
    return tuple(out)


# -- the size of the quotient by the ideal square -----------------------------


def _span_order(rows, p: int, N: int) -> int:
    """Order of the row span of an integer matrix over Z/p^N.

    Column-by-column elimination with minimal-valuation pivots; after using
    a pivot of valuation v the row p^{N-v} * pivot is kept, since its tail
    still contributes to the span. The span order is the product of the
    pivot column images.
    """
    modulus = p ** N
    rows = [[x % modulus for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 1
    ncols = len(rows[0])
    order = 1
    for col in range(ncols):
        best = None
        best_v = N
        for i, r in enumerate(rows):
            a = r[col]
            if a == 0:
                continue
            v = 0
            while a % p == 0:
                a //= p
                v += 1
            if v < best_v:
                best, best_v = i, v
                if v == 0:
                    break
        if best is None:
            continue
        pivot = rows.pop(best)
        v = best_v
        order *= p ** (N - v)
        unit = pivot[col] // p ** v
        inv = pow(unit, -1, modulus)
        for r in rows:
            if r[col]:
                factor = (r[col] // p ** v) * inv % modulus
                for j in range(col, ncols):
                    r[j] = (r[j] - factor * pivot[j]) % modulus
        tail = [(p ** (N - v) * x) % modulus for x in pivot]
        if any(tail):
            rows.append(tail)
        rows = [r for r in rows if any(r)]
    return order


def augmentation_quotient_order(group: FiniteLevelGroup) -> int:
    """|I / I^2| over Z/p^N, by spanning the ideal square explicitly.

    The ideal is spanned by the images of all group elements; its square is
    spanned by their products against the standard generators, because the
    translation identity d_{g+h} - d_g - d_h + d_0 = (d_g - d_0)*(d_h - d_0)
    reduces any product to that set inductively. The expected value is the
    group order p^{Nr}.
    """
    p, N = group.p, group.N
    basis = sorted(group.elements())
    index = {g: i for i, g in enumerate(basis)}

    def row_of(mu):
        row = [0] * len(basis)
        for g, c in mu.coefficients.items():
            if c.denominator != 1:
                raise ValueError("quotient size needs integral coefficients")
            row[index[g]] = c.numerator % group.modulus
        return row

    gens = [phi_map(group, group.generator(i)) for i in range(group.r)]
    square_rows = []
    for g in basis:
        fg = phi_map(group, g)
        for gen in gens:
            square_rows.append(row_of(convolve(fg, gen)))
    ideal_order = group.modulus ** (len(basis) - 1)
    return ideal_order // _span_order(square_rows, p, N)


# -- compatible families and boundedness --------------------------------------


class CompatibleFamily:
    """Truncations of one measure at levels 1..N_max, checked for coherence.

    The pushforward along coordinate reduction of each level must equal the
    level below; violations raise at construction.
    """

    def __init__(self, elements):
        elements = list(elements)
        if not elements:
            raise ValueError("family must contain at least one level")
        self.elements = elements
        p = elements[0].group.p
        r = elements[0].group.r
        for k, elt in enumerate(elements, start=1):
            g = elt.group
            if (g.p, g.r, g.N) != (p, r, k):
                raise ValueError("family levels must be consecutive from 1")
        for k in range(len(elements) - 1, 0, -1):
            upper = elements[k]
            lower = elements[k - 1]
            pushed = {}
            for g, c in upper.coefficients.items():
                rg = upper.group.reduce(g, k)
                pushed[rg] = pushed.get(rg, Fraction(0)) + c
            pushed = {g: c for g, c in pushed.items() if c}
            if pushed != lower.coefficients:
                raise ValueError("incompatible family")

    def is_bounded(self):
        """(bounded, witness): a finite-level certificate of boundedness.

        The witness is the valuation floor across all levels. The family is
        declared bounded when the floor has stabilized at the two deepest
        levels; a floor still falling at the top of the tower is the
        signature of an unbounded distribution.
        """
        floors = []
        for elt in self.elements:
            v = elt.min_valuation()
            floors.append(v if v is not None else 0)
        witness = min(floors)
        if len(floors) == 1:
            return True, witness
        return floors[-1] == floors[-2], witness
