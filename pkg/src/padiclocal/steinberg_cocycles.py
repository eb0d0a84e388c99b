"""Order-one cocycles on the projective line attached to torus data.

The quotient model of the special representation is a table of values on the
finite projective line, considered modulo constant functions. A continuous
homomorphism from the multiplicative group into the p-adic integers, composed
with the eigenvalue-ratio coordinate of the split torus, weights the
nonnegative-valuation region; the cocycle of a torus element is the difference
between that weighted indicator and its translate. All tables are sampled at
exact rational representatives of the level-N cells, so every identity below
is checked exactly at the working precision.
"""

from fractions import Fraction
from functools import lru_cache

from .padic_core import PrimeLocalField, valuation, residue_mod
from .torus_local import LocalTorusCase
from .principal_series import p1_points


# -- homomorphisms into the p-adic integers ----------------------------------


@lru_cache(maxsize=None)
def _log_series(p: int, numerator: int, working: int) -> Fraction:
    """Truncated p-adic logarithm of 1 + numerator, exact rational value."""
    x = Fraction(numerator)
    total = Fraction(0)
    power = Fraction(1)
    for k in range(1, working + 9):
        power *= x
        total += (-1) ** (k + 1) * power / k
    return total


def _teichmuller(field: PrimeLocalField, unit: int, working: int) -> int:
    p = field.p
    modulus = p ** working
    if p == 2:
        return 1 if unit % 4 == 1 else modulus - 1
    t = unit % modulus
    for _ in range(working + 2):
        t = pow(t, p, modulus)
    return t


class LocalHomomorphism:
    """a * (valuation) + b * (principal-unit logarithm coordinate), mod p^M.

    The coordinate is normalized so that 1 + p has coordinate 1 (for p = 2
    the principal units are 1 + 4Z and the base point is 5). Torsion units
    are killed by construction, and additivity holds exactly mod p^M.
    """

    def __init__(self, field: PrimeLocalField, ord_coeff: int, log_coeff: int,
                 precision: int = 12):
        if field.f != 1:
            raise ValueError("homomorphism coordinates need a prime residue field")
        if precision < 1:
            raise ValueError("precision must be positive")
        self.field = field
        self.precision = precision
        self.modulus = field.p ** precision
        self.ord_coeff = ord_coeff % self.modulus
        self.log_coeff = log_coeff % self.modulus
        self._working = precision + 6

    def _log_coordinate(self, x: Fraction) -> int:
        field = self.field
        p = field.p
        working = self._working
        v = valuation(field, x)
        unit = x / Fraction(p) ** v
        omega = _teichmuller(field, residue_mod(field, unit, working), working)
        principal = unit / omega
        # principal is 1 mod p (mod 4 for p = 2) up to the working precision
        offset = residue_mod(field, principal - 1, working)
        if offset > p ** working // 2:
            offset -= p ** working
        base = p if p != 2 else 4
        coordinate = _log_series(p, offset, working) / _log_series(p, base, working)
        return residue_mod(field, coordinate, self.precision)

    def value(self, x) -> int:
        """The homomorphism at a nonzero rational, as an integer mod p^M."""
        x = Fraction(x)
        v = valuation(self.field, x)
        total = self.ord_coeff * v
        if self.log_coeff:
            total += self.log_coeff * self._log_coordinate(x)
        return total % self.modulus


def ord_homomorphism(field: PrimeLocalField, precision: int = 12) -> LocalHomomorphism:
    return LocalHomomorphism(field, 1, 0, precision)


# -- table elements of the quotient model ------------------------------------


class SteinbergElement:
    """A level-N table on the projective line, modulo constant tables.

    Values are integers mod p^M. When modulo_constants is set (the default),
    equality means the two tables differ by one constant everywhere, which is
    exactly the quotient the cocycles live in.
    """

    def __init__(self, field: PrimeLocalField, level: int, precision: int,
                 table, modulo_constants: bool = True):
        self.field = field
        self.level = level
        self.precision = precision
        self.modulus = field.p ** precision
        self.modulo_constants = modulo_constants
        points = set(p1_points(field, level))
        self.table = {}
        for point, value in dict(table).items():
            if point not in points:
                raise ValueError(f"not a level-{level} point: {point!r}")
            self.table[point] = value % self.modulus
        for point in points:
            self.table.setdefault(point, 0)

    def _compatible(self, other: "SteinbergElement"):
        if (self.field, self.level, self.precision) != (
            other.field, other.level, other.precision
        ):
            raise ValueError("tables live at different levels or precisions")

    def __add__(self, other: "SteinbergElement") -> "SteinbergElement":
        self._compatible(other)
        table = {pt: v + other.table[pt] for pt, v in self.table.items()}
        return SteinbergElement(self.field, self.level, self.precision, table,
                                self.modulo_constants)

    def __sub__(self, other: "SteinbergElement") -> "SteinbergElement":
        self._compatible(other)
        table = {pt: v - other.table[pt] for pt, v in self.table.items()}
        return SteinbergElement(self.field, self.level, self.precision, table,
                                self.modulo_constants)

    def scale(self, c: int) -> "SteinbergElement":
        table = {pt: c * v for pt, v in self.table.items()}
        return SteinbergElement(self.field, self.level, self.precision, table,
                                self.modulo_constants)

    def is_constant(self) -> bool:
        values = set(self.table.values())
        return len(values) == 1

    def __eq__(self, other):
        if not isinstance(other, SteinbergElement):
            return NotImplemented
        self._compatible(other)
        diffs = {(v - other.table[pt]) % self.modulus
                 for pt, v in self.table.items()}
        if self.modulo_constants and other.modulo_constants:
            return len(diffs) == 1
        return diffs == {0}

    __hash__ = None


# -- torus coordinates of the sample points ----------------------------------

X1_POINT = ("f", 0)


def point_torus_coordinate(case: LocalTorusCase, point):
    """The exact torus coordinate of a sample point, None at the x1 sample.

    Sample representatives are the exact integer coordinates of the cells,
    so only the cell anchored at the first excluded point lacks a value; the
    second excluded point is never an exact sample.
    """
    kind, coord = point
    if point == X1_POINT:
        return None
    if kind == "i" and coord == 0:
        return Fraction(1)
    shift = Fraction(case.field.p) ** (-case.n_T)
    if kind == "f":
        z = Fraction(coord)
    else:
        z = 1 / Fraction(coord)
    return z / (z + shift)


def in_open_set(case: LocalTorusCase, u) -> bool:
    """Membership of a torus coordinate in the nonnegative-valuation region."""
    return valuation(case.field, Fraction(u)) >= 0


def open_set_element(case: LocalTorusCase, level: int,
                     precision: int = 12) -> SteinbergElement:
    """Indicator table of the open set (the x1 sample belongs to it)."""
    table = {}
    for point in p1_points(case.field, level):
        if point == X1_POINT:
            table[point] = 1
            continue
        u = point_torus_coordinate(case, point)
        table[point] = 1 if in_open_set(case, u) else 0
    return SteinbergElement(case.field, level, precision, table)


# -- the cocycle -------------------------------------------------------------


def _weighted_indicator(ell: LocalHomomorphism, case: LocalTorusCase, u) -> int:
    if in_open_set(case, u):
        return ell.value(u)
    return 0


def cocycle_value(ell: LocalHomomorphism, case: LocalTorusCase, y, u) -> int:
    """The cocycle of the torus element y at the exact coordinate u.

    Pass u = None for the first excluded point; the difference of the two
    weighted indicators extends continuously there with value ell(y).
    """
    y = Fraction(y)
    if u is None:
        return ell.value(y) % ell.modulus
    u = Fraction(u)
    return (_weighted_indicator(ell, case, u)
            - _weighted_indicator(ell, case, u / y)) % ell.modulus


def _check_level(case: LocalTorusCase, y, level: int):
    y = Fraction(y)
    needed = case.n_T + abs(valuation(case.field, y)) + 1
    if level < needed:
        raise ValueError("refinement level too coarse for the translated open set")


def cocycle_z(ell: LocalHomomorphism, case: LocalTorusCase, y,
              level: int) -> SteinbergElement:
    """The table of the cocycle at y: weighted indicator minus its translate."""
    y = Fraction(y)
    if y == 0:
        raise ValueError("torus coordinate must be nonzero")
    _check_level(case, y, level)
    table = {}
    for point in p1_points(case.field, level):
        u = point_torus_coordinate(case, point)
        table[point] = cocycle_value(ell, case, y, u)
    return SteinbergElement(case.field, level, ell.precision, table)


def translated_cocycle(ell: LocalHomomorphism, case: LocalTorusCase, y, shift,
                       level: int) -> SteinbergElement:
    """The shift-translate of the cocycle table, evaluated exactly.

    The translate of a table is the underlying function at the shifted
    coordinate, so it is rebuilt from the formula rather than resampled.
    """
    y = Fraction(y)
    shift = Fraction(shift)
    _check_level(case, y, level)
    table = {}
    for point in p1_points(case.field, level):
        u = point_torus_coordinate(case, point)
        if u is None:
            table[point] = cocycle_value(ell, case, y, None)
        else:
            table[point] = cocycle_value(ell, case, y, u / shift)
    return SteinbergElement(case.field, level, ell.precision, table)


def check_cocycle_identity(ell: LocalHomomorphism, case: LocalTorusCase,
                           y1, y2, level: int) -> bool:
    """z(t1 t2) = z(t1) + t1 z(t2), exactly at the working precision."""
    y1, y2 = Fraction(y1), Fraction(y2)
    left = cocycle_z(ell, case, y1 * y2, level)
    right = cocycle_z(ell, case, y1, level) + translated_cocycle(
        ell, case, y2, y1, level
    )
    return left == right


def compact_support_decomposition(ell: LocalHomomorphism, case: LocalTorusCase,
                                  y, level: int):
    """Split the cocycle into a compactly supported part plus a tail multiple.

    Returns (sign, window, tail) with the identity
        cocycle = sign * (ell restricted to the window) + ell(y) * tail
    checked exactly: the window is the difference of the open set and its
    translate (a bounded valuation band, hence compact in torus coordinates)
    and the tail is the indicator of the translated open set. When ell kills
    y the cocycle itself is the compactly supported function.
    """
    y = Fraction(y)
    _check_level(case, y, level)
    k = valuation(case.field, y)
    sign = 1 if k >= 0 else -1
    window = {}
    tail = {}
    recomposed = {}
    for point in p1_points(case.field, level):
        u = point_torus_coordinate(case, point)
        if u is None:
            window[point] = 0
            tail[point] = 1
            recomposed[point] = ell.value(y)
            continue
        v = valuation(case.field, u)
        in_translate = v >= k
        tail[point] = 1 if in_translate else 0
        if sign > 0:
            in_window = 0 <= v < k
        else:
            in_window = k <= v < 0
        window[point] = ell.value(u) % ell.modulus if in_window else 0
        recomposed[point] = sign * window[point] + (
            ell.value(y) if in_translate else 0
        )
    cocycle = cocycle_z(ell, case, y, level)
    exact = SteinbergElement(case.field, level, ell.precision, recomposed,
                             modulo_constants=False)
    strict = SteinbergElement(case.field, level, ell.precision, cocycle.table,
                              modulo_constants=False)
    if strict != exact:
        raise AssertionError("compact support decomposition failed")
    window_elt = SteinbergElement(case.field, level, ell.precision, window)
    tail_elt = SteinbergElement(case.field, level, ell.precision, tail)
    return sign, window_elt, tail_elt


# -- the section whose coboundary recovers the cocycle ------------------------


def boundary_eigenvalues(case: LocalTorusCase, y):
    """Eigenvalue pair of the embedded torus element at coordinate y."""
    return Fraction(y), Fraction(1)


def stabilized_values(case: LocalTorusCase, g_c, g_d):
    """The two linear forms d + x_i c at a matrix with bottom row (c, d)."""
    shift = Fraction(case.field.p) ** (-case.n_T)
    return Fraction(g_d), Fraction(g_d) - shift * Fraction(g_c)


def _point_bottom_row(point, field: PrimeLocalField):
    kind, coord = point
    if kind == "f":
        return 1, -coord
    return coord, -1


def phi1_section(ell: LocalHomomorphism, case: LocalTorusCase, level: int):
    """Level-N table of the section: the x1 sample is excluded.

    The value at a sample matrix is ell of the second linear form on the
    open set and ell of the first off it; at the exact first excluded point
    the relevant form vanishes, so that sample is left out of the table.
    """
    table = {}
    for point in p1_points(case.field, level):
        if point == X1_POINT:
            continue
        c, d = _point_bottom_row(point, case.field)
        first, second = stabilized_values(case, c, d)
        u = point_torus_coordinate(case, point)
        if in_open_set(case, u):
            table[point] = ell.value(second) % ell.modulus
        else:
            table[point] = ell.value(first) % ell.modulus
    return table


def check_coboundary(ell: LocalHomomorphism, case: LocalTorusCase, y,
                     level: int) -> bool:
    """The translate difference of the section is the cocycle plus a constant.

    The section transforms through the eigenvalue forms, so its translate by
    y is computable from the same sample data. The table convention of
    cocycle_z shifts by the inverse coordinate, so the matching cocycle here
    is the one at 1/y; the constant is ell of the first eigenvalue.
    """
    y = Fraction(y)
    _check_level(case, y, level)
    section = phi1_section(ell, case, level)
    lam1, _ = boundary_eigenvalues(case, y)
    constant = ell.value(lam1)
    modulus = ell.modulus
    for point, value in section.items():
        c, d = _point_bottom_row(point, case.field)
        first, second = stabilized_values(case, c, d)
        u = point_torus_coordinate(case, point)
        # the second form is invariant under the torus, the first scales by
        # the first eigenvalue
        if in_open_set(case, u * y):
            translated = ell.value(second)
        else:
            translated = (ell.value(first) + ell.value(lam1)) % modulus
        left = (translated - value) % modulus
        right = (constant + cocycle_value(ell, case, 1 / y, u)) % modulus
        if left != right:
            return False
    return True
