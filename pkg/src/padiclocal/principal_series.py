"""Finite-level model of the unramified principal series of GL(2).

Vectors live on the projective line over Z/p^N: a vector is a finite table
of values on level-N points together with the unit twist alpha that fixes
the transformation law under upper-triangular matrices. The module supplies
the Iwasawa decomposition, the table-model evaluation of vectors at exact
rational matrices, the spherical Hecke operator, the embedding of a
compactly supported split-torus function into the series, and the unipotent
line integral of a vector in two independent routes: a direct chart
partition of the line (with the deep tail resummed geometrically) and a
torus shell sum. The two routes agree up to a constant; tests pin it down.
"""

from __future__ import annotations

from fractions import Fraction

from .padic_core import PrimeLocalField, residue_mod, valuation
from .rational_forms import LocalRationalFunction, geometric_tail
from .torus_local import (
    LocalTorusCase,
    ShellFunction,
    shell_volume,
    torus_weight,
    unit_ball_weight_integral,
)

_INF = object()


def _val(field: PrimeLocalField, x):
    """Valuation extended by a formal +infinity at zero."""
    if x == 0:
        return _INF
    return valuation(field, x)


def _vmin(a, b):
    if a is _INF:
        return b
    if b is _INF:
        return a
    return min(a, b)


def _less(a, b):
    """a < b with _INF as the top element."""
    if a is _INF:
        return False
    if b is _INF:
        return True
    return a < b


# -- exact 2x2 matrices ------------------------------------------------------


class GL2Element:
    """An invertible 2x2 matrix with exact rational entries."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)
        if self.det() == 0:
            raise ValueError("matrix is singular")

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "GL2Element") -> "GL2Element":
        return GL2Element(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "GL2Element":
        det = self.det()
        return GL2Element(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __eq__(self, other):
        if not isinstance(other, GL2Element):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def proj_equal(self, other: "GL2Element") -> bool:
        """Equality in the quotient by the center: entries proportional."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        for i in range(4):
            for j in range(i + 1, 4):
                if mine[i] * theirs[j] != mine[j] * theirs[i]:
                    return False
        return True

    def __repr__(self):
        return f"GL2Element({self.a}, {self.b}, {self.c}, {self.d})"


def identity() -> GL2Element:
    return GL2Element(1, 0, 0, 1)


def omega() -> GL2Element:
    """The standard Weyl rotation (0, -1; 1, 0)."""
    return GL2Element(0, -1, 1, 0)


def diagonal(a, d) -> GL2Element:
    return GL2Element(a, 0, 0, d)


def upper_unipotent(x) -> GL2Element:
    return GL2Element(1, x, 0, 1)


def lower_unipotent(x) -> GL2Element:
    return GL2Element(1, 0, x, 1)


def iwasawa_decompose(g: GL2Element, field: PrimeLocalField):
    """Split g = b * k with b upper triangular and k integral of unit det.

    The branch follows the smaller valuation in the bottom row, so k is
    always a unipotent or a rotated unipotent. Returns the pair (b, k);
    the product is checked exactly before returning.
    """
    c, d = g.c, g.d
    det = g.det()
    if d != 0 and not _less(_val(field, c), _val(field, d)):
        b = GL2Element(det / d, g.b, 0, d)
        k = GL2Element(1, 0, c / d, 1)
    else:
        b = GL2Element(det / c, g.a, 0, c)
        k = GL2Element(0, -1, 1, d / c)
    assert b * k == g
    return b, k


def mu_exponent(b: GL2Element, field: PrimeLocalField) -> int:
    """Valuation of the lower diagonal entry over the upper one."""
    if b.c != 0:
        raise ValueError("exponent only defined for upper-triangular input")
    return valuation(field, b.d) - valuation(field, b.a)


def mu_alpha(b: GL2Element, alpha, field: PrimeLocalField) -> Fraction:
    """The unit twist alpha raised to the diagonal-ratio valuation."""
    return Fraction(alpha) ** mu_exponent(b, field)


# -- level-N points of the projective line -----------------------------------
#
# A point is ('f', x) for the residue ball around x in the affine chart, or
# ('i', w) for the ball around 1/w beyond it; ('i', 0) is the point at
# infinity. Both coordinates run mod p^N, with w divisible by p, so a level-N
# line has p^N + p^(N-1) points. This realizes the homogeneous pairs (x : 1)
# and (1 : w) with min valuation zero.


def p1_points(field: PrimeLocalField, level: int):
    if field.f != 1:
        raise ValueError("finite-level projective points need a prime residue field")
    if level < 1:
        raise ValueError("level must be positive")
    p = field.p
    pts = [("f", x) for x in range(p ** level)]
    pts += [("i", w) for w in range(0, p ** level, p)]
    return pts


def point_representative(point, field: PrimeLocalField) -> GL2Element:
    """An integral unit-determinant matrix whose bottom row cuts the point."""
    kind, value = point
    if kind == "f":
        return GL2Element(0, -1, 1, -value)
    return GL2Element(1, 0, value, -1)


def reduce_to_point(c, d, field: PrimeLocalField, level: int):
    """Level-N point cut out by a bottom row (c, d) != (0, 0)."""
    c, d = Fraction(c), Fraction(d)
    if c == 0 and d == 0:
        raise ValueError("zero row has no projective reduction")
    vc, vd = _val(field, c), _val(field, d)
    shift = Fraction(field.p) ** _vmin(vc, vd)
    u, v = c / shift, d / shift
    if u != 0 and valuation(field, u) == 0:
        return ("f", residue_mod(field, -v / u, level))
    return ("i", residue_mod(field, -u / v, level))


# -- vectors -----------------------------------------------------------------


class PrincipalSeriesVector:
    """A vector of the series model: a value table on level-N points.

    Evaluation at an arbitrary invertible matrix goes through the Iwasawa
    decomposition and the transformation law, so the table together with
    alpha determines the vector everywhere.

    flat_exponents records, per point, the extra power of X = q^{-s} the
    deformed family carries there. A vector embedded from the torus keeps
    the same source function at every s, which makes its restriction to the
    maximal compact s-dependent; an empty map means the family is constant
    there, which is the right structure for the spherical vector.
    """

    def __init__(self, field: PrimeLocalField, alpha, level: int, table,
                 flat_exponents=None):
        if field.f != 1:
            raise ValueError("finite-level projective points need a prime residue field")
        if level < 1:
            raise ValueError("level must be positive")
        alpha = Fraction(alpha)
        if alpha == 0:
            raise ValueError("the unit twist must be invertible")
        self.field = field
        self.alpha = alpha
        self.level = level
        self.table = {}
        points = set(p1_points(field, level))
        for point, value in dict(table).items():
            if point not in points:
                raise ValueError(f"not a level-{level} point: {point!r}")
            self.table[point] = value
        for point in points:
            self.table.setdefault(point, Fraction(0))
        self.flat_exponents = {}
        if flat_exponents:
            for point, k in dict(flat_exponents).items():
                if point not in points:
                    raise ValueError(f"not a level-{level} point: {point!r}")
                if k:
                    self.flat_exponents[point] = k

    def transform_data(self, g: GL2Element):
        """The twist exponent and level-N point of g, via decomposition."""
        b, k = iwasawa_decompose(g, self.field)
        e = mu_exponent(b, self.field)
        return e, reduce_to_point(k.c, k.d, self.field, self.level)

    def evaluate(self, g: GL2Element):
        e, point = self.transform_data(g)
        return self.alpha ** e * self.table[point]

    def evaluate_flat(self, g: GL2Element, s):
        """Evaluation of the s-deformed section, numeric in s."""
        e, point = self.transform_data(g)
        q = self.field.q
        k = self.flat_exponents.get(point, 0)
        return self.alpha ** e * q ** (s * e - s * k) * self.table[point]

    def refine(self, new_level: int) -> "PrincipalSeriesVector":
        if new_level < self.level:
            raise ValueError("refinement only goes to a finer level")
        p = self.field.p
        modulus = p ** self.level
        table = {}
        exponents = {}
        for point in p1_points(self.field, new_level):
            kind, value = point
            coarse = (kind, value % modulus)
            table[point] = self.table[coarse]
            exponents[point] = self.flat_exponents.get(coarse, 0)
        return PrincipalSeriesVector(self.field, self.alpha, new_level, table, exponents)

    def __add__(self, other: "PrincipalSeriesVector") -> "PrincipalSeriesVector":
        if (self.field, self.alpha, self.level) != (other.field, other.alpha, other.level):
            raise ValueError("vectors live in different models")
        table = {pt: v + other.table[pt] for pt, v in self.table.items()}
        exponents = self.flat_exponents if self.flat_exponents == other.flat_exponents else None
        return PrincipalSeriesVector(self.field, self.alpha, self.level, table, exponents)

    def scale(self, c) -> "PrincipalSeriesVector":
        table = {pt: c * v for pt, v in self.table.items()}
        return PrincipalSeriesVector(self.field, self.alpha, self.level, table,
                                     self.flat_exponents)

    def __eq__(self, other):
        if not isinstance(other, PrincipalSeriesVector):
            return NotImplemented
        return (
            self.field == other.field
            and self.alpha == other.alpha
            and self.level == other.level
            and self.table == other.table
        )

    __hash__ = None


def spherical_vector(field: PrimeLocalField, alpha, level: int) -> PrincipalSeriesVector:
    """The everywhere-one table: the maximal-compact-fixed vector."""
    table = {pt: Fraction(1) for pt in p1_points(field, level)}
    return PrincipalSeriesVector(field, alpha, level, table)


def translate_vector(v: PrincipalSeriesVector, g: GL2Element) -> PrincipalSeriesVector:
    """Right translation by g, re-tabulated at the same level."""
    table = {}
    for point in p1_points(v.field, v.level):
        rep = point_representative(point, v.field)
        table[point] = v.evaluate(rep * g)
    return PrincipalSeriesVector(v.field, v.alpha, v.level, table)


# -- the spherical Hecke operator --------------------------------------------


def _primitive_units(field: PrimeLocalField, level: int):
    """Units whose residues generate the full unit group at this level."""
    p = field.p
    if p == 2:
        return [u for u in (-1, 5) if u % 2 ** level != 1 % 2 ** level] or [-1]
    modulus = p ** level
    order = modulus // p * (p - 1)
    for g in range(2, modulus):
        if g % p == 0:
            continue
        # g generates iff no proper prime-index power is trivial
        n, facs = order, set()
        for small in range(2, n + 1):
            while n % small == 0:
                facs.add(small)
                n //= small
        if all(pow(g, order // f, modulus) != 1 for f in facs):
            return [g]
    raise AssertionError("unit group of a prime power is cyclic")


def _invariance_generators(field: PrimeLocalField, level: int):
    gens = [upper_unipotent(1), lower_unipotent(field.p)]
    for u in _primitive_units(field, level):
        gens.append(diagonal(u, 1))
        gens.append(diagonal(1, u))
    return gens


def check_congruence_invariant(v: PrincipalSeriesVector) -> bool:
    """Whether v is fixed by the integral matrices with lower-left in pO.

    Invariance under a generating set is tested table-against-table, which
    is exact and suffices: translation preserves the model, so equality of
    tables is equality of vectors.
    """
    for g in _invariance_generators(v.field, v.level):
        if translate_vector(v, g).table != v.table:
            return False
    return True


def hecke_cosets(field: PrimeLocalField):
    """The q + 1 standard cosets of the uniformizer double class."""
    p = field.p
    cosets = [GL2Element(p, j, 0, 1) for j in range(field.q)]
    cosets.append(GL2Element(1, 0, 0, p))
    return cosets


def hecke_operator(v: PrincipalSeriesVector) -> PrincipalSeriesVector:
    """Sum of the q + 1 right translates over the standard cosets."""
    if v.level < 2:
        raise ValueError("the coset sum needs level at least 2")
    if not check_congruence_invariant(v):
        raise ValueError("input vector is not invariant at level one")
    cosets = hecke_cosets(v.field)
    table = {}
    for point in p1_points(v.field, v.level):
        rep = point_representative(point, v.field)
        table[point] = sum(v.evaluate(rep * g) for g in cosets)
    return PrincipalSeriesVector(v.field, v.alpha, v.level, table)


# -- the split-torus embedding -----------------------------------------------
#
# A split torus element with coordinate y != 0 embeds as the matrix with
# rows (1, 0) and (C(y-1), y), C = p^n_T. Its bottom row cuts the line
# coordinate z = -y / (C(y-1)); inverting, y = z / (z + 1/C). The two
# missing coordinates z = 0 and z = -1/C correspond to y = 0 and y = infinity
# and carry the value zero.


def torus_matrix(case: LocalTorusCase, y) -> GL2Element:
    y = Fraction(y)
    if y == 0:
        raise ValueError("torus coordinate must be nonzero")
    scale = Fraction(case.field.p) ** case.n_T
    return GL2Element(1, 0, scale * (y - 1), y)


def torus_coordinate(case: LocalTorusCase, z) -> Fraction:
    """Torus coordinate of a line coordinate, inverse to the embedding."""
    z = Fraction(z)
    shift = Fraction(case.field.p) ** (-case.n_T)
    if z == 0 or z == -shift:
        raise ValueError("line coordinate lies outside the torus orbit")
    return z / (z + shift)


def _ball_value(f: ShellFunction, center: Fraction, radius_exp: int):
    """Value of f on the ball center + p^R O, or None if not constant there.

    Exact: the ball is compared cell by cell against the support of f, so a
    None really means the ball straddles distinct values.
    """
    field = f.case.field
    p = field.p
    if center == 0 or valuation(field, center) >= radius_exp:
        # the ball contains zero: f must vanish on all shells it meets
        for (m, _, _), value in f.items():
            if m >= radius_exp and value != 0:
                return None
        return Fraction(0)
    v0 = valuation(field, center)
    unit = center / Fraction(p) ** v0
    depth = radius_exp - v0
    cells = [(n, rep, value) for (m, n, rep), value in f.items() if m == v0]
    deepest = max((n for n, _, _ in cells), default=0)
    if deepest <= depth:
        return f.evaluate(center)
    # the ball splits across finer cells: compare every residue it contains
    seen = set()
    base = residue_mod(field, unit, deepest)
    step = p ** depth
    modulus = p ** deepest
    for k in range(modulus // step):
        res = (base + k * step) % modulus
        hit = Fraction(0)
        for n, rep, value in cells:
            if (res - rep) % p ** n == 0:
                hit = value
                break
        seen.add(hit)
        if len(seen) > 1:
            return None
    return seen.pop()


def _support_bounds(f: ShellFunction):
    ms = [m for (m, _, _), value in f.items() if value != 0]
    if not ms:
        return None
    return min(ms), max(ms)


def required_level(f: ShellFunction, n_T: int) -> int:
    """A table level fine enough to hold the embedded image of f."""
    bounds = _support_bounds(f)
    deepest = max((n for (_, n, _), _ in f.items()), default=0)
    if bounds is None:
        return max(1, n_T + 1)
    m_min, m_max = bounds
    return max(
        1,
        n_T + m_max + 1,
        1 - m_min - n_T,
        n_T + deepest,
        deepest - m_min - n_T,
        # coordinate balls can cancel against 1 and land deep inside the
        # positive support, where the cell structure must still resolve
        n_T + m_max + deepest,
    )


def series_from_torus(
    f: ShellFunction, alpha, level: int
) -> PrincipalSeriesVector:
    """Push a compactly supported torus function into the series model.

    The value at a point is the function at the inverse torus coordinate,
    twisted back through the transformation law of the embedded matrix. A
    point whose coordinate ball is not contained in a constancy region of f
    means the level is too coarse; that raises rather than guessing.
    """
    case = f.case
    field = case.field
    p = field.p
    n_T = case.n_T
    alpha = Fraction(alpha)
    shift = Fraction(p) ** (-n_T)
    table = {}
    exponents = {}
    for point in p1_points(field, level):
        kind, coord = point
        if kind == "f" and coord == 0:
            # the ball around the excluded coordinate z = 0: the torus side
            # runs off to deep negative valuations, where f must vanish
            for (m, _, _), value in f.items():
                if value != 0 and m <= -(level + n_T):
                    raise ValueError("refinement level too coarse for the support of f")
            table[point] = Fraction(0)
            continue
        if kind == "f":
            z0 = Fraction(coord)
            vz = valuation(field, z0)
            center = 1 + shift / z0
            radius = level - n_T - 2 * vz
        else:
            if coord == 0:
                center = Fraction(1)
            else:
                center = 1 + shift * coord
            radius = level - n_T
        value = _ball_value(f, center, radius)
        if value is None:
            raise ValueError("refinement level too coarse for the support of f")
        if value == 0:
            table[point] = Fraction(0)
            continue
        if kind == "i" and coord == 0:
            table[point] = value
            continue
        z0 = Fraction(coord) if kind == "f" else 1 / Fraction(coord)
        y0 = torus_coordinate(case, z0)
        b, _ = iwasawa_decompose(torus_matrix(case, y0), field)
        e = mu_exponent(b, field)
        table[point] = alpha ** (-e) * value
        exponents[point] = e
    return PrincipalSeriesVector(field, alpha, level, table, exponents)


# -- the unipotent line integral ---------------------------------------------
#
# I(v, s, y) integrates the s-deformed section of v over the lower unipotent
# line through the rotated torus point: the integrand at x is the section at
# rows (0, -1), (1, -x) times the embedded torus matrix. The bottom row is
# affine in x, (1 + xA, -xB) with A = -C(y-1) and B = y, and everything is
# driven by that pair: the twist exponent is twice its minimum valuation
# minus the valuation of y, and the point is its projective reduction.


def _chart_terms(v: PrincipalSeriesVector, case: LocalTorusCase, y):
    """Exact term data of the line integral.

    Returns (terms, germ): the terms are (volume, exponent, point) triples
    covering every x-class down to the stabilization depth, obtained by
    adaptive subdivision with an exact pinning test; the germ triple
    (start, constant, point) describes the exactly geometric remainder.
    The exponent is the twist picked up off the maximal compact; the point
    carries its own flat exponent, looked up by the callers.
    """
    field = case.field
    p = field.p
    y = Fraction(y)
    if y == 0:
        raise ValueError("torus coordinate must be nonzero")
    A = -(Fraction(p) ** case.n_T) * (y - 1)
    B = y
    vB = valuation(field, B)
    vA = _val(field, A)
    v_ab = _vmin(vA, vB)
    level = v.level
    # depth past which every x-shell maps to one frozen point with a twist
    # exponent linear in the shell index
    if A == 0:
        germ_start = min(-1, -level + vB - 2 * v_ab, -vB - 1)
    else:
        germ_start = min(-1, -level + vB - 2 * v_ab, -vA - 1)
    frozen_point = reduce_to_point(A, -B, field, level)
    germ_constant = 2 * v_ab - vB

    work = [(Fraction(0), 0)]
    for j in range(-1, germ_start, -1):
        for u in range(1, p):
            work.append((Fraction(u) * Fraction(p) ** j, j + 1))
    terms = []
    cap = level + 40
    while work:
        a, depth = work.pop()
        c0 = 1 + a * A
        d0 = -a * B
        v0 = _vmin(_val(field, c0), _val(field, d0))
        pinned = _less(v0, depth + v_ab) and depth + vB - 2 * v0 >= level
        if not pinned:
            if depth > cap:
                raise AssertionError("line partition failed to stabilize")
            step = Fraction(p) ** depth
            work.extend((a + k * step, depth + 1) for k in range(p))
            continue
        point = reduce_to_point(c0, d0, field, level)
        exponent = 2 * v0 - vB
        terms.append((Fraction(p) ** (-depth), exponent, point))
    germ = (germ_start, germ_constant, frozen_point)
    return terms, germ


def chart_route_rational(
    v: PrincipalSeriesVector, case: LocalTorusCase, y=1
) -> LocalRationalFunction:
    """The line integral as an exact rational function of X = q^{-s}.

    The finitely many unstable shells are partitioned exactly; the deep tail
    is a geometric series and is resummed in closed form, which is what
    carries the value outside the convergence region.
    """
    q = case.q
    alpha = v.alpha
    terms, (germ_start, germ_constant, germ_point) = _chart_terms(v, case, y)
    total = LocalRationalFunction.zero(q)
    for volume, exponent, point in terms:
        value = v.table[point]
        if value:
            piece = LocalRationalFunction.monomial(
                volume * alpha ** exponent * value,
                -exponent + v.flat_exponents.get(point, 0),
                q,
            )
            total = total + piece
    germ_value = v.table[germ_point]
    if germ_value:
        ratio = LocalRationalFunction.monomial(Fraction(q) / alpha ** 2, 2, q)
        head = LocalRationalFunction.monomial(
            Fraction(1 - Fraction(1, q)) * alpha ** germ_constant * germ_value,
            -germ_constant + v.flat_exponents.get(germ_point, 0),
            q,
        )
        total = total + head * geometric_tail(ratio, -germ_start)
    return total


def chart_route_integral(
    v: PrincipalSeriesVector, case: LocalTorusCase, s, y=1, truncation: int = 40
):
    """Truncated numeric form of the line integral, shell by shell.

    Convergence of the deep shells needs the geometric ratio below one;
    outside that region the truncated sum is meaningless and the call is
    refused.
    """
    q = case.q
    alpha = v.alpha
    ratio_mod = float(q) ** (1 - 2 * complex(s).real) / float(alpha) ** 2
    if ratio_mod >= 1:
        raise ValueError("oracle called in the divergence region")
    terms, (germ_start, germ_constant, germ_point) = _chart_terms(v, case, y)
    total = 0
    for volume, exponent, point in terms:
        value = v.table[point]
        if value:
            k = v.flat_exponents.get(point, 0)
            total += volume * alpha ** exponent * q ** (s * (exponent - k)) * value
    germ_value = v.table[germ_point]
    if germ_value:
        k = v.flat_exponents.get(germ_point, 0)
        scale = (1 - Fraction(1, q)) * germ_value
        for j in range(germ_start, -truncation - 1, -1):
            exponent = 2 * j + germ_constant
            total += scale * q ** (-j) * alpha ** exponent * q ** (s * (exponent - k))
    return total


def torus_route_integral(
    f: ShellFunction, alpha, y=1
) -> LocalRationalFunction:
    """Shell sum of the weighted torus integral of f translated by y.

    Cell by cell: the weight is constant off the unit ball and resums to the
    closed unit-ball form on it. This is the second, independent route to
    the line integral; the two differ by a constant the tests pin down.
    """
    case = f.case
    field = case.field
    q = case.q
    moved = f.translate(y)
    total = LocalRationalFunction.zero(q)
    for (m, n, rep), value in moved.items():
        if not value:
            continue
        if m != 0:
            weight = torus_weight(case, alpha, ("valuation", m)) * shell_volume(case, n)
        elif n == 0 or rep % field.p ** n == 1:
            weight = unit_ball_weight_integral(case, n)
        else:
            n0 = valuation(field, Fraction(rep - 1))
            weight = torus_weight(case, alpha, ("unit", n0)) * shell_volume(case, n)
        total = total + weight * value
    return total


def comparison_constant(
    f: ShellFunction, alpha, level: int, y=1
) -> LocalRationalFunction:
    """Ratio of the direct line route to the torus shell route.

    Both routes are exact rational functions of X, so the quotient is too;
    when the comparison identity holds it collapses to a constant.
    """
    case = f.case
    vec = series_from_torus(f, alpha, level)
    direct = chart_route_rational(vec, case, y)
    shells = torus_route_integral(f, alpha, y)
    return direct / shells
