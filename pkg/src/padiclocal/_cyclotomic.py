"""Exact arithmetic with roots of unity, for brute-force character sums.

An element is a polynomial in Q[x]/(x**m - 1), read as a complex number by
sending x to exp(2*pi*i/m). The ring is not a field, so the zero test reduces
modulo the m-th cyclotomic polynomial (the minimal polynomial of the chosen
root): an element is the number zero exactly when that remainder vanishes,
and it is rational exactly when the remainder is a constant.

Only oracles use this module; the closed forms never do.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Coefficients (lowest first, exact ints) of the m-th cyclotomic polynomial.

    Computed by the classical recursion: divide x**m - 1 by the product of
    the cyclotomic polynomials of the proper divisors of m.
    """
    if m < 1:
        raise ValueError("index must be positive")
    if m == 1:
        return (-1, 1)
    num = [Fraction(0)] * (m + 1)
    num[0], num[m] = Fraction(-1), Fraction(1)
    den = [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul(den, [Fraction(c) for c in cyclotomic_polynomial(d)])
    quot, rem = _poly_divmod(num, den)
    assert not any(rem), f"cyclotomic division left a remainder at m={m}"
    return tuple(int(c) for c in quot)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_divmod(a, b):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    quot = [Fraction(0)] * max(1, len(a) - db)
    while len(a) - 1 >= db and any(a):
        k = len(a) - 1 - db
        c = a[-1] / b[-1]
        quot[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        while len(a) > 1 and a[-1] == 0:
            a.pop()
    return quot, a


class CycNumber:
    """An exact element of Q(zeta_m), stored as coefficients in Q[x]/(x^m - 1)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > m:
            folded = [Fraction(0)] * m
            for k, c in enumerate(coeffs):
                folded[k % m] += c
            coeffs = folded
        coeffs += [Fraction(0)] * (m - len(coeffs))
        self.m = m
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1):
        coeffs = [0] * m
        coeffs[k % m] = 1
        return cls(m, coeffs)

    @classmethod
    def rational(cls, value, m: int = 1):
        coeffs = [Fraction(value)] + [Fraction(0)] * (m - 1)
        return cls(m, coeffs)

    def promote(self, m_new: int):
        if m_new == self.m:
            return self
        if m_new % self.m != 0:
            raise ValueError("can only promote to a multiple order")
        step = m_new // self.m
        coeffs = [Fraction(0)] * m_new
        for k, c in enumerate(self.coeffs):
            coeffs[k * step] = c
        return CycNumber(m_new, coeffs)

    def _align(self, other):
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(other)
        m = _lcm(self.m, other.m)
        return self.promote(m), other.promote(m)

    def __add__(self, other):
        a, b = self._align(other)
        return CycNumber(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._align(other)
        return CycNumber(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.m, [c * other for c in self.coeffs])
        a, b = self._align(other)
        out = [Fraction(0)] * a.m
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[(i + j) % a.m] += x * y
        return CycNumber(a.m, out)

    __rmul__ = __mul__

    def conjugate(self):
        """Complex conjugation: the root of unity goes to its inverse."""
        out = [Fraction(0)] * self.m
        for k, c in enumerate(self.coeffs):
            out[(-k) % self.m] += c
        return CycNumber(self.m, out)

    def _remainder(self):
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        _, rem = _poly_divmod(list(self.coeffs), phi)
        return rem

    def is_zero(self) -> bool:
        return not any(self._remainder())

    def is_rational(self) -> bool:
        rem = self._remainder()
        return not any(rem[1:])

    def to_fraction(self) -> Fraction:
        rem = self._remainder()
        if any(rem[1:]):
            raise ValueError("value is not rational")
        return rem[0] if rem else Fraction(0)

    def to_complex(self) -> complex:
        zeta = cmath.exp(2j * cmath.pi / self.m)
        total = 0j
        power = 1 + 0j
        for c in self.coeffs:
            total += float(c) * power
            power *= zeta
        return total

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber.rational(other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __repr__(self):
        return f"CycNumber(m={self.m}, value~{self.to_complex():.4f})"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def conj(value):
    """Conjugate dispatch used by pairings: rationals are fixed, complex and
    cyclotomic values conjugate."""
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, complex):
        return value.conjugate()
    if isinstance(value, CycNumber):
        return value.conjugate()
    raise TypeError(f"no conjugation for {type(value).__name__}")
