"""Exact valuation arithmetic over a local field with prime residue characteristic.

Everything here works on ordinary Python rationals (``fractions.Fraction`` or
``int``). A field is a lightweight descriptor carrying the residue
characteristic ``p``, the residue degree ``f``, and the residue field size
``q = p**f``. Valuations are integers, absolute values are exact rationals
``q**(-v)``, and residue enumeration is only available when the residue field
is prime (``f == 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeLocalField:
    """A local field descriptor: residue characteristic p, residue degree f."""

    p: int
    f: int = 1

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"residue characteristic must be prime, got {self.p}")
        if self.f < 1:
            raise ValueError(f"residue degree must be positive, got {self.f}")

    @property
    def q(self) -> int:
        return self.p ** self.f


def valuation(field: PrimeLocalField, x) -> int:
    """p-adic valuation of a nonzero rational number.

    Raises ValueError on zero input: the valuation of zero is undefined here
    (callers that want a one-point compactification handle it themselves).
    """
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    p = field.p
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def absolute_value(field: PrimeLocalField, x) -> Fraction:
    """Normalized absolute value |x| = q**(-valuation(x)), exact."""
    v = valuation(field, x)
    q = field.q
    if v >= 0:
        return Fraction(1, q ** v)
    return Fraction(q ** (-v))


def unit_part(field: PrimeLocalField, x) -> Fraction:
    """x divided by p**valuation(x); a p-adic unit as an exact rational."""
    v = valuation(field, x)
    return Fraction(x) / Fraction(field.p) ** v


def unit_residues(field: PrimeLocalField, N: int) -> list[int]:
    """Canonical representatives of the level-N unit group.

    Returns all integers in [1, p**N - 1] coprime to p. Only defined for
    prime residue fields; for f > 1 a faithful enumeration would need field
    extensions, which this library never materializes.
    """
    if field.f != 1:
        raise ValueError("enumeration requires prime residue field")
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    p = field.p
    return [a for a in range(1, p ** N) if a % p != 0]


def residue_mod(field: PrimeLocalField, x, N: int) -> int:
    """Reduce a p-integral rational mod p**N, returning an int in [0, p**N)."""
    x = Fraction(x)
    modulus = field.p ** N
    if x.denominator % field.p == 0:
        raise ValueError("cannot reduce a rational with p in the denominator")
    inv = pow(x.denominator % modulus, -1, modulus)
    return (x.numerator % modulus) * inv % modulus
