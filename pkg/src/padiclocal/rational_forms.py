"""Rational functions in the spectral variable X = q**(-s).

These objects carry analytic continuation for the local integrals: every
convergent shell sum in this library is resummed into a ratio of polynomials
in X, after which evaluation anywhere away from poles is a substitution.

Two coefficient backends are supported and inferred from the inputs:

* exact: ``fractions.Fraction`` coefficients, canonical reduced form
  (gcd cancelled, denominator monic), equality by cross multiplication;
* float: ``complex`` coefficients, equality by cross multiplication within
  a tolerance after normalizing the denominator's leading coefficient.

A rational function may instead use the shifted variable Y = q**(-s-1/2)
(``half_shift=True``). Shifted and unshifted objects never mix in arithmetic;
evaluation of a shifted object is exact precisely at half-integer s.
"""

from __future__ import annotations

from fractions import Fraction


class PoleError(ArithmeticError):
    """Evaluation hit a pole; ``order`` is the pole order (a positive int)."""

    def __init__(self, message, order):
        super().__init__(message)
        self.order = order


# -- polynomial helpers on coefficient tuples, lowest degree first ----------


def _strip(coeffs):
    c = list(coeffs)
    while c and _is_zero_coeff(c[-1]):
        c.pop()
    return tuple(c)


def _is_zero_coeff(c):
    if isinstance(c, complex):
        return c == 0
    return c == 0


def _padd(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(x + y)
    return _strip(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if _is_zero_coeff(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _strip(out)


def _pscale(a, c):
    return _strip(tuple(x * c for x in a))


def _pdivmod(a, b):
    """Exact-backend polynomial division with remainder."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    quot = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and _strip(a):
        a = list(_strip(a))
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        c = Fraction(a[-1]) / lead
        quot[k] = c
        for i, y in enumerate(b):
            a[k + i] = a[k + i] - c * y
        a = list(_strip(a))
    return _strip(quot), _strip(a)


def _pgcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if a:
        a = _pscale(a, Fraction(1) / a[-1])
    return a


def _peval(a, x):
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def _as_exact(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact coefficient: {c!r}")


class LocalRationalFunction:
    """num(X)/den(X) with an attached residue field size q."""

    __slots__ = ("num", "den", "q", "half_shift", "exact")

    def __init__(self, num, den, q, half_shift=False):
        num = tuple(num)
        den = tuple(den)
        exact = all(isinstance(c, (int, Fraction)) for c in num + den)
        if exact:
            num = tuple(_as_exact(c) for c in num)
            den = tuple(_as_exact(c) for c in den)
        else:
            num = tuple(complex(c) for c in num)
            den = tuple(complex(c) for c in den)
        num, den = _strip(num), _strip(den)
        if not den:
            raise ZeroDivisionError("denominator is the zero polynomial")
        if not num:
            den = (Fraction(1),) if exact else (complex(1),)
        if exact:
            g = _pgcd(num, den) if num else ()
            if g and len(g) > 1:
                num, _ = _pdivmod(num, g)
                den, _ = _pdivmod(den, g)
            lead = den[-1]
            den = _pscale(den, Fraction(1) / lead)
            num = _pscale(num, Fraction(1) / lead)
        else:
            lead = den[-1]
            den = tuple(c / lead for c in den)
            num = tuple(c / lead for c in num)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "half_shift", bool(half_shift))
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, q, half_shift=False):
        return cls((c,), (1,), q, half_shift)

    @classmethod
    def zero(cls, q, half_shift=False):
        return cls((), (1,), q, half_shift)

    @classmethod
    def monomial(cls, c, k, q, half_shift=False):
        """c * X**k, with k any integer (negative k puts X**(-k) below)."""
        if k >= 0:
            return cls((0,) * k + (c,), (1,), q, half_shift)
        return cls((c,), (0,) * (-k) + (1,), q, half_shift)

    @classmethod
    def q_power_of_s(cls, q, a, b, half_shift=False):
        """The monomial q**(a*s + b) rewritten in X = q**(-s): q**b * X**(-a)."""
        return cls.monomial(Fraction(q) ** b, -a, q, half_shift)

    # -- plumbing ------------------------------------------------------------

    def _check_compatible(self, other):
        if self.q != other.q:
            raise ValueError("mismatched residue field sizes")
        if self.half_shift != other.half_shift:
            raise ValueError("mismatched spectral variable conventions")

    def _coerce(self, other):
        if isinstance(other, LocalRationalFunction):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, Fraction, float, complex)):
            return LocalRationalFunction.constant(other, self.q, self.half_shift)
        return NotImplemented

    @property
    def is_zero(self):
        return not self.num

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        den = _pmul(self.den, other.den)
        return LocalRationalFunction(num, den, self.q, self.half_shift)

    __radd__ = __add__

    def __neg__(self):
        return LocalRationalFunction(_pneg(self.num), self.den, self.q, self.half_shift)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LocalRationalFunction(
            _pmul(self.num, other.num), _pmul(self.den, other.den), self.q, self.half_shift
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return LocalRationalFunction(
            _pmul(self.num, other.den), _pmul(self.den, other.num), self.q, self.half_shift
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        out = LocalRationalFunction.constant(1, self.q, self.half_shift)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation ----------------------------------------------------------

    def _variable_value(self, s):
        """The value of X (or Y) at the point s, exact when possible."""
        exponent = Fraction(s) + (Fraction(1, 2) if self.half_shift else 0)
        if exponent.denominator == 1:
            e = -int(exponent)
            if e >= 0:
                return Fraction(self.q) ** e
            return Fraction(1, self.q ** (-e))
        return float(self.q) ** float(-exponent)

    def evaluate_at_point(self, x):
        """Evaluate at a given value of the variable X (or Y)."""
        top = _peval(self.num, x) if self.num else 0 * x
        bottom = _peval(self.den, x)
        if _is_zero_small(bottom, self.exact):
            if not self.num:
                return top / 1
            order = self.order_at_point(x)
            if order < 0:
                raise PoleError(f"pole at variable value {x!r}", -order)
            # removable: cancel the common factor and evaluate the rest
            num, den = self.num, self.den
            while True:
                bottom = _peval(den, x)
                if not _is_zero_small(bottom, self.exact):
                    break
                num, _ = _pdivmod(num, (-x, 1)) if self.exact else (_pdeflate(num, x), None)
                den, _ = _pdivmod(den, (-x, 1)) if self.exact else (_pdeflate(den, x), None)
            return _peval(num, x) / bottom
        return top / bottom

    def evaluate_at_s(self, s):
        """Evaluate at the point s via X = q**(-s) (or Y = q**(-s-1/2))."""
        try:
            s = Fraction(s)
        except (TypeError, ValueError):
            s = Fraction(repr(float(s)))
        return self.evaluate_at_point(self._variable_value(s))

    def order_at_point(self, x0):
        """Vanishing order at X = x0: zeros >= 1, regular points 0, poles < 0.

        The zero function has no well-defined order.
        """
        if self.is_zero:
            raise ValueError("zero function has no order")
        return _root_multiplicity(self.num, x0, self.exact) - _root_multiplicity(
            self.den, x0, self.exact
        )

    # -- comparison ----------------------------------------------------------

    def equal(self, other, tol=1e-9):
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot compare with this operand")
        left = _pmul(self.num, other.den)
        right = _pmul(other.num, self.den)
        if self.exact and other.exact:
            return left == right
        diff = _padd(left, _pneg(right))
        scale = max(
            [abs(complex(c)) for c in left + right] or [1.0]
        )
        return all(abs(complex(c)) <= tol * max(scale, 1.0) for c in diff)

    def __eq__(self, other):
        try:
            coerced = self._coerce(other)
        except ValueError:
            return False
        if coerced is NotImplemented:
            return NotImplemented
        return self.equal(coerced)

    def __hash__(self):
        return hash((self.num, self.den, self.q, self.half_shift))

    def __repr__(self):
        var = "Y" if self.half_shift else "X"
        return (
            f"LocalRationalFunction({_format_poly(self.num, var)} / "
            f"{_format_poly(self.den, var)}, q={self.q})"
        )


def _is_zero_small(v, exact, tol=1e-12):
    if exact:
        return v == 0
    return abs(v) <= tol


def _pdeflate(coeffs, x):
    """Synthetic division of a float-backend polynomial by (X - x)."""
    out = []
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
        out.append(acc)
    out.pop()  # the last accumulator is the remainder
    return tuple(reversed(out))


def _root_multiplicity(coeffs, x0, exact, tol=1e-9):
    coeffs = _strip(coeffs)
    if not coeffs:
        return 0
    mult = 0
    while coeffs:
        val = _peval(coeffs, x0)
        scale = max([abs(complex(c)) for c in coeffs] or [1.0])
        if exact:
            if val != 0:
                break
        else:
            if abs(val) > tol * max(scale, 1.0):
                break
        if exact:
            coeffs, rem = _pdivmod(coeffs, (-x0, 1))
            assert not rem
        else:
            coeffs = _pdeflate(coeffs, x0)
        mult += 1
    return mult


def _format_poly(coeffs, var):
    if not coeffs:
        return "0"
    parts = []
    for k, c in enumerate(coeffs):
        if _is_zero_coeff(c):
            continue
        if k == 0:
            parts.append(f"{c}")
        elif k == 1:
            parts.append(f"{c}*{var}")
        else:
            parts.append(f"{c}*{var}^{k}")
    return " + ".join(parts) or "0"


def geometric_tail(ratio: LocalRationalFunction, first_exponent: int):
    """Sum of ratio**n for n >= first_exponent, resummed exactly.

    This is the analytic-continuation step: the closed form
    ratio**first / (1 - ratio) agrees with the convergent sum where one
    exists and extends it everywhere else.
    """
    one = LocalRationalFunction.constant(1, ratio.q, ratio.half_shift)
    return ratio ** first_exponent / (one - ratio)
