"""Exact Gaussian rational scalars.

Every computation in the package runs over the field Q(i).  Real and
imaginary parts are :class:`fractions.Fraction` values, which are always
kept reduced with a positive denominator, so two equal scalars are
structurally identical.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Rational",
    "GaussianRational",
    "ZERO",
    "ONE",
    "I",
    "as_scalar",
    "add",
    "neg",
    "mul",
    "inv",
    "to_float",
    "parse_scalar",
]

#: Arbitrary-precision rational; reduced form with positive denominator.
Rational = Fraction


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot build an exact rational from {value!r}")


def _fraction_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """A complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable.  Arithmetic with ``int`` and
    ``Fraction`` operands is supported on either side.

    >>> GaussianRational(1, 1) * GaussianRational(1, -1)
    GaussianRational('2')
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "_re", _to_fraction(re))
        object.__setattr__(self, "_im", _to_fraction(im))

    @classmethod
    def _from_parts(cls, re: Fraction, im: Fraction) -> GaussianRational:
        # trusted fast path: both parts are already Fractions
        z = object.__new__(cls)
        object.__setattr__(z, "_re", re)
        object.__setattr__(z, "_im", im)
        return z

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        """Lexicographic (re, im) key used for every canonical ordering."""
        return (self._re, self._im)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational._from_parts(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._from_parts(-self._re, -self._im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational._from_parts(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self._re, self._im, other._re, other._im
        if not b and not d:
            return GaussianRational._from_parts(a * c, _FRACTION_ZERO)
        return GaussianRational._from_parts(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self._re * self._re + self._im * self._im

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self._re, -self._im)

    def inverse(self) -> GaussianRational:
        if not self:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        if self._im == 0:
            return GaussianRational(1 / self._re)
        n = self.norm()
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        # 0**0 == 1 by convention
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- conversion ---------------------------------------------------------

    def is_real(self) -> bool:
        return self._im == 0

    def is_integer(self) -> bool:
        return self._im == 0 and self._re.denominator == 1

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def to_complex(self) -> complex:
        return complex(self)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"


_FRACTION_ZERO = Fraction(0)


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_scalar(value) -> GaussianRational:
    """Coerce ints, Fractions, text literals and complex-with-exact-parts."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return GaussianRational(value[0], value[1])
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")


def add(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a + b


def neg(a: GaussianRational) -> GaussianRational:
    return -a


def mul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a * b


def inv(a: GaussianRational) -> GaussianRational:
    """Multiplicative inverse; raises ZeroDivisionError on zero."""
    return a.inverse()


def to_float(a: GaussianRational) -> complex:
    """Nearest double-precision complex value.

    Raises OverflowError when a component is outside the double range.
    """
    return complex(float(a.re), float(a.im))


# -- text form ----------------------------------------------------------------


def format_scalar(z: GaussianRational) -> str:
    """Literal text ``a/b``, ``c/d*i`` or ``a/b+c/d*i``."""
    re_part, im_part = z.re, z.im
    if im_part == 0:
        return _fraction_text(re_part)
    if abs(im_part) == 1:
        imag = "i"
    else:
        imag = f"{_fraction_text(abs(im_part))}*i"
    if re_part == 0:
        return imag if im_part > 0 else f"-{imag}"
    sign = "+" if im_part > 0 else "-"
    return f"{_fraction_text(re_part)}{sign}{imag}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"""^\s*(?:
        (?P<re>{_RAT})(?:\s*(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)? |
        (?P<imonly>{_RAT}|[+-])?\s*\*?\s*i
    )\s*$""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> GaussianRational:
    """Parse the scalar literal grammar (``2``, ``-1/2``, ``3*i``, ``1/2-2/3*i``)."""
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ValueError(f"not a Gaussian rational literal: {text!r}")
    if m.group("re") is not None:
        re_part = Fraction(m.group("re"))
        if m.group("sign") is None:
            return GaussianRational(re_part)
        im_part = Fraction(m.group("im") or 1)
        if m.group("sign") == "-":
            im_part = -im_part
        return GaussianRational(re_part, im_part)
    coeff = m.group("imonly")
    if coeff in (None, "+"):
        im_part = Fraction(1)
    elif coeff == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(coeff)
    return GaussianRational(0, im_part)
