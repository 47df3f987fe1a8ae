"""Dense univariate polynomials over the Gaussian rationals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateRootError, NotCoprimeError, ZeroLeadError
from .scalar import ONE, ZERO, GaussianRational, as_scalar

__all__ = [
    "Poly",
    "BezoutCertificate",
    "NEG_INF",
    "xgcd",
    "gcd",
    "lcm",
    "bezout",
    "pairwise_bezout",
    "from_factored",
]

#: Degree of the zero polynomial.
NEG_INF = -math.inf


class Poly:
    """Polynomial ``sum(coeffs[j] * x**j)``; immutable.

    The coefficient tuple never ends in a zero, so the zero polynomial is
    the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=ONE) -> Poly:
        return cls([ZERO] * degree + [c])

    @classmethod
    def linear_root(cls, root) -> Poly:
        """The monic factor ``x - root``."""
        return cls([-as_scalar(root), ONE])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, j: int) -> GaussianRational:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return ZERO

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, GaussianRational)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        from .parser import format_poly

        return format_poly(self, "x")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[j] + other[j] for j in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, GaussianRational)):
            return self.scale(other)
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> Poly:
        c = as_scalar(c)
        return Poly(c * a for a in self.coeffs)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly.constant(ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return divmod_poly(self, _as_poly(other))

    def __floordiv__(self, other):
        return divmod_poly(self, _as_poly(other))[0]

    def __mod__(self, other):
        return divmod_poly(self, _as_poly(other))[1]

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(self.leading().inverse())

    # -- evaluation and transforms -----------------------------------------

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x) -> GaussianRational:
        """Horner evaluation at an exact scalar."""
        x = as_scalar(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    def derivative(self) -> Poly:
        return Poly(c * j for j, c in enumerate(self.coeffs) if j > 0)

    def substitute_shift(self, h=1) -> Poly:
        """Return ``p(x + h)`` via repeated synthetic division."""
        h = as_scalar(h)
        out = list(self.coeffs)
        n = len(out)
        # Taylor shift: after pass k, out[k] is final
        for k in range(n):
            for j in range(n - 2, k - 1, -1):
                out[j] = out[j] + h * out[j + 1]
        return Poly(out)

    def compose(self, other: Poly) -> Poly:
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.constant(c)
        return acc


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, GaussianRational)):
        return Poly.constant(value)
    return NotImplemented


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``a = q*b + r`` with ``deg r < deg b``."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    if len(rem) - 1 < db:
        return Poly(), a
    lead_inv = b.leading().inverse()
    quot = [ZERO] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * lead_inv
        quot[k - db] = c
        if not c:
            continue
        for j, bc in enumerate(b.coeffs):
            rem[k - db + j] = rem[k - db + j] - c * bc
    return Poly(quot), Poly(rem[:db])


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic.

    ``g`` is zero only when both inputs are zero.
    """
    r0, r1 = a, b
    s0, s1 = Poly.constant(ONE), Poly()
    t0, t1 = Poly(), Poly.constant(ONE)
    while not r1.is_zero():
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = r0.leading().inverse()
    return r0.scale(c), s0.scale(c), t0.scale(c)


def gcd(a: Poly, b: Poly) -> Poly:
    return xgcd(a, b)[0]


def lcm(a: Poly, b: Poly) -> Poly:
    """Monic least common multiple."""
    if a.is_zero() or b.is_zero():
        return Poly()
    return ((a * b) // gcd(a, b)).monic()


@dataclass(frozen=True)
class BezoutCertificate:
    """Cofactors with ``sum(cofactors[i] * inputs[i]) == combination``."""

    cofactors: tuple[Poly, ...]
    inputs: tuple[Poly, ...]
    combination: Poly

    def check(self) -> bool:
        total = Poly()
        for r, p in zip(self.cofactors, self.inputs):
            total = total + r * p
        return total == self.combination


def bezout(ps: Sequence[Poly]) -> BezoutCertificate:
    """Cofactors ``r_i`` with ``sum(r_i * p_i) == 1`` for a coprime family.

    The family identity is folded from pairwise extended Euclid steps and
    checked exactly before returning.
    """
    ps = tuple(ps)
    if not ps:
        raise ValueError("bezout needs at least one polynomial")
    g = ps[0]
    cofactors = [Poly.constant(ONE)]
    for p in ps[1:]:
        g, s, t = xgcd(g, p)
        cofactors = [c * s for c in cofactors]
        cofactors.append(t)
    if g.is_zero() or g.degree > 0:
        raise NotCoprimeError(f"polynomials are not coprime (gcd has degree {g.degree})")
    c = g.leading().inverse()
    cofactors = [r.scale(c) for r in cofactors]
    cert = BezoutCertificate(tuple(cofactors), ps, Poly.constant(ONE))
    if not cert.check():
        raise AssertionError("Bezout certificate failed exact verification")
    return cert


def pairwise_bezout(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """``(s, t)`` with ``s*a + t*b == 1``."""
    cert = bezout([a, b])
    return cert.cofactors[0], cert.cofactors[1]


def from_factored(factors: Sequence[tuple], lead=ONE) -> Poly:
    """Expand ``lead * prod((x - root)**mult)``."""
    lead = as_scalar(lead)
    if not lead:
        raise ZeroLeadError("leading coefficient is zero")
    seen = set()
    out = Poly.constant(lead)
    for root, mult in factors:
        root = as_scalar(root)
        if root in seen:
            raise DuplicateRootError(f"root {root} listed twice")
        if not isinstance(mult, int) or mult < 1:
            raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
        seen.add(root)
        out = out * Poly.linear_root(root) ** mult
    return out
