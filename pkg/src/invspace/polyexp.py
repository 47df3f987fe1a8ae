"""Polynomial-exponential expressions and the shift / derivative operators.

A :class:`PolyExp` is a finite sum ``sum_lam E_lam * p_lam`` where ``E_lam``
is ``lam**n`` for sequences (shift operator) or ``exp(lam*t)`` for functions
(derivative operator).  The expression itself does not know which reading
applies; operations that depend on it take an :class:`OperatorBase`.
"""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .errors import RootsMismatchError, ShiftZeroLambdaError, ZeroLeadError
from .poly import Poly, from_factored
from .scalar import ONE, ZERO, GaussianRational, as_scalar

__all__ = [
    "OperatorBase",
    "PolyExp",
    "OperatorSpec",
    "canonicalize",
    "atom",
    "apply_shift",
    "apply_derivative",
    "apply_base",
    "apply_operator",
    "alpha_coeffs",
    "kernel_basis",
    "eval_numeric",
    "eval_exact_sequence",
    "eval_exact_function_at_zero",
]


class OperatorBase(enum.Enum):
    SHIFT = "shift"
    DERIVATIVE = "derivative"

    @classmethod
    def parse(cls, value) -> OperatorBase:
        if isinstance(value, OperatorBase):
            return value
        key = str(value).strip().lower()
        aliases = {
            "shift": cls.SHIFT, "seq": cls.SHIFT, "sequence": cls.SHIFT, "s": cls.SHIFT,
            "derivative": cls.DERIVATIVE, "ode": cls.DERIVATIVE, "function": cls.DERIVATIVE,
            "d": cls.DERIVATIVE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown operator base {value!r}") from None

    @property
    def variable(self) -> str:
        return "n" if self is OperatorBase.SHIFT else "t"

    @property
    def unit_lambda(self) -> GaussianRational:
        """Exponential base whose term is identically 1 (1**n or exp(0*t))."""
        return ONE if self is OperatorBase.SHIFT else ZERO


class PolyExp:
    """Canonical polynomial-exponential expression.

    ``terms`` is a tuple of ``(lam, poly)`` pairs with distinct ``lam``,
    nonzero ``poly``, sorted by ``(lam.re, lam.im)``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple] | Mapping = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        merged: dict[GaussianRational, Poly] = {}
        for lam, p in terms:
            lam = as_scalar(lam)
            if not isinstance(p, Poly):
                p = Poly(p) if isinstance(p, (list, tuple)) else Poly.constant(p)
            merged[lam] = merged[lam] + p if lam in merged else p
        items = sorted(
            ((lam, p) for lam, p in merged.items() if not p.is_zero()),
            key=lambda item: item[0].sort_key(),
        )
        object.__setattr__(self, "terms", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("PolyExp is immutable")

    @classmethod
    def zero(cls) -> PolyExp:
        return cls()

    @classmethod
    def constant(cls, c, base: OperatorBase) -> PolyExp:
        return cls([(base.unit_lambda, Poly.constant(c))])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def as_dict(self) -> dict[GaussianRational, Poly]:
        return dict(self.terms)

    def lambdas(self) -> list[GaussianRational]:
        return [lam for lam, _ in self.terms]

    def poly_at(self, lam) -> Poly:
        lam = as_scalar(lam)
        for key, p in self.terms:
            if key == lam:
                return p
        return Poly()

    def component(self, lam) -> PolyExp:
        lam = as_scalar(lam)
        return PolyExp([(lam, self.poly_at(lam))])

    def atoms(self) -> list[tuple[GaussianRational, int]]:
        """Every ``(lam, j)`` whose coefficient is nonzero."""
        return [(lam, j) for lam, p in self.terms for j, c in enumerate(p.coeffs) if c]

    def coefficient(self, lam, j: int) -> GaussianRational:
        return self.poly_at(lam)[j]

    def __eq__(self, other):
        if not isinstance(other, PolyExp):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        if not isinstance(other, PolyExp):
            return NotImplemented
        return PolyExp(self.terms + other.terms)

    def __neg__(self):
        return PolyExp((lam, -p) for lam, p in self.terms)

    def __sub__(self, other):
        if not isinstance(other, PolyExp):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> PolyExp:
        c = as_scalar(c)
        return PolyExp((lam, p.scale(c)) for lam, p in self.terms)

    def __mul__(self, c):
        if isinstance(c, (int, GaussianRational)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def multiply(self, other: PolyExp, base: OperatorBase) -> PolyExp:
        """Pointwise product; exponential bases multiply (shift) or add (derivative)."""
        combine = (lambda a, b: a * b) if base is OperatorBase.SHIFT else (lambda a, b: a + b)
        return PolyExp(
            (combine(la, lb), pa * pb) for la, pa in self.terms for lb, pb in other.terms
        )

    def __repr__(self):
        body = ", ".join(f"{lam}: {p!r}" for lam, p in self.terms)
        return f"PolyExp({{{body}}})"

    def format(self, base: OperatorBase) -> str:
        from .parser import format_polyexp

        return format_polyexp(self, base)


def canonicalize(raw_terms: Iterable[tuple]) -> PolyExp:
    """Merge equal exponential bases, drop zero polynomials, sort."""
    return PolyExp(raw_terms)


def atom(lam, j: int, c=ONE) -> PolyExp:
    """The single term ``c * var**j * E_lam``."""
    return PolyExp([(as_scalar(lam), Poly.monomial(j, c))])


def apply_shift(f: PolyExp) -> PolyExp:
    """``(S y)_n = y_{n+1}``: ``lam**n p(n)`` maps to ``lam**n * lam * p(n+1)``."""
    return PolyExp((lam, p.substitute_shift(1).scale(lam)) for lam, p in f.terms)


def apply_derivative(f: PolyExp) -> PolyExp:
    """``D(exp(lam t) p)`` is ``exp(lam t) (lam p + p')``."""
    return PolyExp((lam, p.scale(lam) + p.derivative()) for lam, p in f.terms)


def apply_base(f: PolyExp, base: OperatorBase) -> PolyExp:
    if base is OperatorBase.SHIFT:
        return apply_shift(f)
    return apply_derivative(f)


@dataclass(frozen=True)
class OperatorSpec:
    """A constant-coefficient operator ``q(S)`` or ``q(D)``.

    ``factored`` lists ``(root, multiplicity)`` pairs; when present,
    ``expanded == lead * prod((x - root)**mult)`` holds exactly.
    """

    base: OperatorBase
    expanded: Poly
    factored: tuple[tuple[GaussianRational, int], ...] | None = None
    lead: GaussianRational = field(default=ONE)

    def __post_init__(self):
        object.__setattr__(self, "base", OperatorBase.parse(self.base))
        if self.expanded.is_zero():
            raise ZeroLeadError("operator polynomial must be nonzero")
        if self.factored is not None:
            factored = tuple((as_scalar(r), int(m)) for r, m in self.factored)
            object.__setattr__(self, "factored", factored)
            object.__setattr__(self, "lead", as_scalar(self.lead))
            if from_factored(factored, self.lead) != self.expanded:
                raise RootsMismatchError("factored form does not expand to the operator polynomial")
        else:
            object.__setattr__(self, "lead", self.expanded.leading())

    @classmethod
    def from_factored(cls, base, factors: Sequence[tuple], lead=ONE) -> OperatorSpec:
        factors = tuple((as_scalar(r), int(m)) for r, m in factors)
        return cls(OperatorBase.parse(base), from_factored(factors, lead), factors, as_scalar(lead))

    @classmethod
    def from_coefficients(cls, base, coeffs: Sequence) -> OperatorSpec:
        return cls(OperatorBase.parse(base), Poly(coeffs))

    @classmethod
    def power_of_root(cls, base, lam, k: int) -> OperatorSpec:
        """``(Op - lam I)**k``; ``k == 0`` gives the identity."""
        if k == 0:
            return cls(OperatorBase.parse(base), Poly.constant(ONE), (), ONE)
        return cls.from_factored(base, [(lam, k)])

    @property
    def order(self) -> int:
        return self.expanded.degree

    def multiplicity(self, lam) -> int | None:
        """Multiplicity of ``lam`` as a root, or ``None`` if not decidable.

        Without a factored form only non-roots can be certified (by exact
        evaluation); a root of unknown multiplicity returns ``None``.
        """
        lam = as_scalar(lam)
        if self.factored is not None:
            for root, mult in self.factored:
                if root == lam:
                    return mult
            return 0
        if self.expanded.eval(lam):
            return 0
        return None


def apply_operator(op: OperatorSpec, f: PolyExp) -> PolyExp:
    """``q(Op) f`` by Horner's rule in the base operator."""
    coeffs = op.expanded.coeffs
    if not coeffs:
        return PolyExp()
    acc = f.scale(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = apply_base(acc, op.base) + f.scale(c)
    return acc


def alpha_coeffs(k: int, r: int, lam, base) -> list[GaussianRational]:
    """Coefficients of ``(Op - lam I)**k`` applied to the degree-``r`` atom.

    Entry ``j`` (for ``j = 0 .. r-k``) multiplies the degree-``j`` atom with
    the same exponential base.  Computed from closed forms, independently
    of :func:`apply_operator`:

    * shift: ``lam**k * C(r, j) * sum_i C(k, i) (-1)**(k-i) i**(r-j)``
    * derivative: only the top entry is nonzero, ``r! / (r-k)!``
    """
    base = OperatorBase.parse(base)
    lam = as_scalar(lam)
    if k < 0 or r < 0:
        raise IndexError("k and r must be nonnegative")
    if k > r:
        raise IndexError(f"k={k} exceeds r={r}; the image is zero")
    if base is OperatorBase.SHIFT:
        if not lam:
            raise ShiftZeroLambdaError("alpha coefficients need lam != 0 for the shift operator")
        lam_k = lam ** k
        out = []
        for j in range(r - k + 1):
            s = sum(comb(k, i) * (-1) ** (k - i) * i ** (r - j) for i in range(k + 1))
            out.append(lam_k * (comb(r, j) * s))
        return out
    out = [ZERO] * (r - k + 1)
    out[-1] = GaussianRational(factorial(r) // factorial(r - k))
    return out


def kernel_basis(lam, m: int, base) -> list[PolyExp]:
    """Atoms ``var**j * E_lam`` for ``j < m``, spanning ``ker (Op - lam I)**m``."""
    base = OperatorBase.parse(base)
    lam = as_scalar(lam)
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    if base is OperatorBase.SHIFT and not lam:
        raise ShiftZeroLambdaError(
            "ker S**m is not spanned by 0**n p(n); lam = 0 is rejected for sequences"
        )
    return [atom(lam, j) for j in range(m)]


def eval_numeric(f: PolyExp, x, base) -> complex:
    """Floating-point value at ``n = x`` (shift) or ``t = x`` (derivative)."""
    base = OperatorBase.parse(base)
    if base is OperatorBase.SHIFT:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise ValueError("sequences are evaluated at nonnegative integers")
        total = 0j
        for lam, p in f.terms:
            total += complex(lam) ** x * p.eval_float(x)
        return total
    x = complex(x)
    total = 0j
    for lam, p in f.terms:
        total += cmath.exp(complex(lam) * x) * p.eval_float(x)
    return total


def eval_exact_sequence(f: PolyExp, n: int) -> GaussianRational:
    """Exact ``sum lam**n p(n)`` with ``0**0 == 1``."""
    if n < 0:
        raise ValueError("sequence index must be nonnegative")
    total = ZERO
    for lam, p in f.terms:
        total = total + lam ** n * p.eval(n)
    return total


def eval_exact_function_at_zero(f: PolyExp) -> GaussianRational:
    """Exact value at ``t = 0``, where every exponential equals 1."""
    total = ZERO
    for _, p in f.terms:
        total = total + p[0]
    return total
