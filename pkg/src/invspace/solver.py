"""Constant-coefficient linear recurrences and ODEs with polynomial-exponential
right-hand sides, solved exactly by undetermined coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    ShiftZeroLambdaError,
    SingularSystemError,
    UnfactoredOperatorError,
    UnsolvableSystemError,
    WrongCountError,
)
from .linalg import Matrix, rank, solve
from .polyexp import (
    OperatorBase,
    OperatorSpec,
    PolyExp,
    apply_derivative,
    apply_operator,
    atom,
    eval_exact_function_at_zero,
    eval_exact_sequence,
    kernel_basis,
)
from .scalar import as_scalar

__all__ = [
    "GeneralSolution",
    "homogeneous_basis",
    "particular_solution",
    "general_solution",
    "solve_ivp",
    "verify_residual",
    "iterate_recurrence",
]


@dataclass(frozen=True)
class GeneralSolution:
    particular: PolyExp
    homogeneous_basis: tuple[PolyExp, ...]
    base: OperatorBase


def verify_residual(op: OperatorSpec, candidate: PolyExp, rhs: PolyExp) -> bool:
    """Exact substitution check ``q(Op) candidate == rhs``."""
    return (apply_operator(op, candidate) - rhs).is_zero()


def homogeneous_basis(op: OperatorSpec) -> list[PolyExp]:
    if op.factored is None:
        raise UnfactoredOperatorError(
            "the homogeneous basis needs the operator's roots; supply a factored form"
        )
    basis = []
    for lam, mult in op.factored:
        basis.extend(kernel_basis(lam, mult, op.base))
    return basis


def _component_solution(op: OperatorSpec, lam, rhs_poly, mult: int) -> PolyExp:
    d = rhs_poly.degree
    top = d + mult
    # unknowns: coefficients of var**j E_lam for j = mult .. top
    columns = []
    for j in range(mult, top + 1):
        image = apply_operator(op, atom(lam, j)).poly_at(lam)
        columns.append(tuple(image[k] for k in range(top + 1)))
    A = Matrix.from_columns(columns)
    b = tuple(rhs_poly[k] for k in range(top + 1))
    if rank(A) != len(columns):
        raise UnsolvableSystemError(f"undetermined-coefficient system for lam={lam} is rank deficient")
    x = solve(A, b)
    if x is None:
        raise UnsolvableSystemError(f"undetermined-coefficient system for lam={lam} is inconsistent")
    return PolyExp([(lam, [0] * mult + list(x))])


def particular_solution(op: OperatorSpec, rhs: PolyExp) -> PolyExp:
    """A solution ``y`` of ``q(Op) y == rhs``.

    Each exponential component of degree ``d`` whose base is a root of
    multiplicity ``m`` gets an ansatz of degree ``d + m`` with its ``m``
    lowest coefficients fixed at zero.
    """
    y = PolyExp()
    for lam, p in rhs.terms:
        if op.base is OperatorBase.SHIFT and not lam:
            raise ShiftZeroLambdaError("right-hand side contains a 0**n term")
        mult = op.multiplicity(lam)
        if mult is None:
            raise UnfactoredOperatorError(
                f"{lam} is a root of the operator polynomial; its multiplicity needs the factored form"
            )
        y = y + _component_solution(op, lam, p, mult)
    if not verify_residual(op, y, rhs):
        raise UnsolvableSystemError("particular solution failed the substitution check")
    return y


def general_solution(op: OperatorSpec, rhs: PolyExp) -> GeneralSolution:
    particular = particular_solution(op, rhs)
    basis = homogeneous_basis(op)
    if len(basis) != op.order:
        raise AssertionError("homogeneous basis size differs from the operator order")
    if any(apply_operator(op, h) for h in basis):
        raise AssertionError("homogeneous basis element is not annihilated")
    return GeneralSolution(particular, tuple(basis), op.base)


def _initial_data(f: PolyExp, count: int, base: OperatorBase) -> list:
    """``f(0..count-1)`` for sequences, ``f(0), f'(0), ...`` for functions."""
    if base is OperatorBase.SHIFT:
        return [eval_exact_sequence(f, n) for n in range(count)]
    out = []
    g = f
    for _ in range(count):
        out.append(eval_exact_function_at_zero(g))
        g = apply_derivative(g)
    return out


def solve_ivp(op: OperatorSpec, rhs: PolyExp, initial: Sequence) -> PolyExp:
    """The unique solution matching the initial data exactly.

    For sequences ``initial`` is ``y_0 .. y_{k-1}``; for functions it is
    ``y(0), y'(0), .. , y^(k-1)(0)``, with ``k`` the operator order.
    """
    initial = [as_scalar(v) for v in initial]
    k = op.order
    if len(initial) != k:
        raise WrongCountError(f"expected {k} initial values, got {len(initial)}")
    sol = general_solution(op, rhs)
    target = [a - b for a, b in zip(initial, _initial_data(sol.particular, k, op.base))]
    columns = [tuple(_initial_data(h, k, op.base)) for h in sol.homogeneous_basis]
    y = sol.particular
    if k:
        A = Matrix.from_columns(columns)
        if rank(A) != k:
            raise SingularSystemError("initial-value matrix of the homogeneous basis is singular")
        consts = solve(A, target)
        for c, h in zip(consts, sol.homogeneous_basis):
            y = y + h.scale(c)
    if not verify_residual(op, y, rhs):
        raise UnsolvableSystemError("initial-value solution failed the substitution check")
    if _initial_data(y, k, op.base) != initial:
        raise AssertionError("initial-value solution does not reproduce the initial data")
    return y


def iterate_recurrence(op: OperatorSpec, rhs: PolyExp, initial: Sequence, count: int) -> list:
    """Terms ``y_0 .. y_{count-1}`` by stepping the recurrence forward exactly."""
    if op.base is not OperatorBase.SHIFT:
        raise ValueError("only recurrences can be iterated")
    coeffs = op.expanded.coeffs
    k = len(coeffs) - 1
    ys = [as_scalar(v) for v in initial]
    if len(ys) != k:
        raise WrongCountError(f"expected {k} initial values, got {len(ys)}")
    lead_inv = coeffs[-1].inverse()
    while len(ys) < count:
        n = len(ys) - k
        acc = eval_exact_sequence(rhs, n)
        for j in range(k):
            acc = acc - coeffs[j] * ys[n + j]
        ys.append(acc * lead_inv)
    return ys[:count]
