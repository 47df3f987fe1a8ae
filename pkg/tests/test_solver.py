import random

import pytest

from helpers import rand_distinct_nonzero, rand_nonzero, rand_poly
from invspace.errors import ShiftZeroLambdaError, UnfactoredOperatorError, WrongCountError
from invspace.poly import Poly
from invspace.polyexp import OperatorBase, OperatorSpec, PolyExp, apply_operator, eval_exact_sequence
from invspace.scalar import GaussianRational as G
from invspace.solver import (
    general_solution,
    homogeneous_basis,
    iterate_recurrence,
    particular_solution,
    solve_ivp,
    verify_residual,
)

SHIFT, DERIV = OperatorBase.SHIFT, OperatorBase.DERIVATIVE


def pe(d):
    return PolyExp({k: Poly(v) if isinstance(v, list) else Poly([v]) for k, v in d.items()})


ODE = OperatorSpec.from_factored(DERIV, [(1, 1), (2, 1)])      # y'' - 3y' + 2y
REC = OperatorSpec.from_factored(SHIFT, [(2, 1), (3, 1)])      # y[n+2] - 5y[n+1] + 6y[n]


def test_homogeneous_basis_examples():
    assert homogeneous_basis(ODE) == [pe({1: 1}), pe({2: 1})]
    assert homogeneous_basis(OperatorSpec.from_factored(SHIFT, [(2, 2)])) == [pe({2: 1}), pe({2: [0, 1]})]
    lam = G(1, -3)
    assert homogeneous_basis(OperatorSpec.from_factored(DERIV, [(lam, 3)])) == [
        pe({lam: 1}), pe({lam: [0, 1]}), pe({lam: [0, 0, 1]})
    ]
    with pytest.raises(UnfactoredOperatorError):
        homogeneous_basis(OperatorSpec.from_coefficients(SHIFT, [-1, -1, 1]))
    with pytest.raises(ShiftZeroLambdaError):
        homogeneous_basis(OperatorSpec.from_factored(SHIFT, [(0, 1)]))


def test_particular_solution_examples():
    assert particular_solution(ODE, pe({1: 1})) == pe({1: [0, -1]})
    y = particular_solution(REC, pe({2: 1}))
    assert y == pe({2: [0, G(-1) / 2]})
    ys = [eval_exact_sequence(y, n) for n in range(8)]
    for n in range(6):
        assert ys[n + 2] - 5 * ys[n + 1] + 6 * ys[n] == 2 ** n
    assert particular_solution(ODE, PolyExp()) == PolyExp()


def test_general_solution_examples():
    gen = general_solution(ODE, pe({1: 1}))
    assert gen.particular == pe({1: [0, -1]})
    assert gen.homogeneous_basis == (pe({1: 1}), pe({2: 1}))
    gen = general_solution(OperatorSpec.from_factored(SHIFT, [(2, 1)]), PolyExp())
    assert gen.particular == PolyExp() and gen.homogeneous_basis == (pe({2: 1}),)
    gen = general_solution(REC, pe({1: [0, 1]}))
    p = gen.particular
    assert p.lambdas() == [G(1)] and p.poly_at(1).degree == 1
    # iteration oracle: y_{n+2} - 5 y_{n+1} + 6 y_n == n
    ys = [eval_exact_sequence(p, n) for n in range(13)]
    assert all(ys[n + 2] - 5 * ys[n + 1] + 6 * ys[n] == n for n in range(11))


def test_solve_ivp_examples():
    y = solve_ivp(REC, PolyExp(), [1, 2])
    assert y == pe({2: 1})
    assert [eval_exact_sequence(y, n) for n in range(11)] == iterate_recurrence(REC, PolyExp(), [1, 2], 11)
    y = solve_ivp(OperatorSpec.from_factored(DERIV, [(1, 1)]), PolyExp(), [1])
    assert y == pe({1: 1})
    y = solve_ivp(ODE, pe({1: 1}), [0, 0])
    # -t e^t + c1 e^t + c2 e^2t with c1 + c2 = 0, -1 + c1 + 2 c2 = 0
    assert y == pe({1: [-1, -1], 2: 1})
    assert verify_residual(ODE, y, pe({1: 1}))
    with pytest.raises(WrongCountError):
        solve_ivp(ODE, PolyExp(), [1])


def test_verify_residual_examples():
    rhs = pe({G(1, 1): [1, 2]})
    assert verify_residual(ODE, particular_solution(ODE, rhs), rhs)
    assert not verify_residual(OperatorSpec.from_factored(DERIV, [(1, 1)]), pe({1: 1}), pe({1: 1}))
    assert verify_residual(OperatorSpec.from_factored(SHIFT, [(2, 1)]), pe({2: [0, 1]}), pe({2: 2}))


def test_unfactored_operator_without_resonance():
    fib = OperatorSpec.from_coefficients(SHIFT, [-1, -1, 1])
    rhs = pe({2: [0, 1]})
    y = particular_solution(fib, rhs)
    assert verify_residual(fib, y, rhs)
    # resonance cannot be decided without roots
    with pytest.raises(UnfactoredOperatorError):
        particular_solution(OperatorSpec.from_coefficients(SHIFT, [6, -5, 1]), pe({2: 1}))


def test_resonance_degree_law():
    rng = random.Random(31)
    for _ in range(30):
        base = rng.choice((SHIFT, DERIV))
        roots = rand_distinct_nonzero(rng, rng.randint(1, 3))
        factored = [(r, rng.randint(1, 2)) for r in roots]
        op = OperatorSpec.from_factored(base, factored, lead=rand_nonzero(rng))
        lam, m = rng.choice(factored)
        d = rng.randint(0, 3)
        rhs = PolyExp([(lam, rand_poly(rng, d))])
        y = particular_solution(op, rhs)
        p = y.poly_at(lam)
        assert p.degree == d + m
        assert all(p[j] == 0 for j in range(m))
        assert apply_operator(op, y) == rhs


def test_recurrence_ivp_matches_iteration():
    rng = random.Random(32)
    for _ in range(10):
        roots = rand_distinct_nonzero(rng, rng.randint(1, 3))
        op = OperatorSpec.from_factored(SHIFT, [(r, rng.randint(1, 2)) for r in roots])
        rhs = PolyExp([(rand_nonzero(rng), rand_poly(rng, rng.randint(0, 2)))])
        init = [rand_nonzero(rng) for _ in range(op.order)]
        y = solve_ivp(op, rhs, init)
        assert [eval_exact_sequence(y, n) for n in range(26)] == iterate_recurrence(op, rhs, init, 26)
