import random

import pytest

from helpers import BASES, jordan_matrix, rand_distinct_nonzero, rand_polyexp, unimodular
from invspace.errors import (
    InvalidMinPolyError,
    MembershipError,
    NotInvariantError,
    ShiftZeroLambdaError,
    ZeroSpaceError,
)
from invspace.linalg import Matrix, rank
from invspace.poly import Poly, from_factored
from invspace.polyexp import OperatorBase, OperatorSpec, PolyExp, apply_base, apply_operator, kernel_basis
from invspace.scalar import GaussianRational as G
from invspace.structure import (
    bezout_projectors,
    closure,
    decompose,
    is_invariant,
    make_subspace,
    operator_matrix,
    primary_decompose_matrix,
    project_component,
    structural_min_poly,
    invariance_report,
)

SHIFT, DERIV = OperatorBase.SHIFT, OperatorBase.DERIVATIVE
X = Poly([0, 1])


def pe(d):
    return PolyExp({k: Poly(v) if isinstance(v, list) else Poly([v]) for k, v in d.items()})


TWO_N = pe({2: 1})
N_TWO_N = pe({2: [0, 1]})
THREE_N = pe({3: 1})


def test_make_subspace_examples():
    assert make_subspace([TWO_N, TWO_N.scale(2)], SHIFT).dim == 1
    assert make_subspace([TWO_N, N_TWO_N, THREE_N], SHIFT).dim == 3
    assert make_subspace([], SHIFT).dim == 0
    with pytest.raises(ShiftZeroLambdaError):
        make_subspace([pe({0: 1})], SHIFT)


def test_closure_examples():
    V = closure([N_TWO_N], SHIFT)
    assert V.dim == 2 and V.same_span(make_subspace(kernel_basis(2, 2, SHIFT), SHIFT))
    assert closure([pe({1: 1})], DERIV).dim == 1
    lam = G(-1, 2)
    W = closure([pe({lam: [0, 0, 1]})], DERIV)
    assert W.dim == 3 and W.same_span(make_subspace(kernel_basis(lam, 3, DERIV), DERIV))


def test_is_invariant_examples():
    assert is_invariant(make_subspace([TWO_N, N_TWO_N], SHIFT))
    assert not is_invariant(make_subspace([N_TWO_N], SHIFT))
    assert is_invariant(make_subspace([], SHIFT))


def test_structural_min_poly_examples():
    assert structural_min_poly(make_subspace(kernel_basis(2, 2, SHIFT), SHIFT)) == [(2, 2)]
    assert structural_min_poly(make_subspace([THREE_N], SHIFT)) == [(3, 1)]
    V = make_subspace(kernel_basis(2, 1, SHIFT) + kernel_basis(3, 2, SHIFT), SHIFT)
    assert structural_min_poly(V) == [(2, 1), (3, 2)]
    with pytest.raises(NotInvariantError):
        structural_min_poly(make_subspace([N_TWO_N], SHIFT))
    with pytest.raises(ZeroSpaceError):
        structural_min_poly(make_subspace([], SHIFT))


def test_bezout_projector_examples():
    assert bezout_projectors([(1, 1), (2, 1)]) == [-(X - 2), X - 1]
    assert bezout_projectors([(G(2, 3), 1)]) == [Poly([1])]
    pis = bezout_projectors([(0, 2), (1, 1)])
    p = from_factored([(0, 2), (1, 1)])
    assert (sum(pis, Poly()) - 1) % p == Poly()


def test_project_component_examples():
    V = make_subspace([TWO_N, THREE_N], SHIFT)
    v = TWO_N + THREE_N
    assert project_component(v, V, 0) == TWO_N
    assert project_component(v, V, 1) == THREE_N
    W = make_subspace(kernel_basis(2, 2, SHIFT), SHIFT)
    assert project_component(N_TWO_N, W, 0) == N_TWO_N
    assert project_component(PolyExp(), V, 0) == PolyExp()
    with pytest.raises(MembershipError):
        project_component(N_TWO_N, V, 0)


def test_decompose_examples():
    dec = decompose(make_subspace([TWO_N, N_TWO_N, THREE_N], SHIFT))
    assert dec.multiset == [(2, 2), (3, 1)] and dec.is_full
    dec = decompose(make_subspace([pe({5: 1})], SHIFT))
    assert dec.multiset == [(5, 1)] and dec.is_full
    half = G(1) / 2
    dec = decompose(closure([pe({half: [0, 0, 1]})], SHIFT))
    assert dec.multiset == [(half, 3)] and dec.is_full
    with pytest.raises(NotInvariantError):
        decompose(make_subspace([N_TWO_N], SHIFT))
    assert decompose(make_subspace([], DERIV)).components == ()


def test_invariance_report_examples():
    rep = invariance_report([TWO_N, THREE_N], SHIFT)
    assert rep.invariant and rep.decomposition.multiset == [(2, 1), (3, 1)]
    rep = invariance_report([N_TWO_N], SHIFT)
    assert not rep.invariant
    assert rep.witness == N_TWO_N and rep.witness_image == pe({2: [2, 2]})
    assert rep.witness_image not in rep.span
    assert rep.decomposition.multiset == [(2, 2)]
    rep = invariance_report([], SHIFT)
    assert rep.invariant and rep.decomposition.components == ()


def _random_invariant(rng, base):
    s = rng.randint(1, 3)
    lams = rand_distinct_nonzero(rng, s)
    ls = [rng.randint(1, 3) for _ in lams]
    gens = [b for lam, l in zip(lams, ls) for b in kernel_basis(lam, l, base)]
    return make_subspace(gens, base), sorted(zip(lams, ls), key=lambda f: f[0].sort_key())


def test_projector_properties():
    rng = random.Random(21)
    for _ in range(12):
        base = rng.choice(BASES)
        V, factored = _random_invariant(rng, base)
        for b in V.basis:
            parts = [project_component(b, V, i) for i in range(len(factored))]
            assert sum(parts, PolyExp()) == b
            for i, (lam, l) in enumerate(factored):
                again = project_component(parts[i], V, i)
                assert again == parts[i]
                killer = OperatorSpec.power_of_root(base, lam, l)
                assert apply_operator(killer, parts[i]).is_zero()
        # the top-degree element of each block needs the full exponent
        for i, (lam, l) in enumerate(factored):
            top = kernel_basis(lam, l, base)[-1]
            low = OperatorSpec.power_of_root(base, lam, l - 1)
            assert not apply_operator(low, project_component(top, V, i)).is_zero()


def test_matrix_route_agrees_with_structural_route():
    rng = random.Random(22)
    for _ in range(10):
        base = rng.choice(BASES)
        gens = [rand_polyexp(rng, rand_distinct_nonzero(rng, rng.randint(1, 2)), max_degree=2)]
        V = closure(gens, base)
        dec = decompose(V)
        A = operator_matrix(V)
        comps = primary_decompose_matrix(A, structural_min_poly(V))
        assert [len(b) for _, b in comps] == [len(c.basis) for c in dec.components]


def test_primary_decompose_matrix_examples():
    comps = primary_decompose_matrix(Matrix.diagonal([2, 3]), [(2, 1), (3, 1)])
    assert [(lam, [tuple(v) for v in b]) for lam, b in comps] == [
        (2, [(G(1), G(0))]), (3, [(G(0), G(1))])
    ]
    comps = primary_decompose_matrix(jordan_matrix([(3, 2)]), [(3, 2)])
    assert len(comps) == 1 and len(comps[0][1]) == 2
    P, Q = unimodular(random.Random(9), 3)
    A = P @ jordan_matrix([(1, 2), (2, 1)]) @ Q
    comps = primary_decompose_matrix(A, [(1, 2), (2, 1)])
    assert [len(b) for _, b in comps] == [2, 1]
    assert rank(Matrix.from_columns([v for _, b in comps for v in b])) == 3
    with pytest.raises(InvalidMinPolyError):
        primary_decompose_matrix(A, [(1, 1), (2, 1)])


def test_removing_lowest_degree_breaks_invariance():
    rng = random.Random(23)
    for _ in range(10):
        base = rng.choice(BASES)
        lam = rand_distinct_nonzero(rng, 1)[0]
        m = rng.randint(2, 4)
        V = make_subspace(kernel_basis(lam, m, base)[1:], base)
        assert not is_invariant(V)
        assert any(apply_base(b, base) not in V for b in V.basis)
