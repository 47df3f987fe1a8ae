"""Invariant subspaces of polynomial-exponential expressions.

A finite-dimensional space of sequences (or functions) is invariant under
every constant-coefficient difference (or differential) operator exactly
when it is a direct sum of full blocks ``{E_lam * p : deg p < l}``.  This
module builds such spaces, tests invariance, and splits them into those
blocks in two independent ways: from the exponential atoms directly, and
with Bezout projector polynomials applied to the operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import (
    DimensionMismatchError,
    DuplicateRootError,
    InvalidMinPolyError,
    MembershipError,
    NotInvariantError,
    ShiftZeroLambdaError,
    ZeroSpaceError,
)
from .linalg import Matrix, kernel_basis as matrix_kernel, poly_of_matrix, rank, row_reducer, rref
from .poly import Poly, bezout, from_factored
from .polyexp import (
    OperatorBase,
    OperatorSpec,
    PolyExp,
    apply_base,
    apply_operator,
    atom,
    kernel_basis,
)
from .scalar import ZERO, GaussianRational, as_scalar

__all__ = [
    "Subspace",
    "Component",
    "Decomposition",
    "InvarianceReport",
    "make_subspace",
    "closure",
    "is_invariant",
    "invariance_witness",
    "structural_min_poly",
    "bezout_projectors",
    "project_component",
    "decompose",
    "invariance_report",
    "operator_matrix",
    "primary_decompose_matrix",
]

Atom = tuple  # (lam, degree)


def _atom_key(a: Atom):
    return (a[0].sort_key(), a[1])


def _frame_of(elements: Sequence[PolyExp]) -> tuple[Atom, ...]:
    atoms = {a for f in elements for a in f.atoms()}
    return tuple(sorted(atoms, key=_atom_key))


def _coords(f: PolyExp, frame: Sequence[Atom], index: dict | None = None):
    """Coordinates of ``f`` in ``frame``, or ``None`` if ``f`` leaves it."""
    index = index if index is not None else {a: k for k, a in enumerate(frame)}
    out = [ZERO] * len(frame)
    for lam, p in f.terms:
        for j, c in enumerate(p.coeffs):
            if not c:
                continue
            k = index.get((lam, j))
            if k is None:
                return None
            out[k] = c
    return tuple(out)


def _check_shift_lambdas(elements: Sequence[PolyExp], base: OperatorBase):
    if base is OperatorBase.SHIFT:
        for f in elements:
            if any(not lam for lam in f.lambdas()):
                raise ShiftZeroLambdaError(
                    "sequence generator contains a 0**n term; lam = 0 is rejected for the shift operator"
                )


class Subspace:
    """Span of linearly independent polynomial-exponential expressions.

    ``frame`` is the sorted list of ``(lam, j)`` atoms touched by the
    basis and ``matrix`` holds the basis coordinates as columns.
    """

    def __init__(self, base, basis: Sequence[PolyExp]):
        self.base = OperatorBase.parse(base)
        self.basis = tuple(basis)
        self.frame = _frame_of(self.basis)
        self._index = {a: k for k, a in enumerate(self.frame)}
        columns = [_coords(b, self.frame, self._index) for b in self.basis]
        self.matrix = Matrix.from_columns(columns, nrows=len(self.frame))
        self._reducer = row_reducer(self.matrix)
        if self._reducer is None:
            raise ValueError("basis elements are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"Subspace({self.base.value}, dim={self.dim})"

    def coordinates(self, v: PolyExp) -> tuple | None:
        """Coordinates of ``v`` in the basis, or ``None`` if ``v`` is outside."""
        frame_coords = _coords(v, self.frame, self._index)
        if frame_coords is None:
            return None
        reduced = self._reducer.apply(frame_coords)
        if any(reduced[self.dim:]):
            return None
        return reduced[: self.dim]

    def __contains__(self, v: PolyExp) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: Subspace) -> bool:
        return all(b in self for b in other.basis)

    def same_span(self, other: Subspace) -> bool:
        return self.dim == other.dim and self.contains_subspace(other)

    @cached_property
    def witness(self) -> PolyExp | None:
        """First basis element whose image leaves the span, if any."""
        for b in self.basis:
            if apply_base(b, self.base) not in self:
                return b
        return None

    @cached_property
    def min_poly_factored(self) -> tuple[tuple[GaussianRational, int], ...]:
        return tuple(structural_min_poly(self))

    @cached_property
    def projectors(self) -> tuple[Poly, ...]:
        return tuple(bezout_projectors(self.min_poly_factored))


def make_subspace(generators: Sequence[PolyExp], base) -> Subspace:
    """Span of ``generators``; the basis is the maximal independent prefix set."""
    base = OperatorBase.parse(base)
    generators = list(generators)
    _check_shift_lambdas(generators, base)
    frame = _frame_of(generators)
    index = {a: k for k, a in enumerate(frame)}
    columns = [_coords(g, frame, index) for g in generators]
    if not columns:
        return Subspace(base, [])
    _, pivots = rref(Matrix.from_columns(columns, nrows=len(frame)))
    return Subspace(base, [generators[c] for c in pivots])


def closure(generators: Sequence[PolyExp], base) -> Subspace:
    """Smallest operator-invariant subspace containing ``generators``."""
    base = OperatorBase.parse(base)
    generators = list(generators)
    _check_shift_lambdas(generators, base)
    basis: list[PolyExp] = []
    pending = list(reversed(generators))
    while pending:
        v = pending.pop()
        if v.is_zero():
            continue
        candidate = basis + [v]
        frame = _frame_of(candidate)
        index = {a: k for k, a in enumerate(frame)}
        M = Matrix.from_columns([_coords(b, frame, index) for b in candidate])
        if rank(M) == len(candidate):
            basis.append(v)
            pending.append(apply_base(v, base))
    return Subspace(base, basis)


def is_invariant(V: Subspace) -> bool:
    """True iff the base operator maps every basis element back into ``V``."""
    return V.witness is None


def invariance_witness(V: Subspace) -> tuple[PolyExp, PolyExp] | None:
    """``(b, Op b)`` for a basis element ``b`` with ``Op b`` outside ``V``."""
    w = V.witness
    if w is None:
        return None
    return w, apply_base(w, V.base)


def _atom_block_operator(lam: GaussianRational, l: int, base: OperatorBase) -> Matrix:
    """Base operator on the atoms ``(lam, 0) .. (lam, l - 1)``, images as columns."""
    images = [apply_base(atom(lam, j), base).poly_at(lam) for j in range(l)]
    return Matrix.from_columns([[q[k] for k in range(l)] for q in images], nrows=l)


def _family_coords(f: PolyExp, lam: GaussianRational, l: int) -> list[GaussianRational]:
    q = f.poly_at(lam)
    return [q[j] for j in range(l)]


def structural_min_poly(V: Subspace) -> list[tuple[GaussianRational, int]]:
    """Factored minimal polynomial of the base operator restricted to ``V``.

    Read off the atoms: each exponential base appears with multiplicity one
    more than its highest attached degree.  The result is checked to
    annihilate ``V`` and to be minimal in every exponent.
    """
    if V.dim == 0:
        raise ZeroSpaceError("the zero space has no nontrivial minimal polynomial")
    if not is_invariant(V):
        raise NotInvariantError("subspace is not invariant under the base operator")
    top: dict[GaussianRational, int] = {}
    for lam, j in V.frame:
        top[lam] = max(top.get(lam, -1), j)
    factored = sorted(((lam, j + 1) for lam, j in top.items()), key=lambda f: f[0].sort_key())

    # the operator preserves each lam family of atoms, so both checks run
    # exactly on the small triangular blocks it induces there
    blocks = [_atom_block_operator(lam, l, V.base) for lam, l in factored]
    q = from_factored(factored)
    if any(not poly_of_matrix(q, F).is_zero() for F in blocks):
        raise AssertionError("structural minimal polynomial fails to annihilate the space")
    for i, (lam, l) in enumerate(factored):
        lowered = [(mu, m - (k == i)) for k, (mu, m) in enumerate(factored) if m - (k == i)]
        Q = poly_of_matrix(from_factored(lowered), blocks[i])
        if not any(any(Q.apply(_family_coords(b, lam, l))) for b in V.basis):
            raise AssertionError("structural minimal polynomial is not minimal")
    return factored


def bezout_projectors(factored: Sequence[tuple]) -> list[Poly]:
    """Polynomials ``pi_i = r_i * p_i mod p`` with ``sum(pi_i) == 1 mod p``.

    Here ``p = prod((x - lam_i)**l_i)``, ``p_i = p / (x - lam_i)**l_i`` and the
    ``r_i`` are Bezout cofactors of the coprime family ``p_i``.
    """
    factored = [(as_scalar(lam), int(l)) for lam, l in factored]
    lams = [lam for lam, _ in factored]
    if len(set(lams)) != len(lams):
        raise DuplicateRootError("roots of a factored minimal polynomial must be distinct")
    if not factored:
        return []
    p = from_factored(factored)
    parts = [from_factored([f for k, f in enumerate(factored) if k != i]) for i in range(len(factored))]
    cert = bezout(parts)
    return [(r * pi) % p for r, pi in zip(cert.cofactors, parts)]


def _apply_poly(q: Poly, v: PolyExp, base: OperatorBase) -> PolyExp:
    if q.is_zero():
        return PolyExp()
    return apply_operator(OperatorSpec(base, q), v)


def project_component(v: PolyExp, V: Subspace, i: int) -> PolyExp:
    """Image of ``v`` under the ``i``-th Bezout projector ``pi_i(Op)``."""
    if v.is_zero():
        return PolyExp()
    if v not in V:
        raise MembershipError("vector does not lie in the subspace")
    projectors = V.projectors
    if not 0 <= i < len(projectors):
        raise IndexError(f"component index {i} out of range 0..{len(projectors) - 1}")
    return _apply_poly(projectors[i], v, V.base)


@dataclass(frozen=True)
class Component:
    lam: GaussianRational
    multiplicity: int
    basis: tuple[PolyExp, ...]


@dataclass(frozen=True)
class Decomposition:
    """Primary components ``(lam_i, l_i, basis_i)`` sorted by ``lam_i``.

    ``is_full`` records that every full kernel block for ``(lam_i, l_i)``
    lies in the decomposed space.
    """

    components: tuple[Component, ...]
    is_full: bool
    base: OperatorBase

    @property
    def multiset(self) -> list[tuple[GaussianRational, int]]:
        return [(c.lam, c.multiplicity) for c in self.components]

    @property
    def dim(self) -> int:
        return sum(len(c.basis) for c in self.components)


def _independent(elements: Sequence[PolyExp]) -> list[PolyExp]:
    elements = [e for e in elements if not e.is_zero()]
    if not elements:
        return []
    frame = _frame_of(elements)
    index = {a: k for k, a in enumerate(frame)}
    _, pivots = rref(Matrix.from_columns([_coords(e, frame, index) for e in elements]))
    return [elements[c] for c in pivots]


def _rank_of(elements: Sequence[PolyExp]) -> int:
    return len(_independent(elements))


def decompose(V: Subspace) -> Decomposition:
    """Split an invariant ``V`` into its primary components via projectors.

    Each projector ``pi_i(Op)`` is evaluated on the small triangular block
    the operator induces on every ``lam_j`` family of atoms, then applied to
    the basis; the independent images span component ``i``.
    """
    if not is_invariant(V):
        raise NotInvariantError("cannot decompose a subspace that is not invariant")
    if V.dim == 0:
        return Decomposition((), True, V.base)
    factored = V.min_poly_factored
    blocks = [_atom_block_operator(lam, l, V.base) for lam, l in factored]
    components = []
    projected_sum = [PolyExp() for _ in V.basis]
    for (lam, l), pi in zip(factored, V.projectors):
        on_blocks = [poly_of_matrix(pi, F) for F in blocks]
        images = []
        for k, b in enumerate(V.basis):
            terms = []
            for (mu, size), P in zip(factored, on_blocks):
                terms.append((mu, Poly(P.apply(_family_coords(b, mu, size)))))
            image = PolyExp(terms)
            projected_sum[k] = projected_sum[k] + image
            images.append(image)
        components.append(Component(lam, l, tuple(_independent(images))))

    if any(total != b for total, b in zip(projected_sum, V.basis)):
        raise AssertionError("projections do not sum back to the basis")
    stacked = [b for c in components for b in c.basis]
    if len(stacked) != V.dim or _rank_of(stacked) != V.dim:
        raise AssertionError("primary components do not form a direct sum of V")
    is_full = all(
        k in V for lam, l in factored for k in kernel_basis(lam, l, V.base)
    )
    return Decomposition(tuple(components), is_full, V.base)


@dataclass(frozen=True)
class InvarianceReport:
    """Outcome of checking a span for invariance.

    When the span is not invariant, ``decomposition`` describes its closure
    and ``witness`` is a basis element whose image leaves the span.
    """

    invariant: bool
    span: Subspace
    decomposition: Decomposition
    closure: Subspace | None = None
    witness: PolyExp | None = None
    witness_image: PolyExp | None = None


def invariance_report(generators: Sequence[PolyExp], base) -> InvarianceReport:
    base = OperatorBase.parse(base)
    span = make_subspace(generators, base)
    found = invariance_witness(span)
    if found is None:
        return InvarianceReport(True, span, decompose(span))
    closed = closure(span.basis, base)
    return InvarianceReport(False, span, decompose(closed), closed, found[0], found[1])


def operator_matrix(V: Subspace) -> Matrix:
    """Matrix of the base operator restricted to an invariant ``V``."""
    columns = []
    for b in V.basis:
        coords = V.coordinates(apply_base(b, V.base))
        if coords is None:
            raise NotInvariantError("subspace is not invariant under the base operator")
        columns.append(coords)
    return Matrix.from_columns(columns, nrows=V.dim)


def primary_decompose_matrix(M: Matrix, factored_minpoly: Sequence[tuple]) -> list[tuple[GaussianRational, list]]:
    """Generalized eigenspaces ``ker (M - lam_i I)**l_i`` of ``M``.

    The factored polynomial must annihilate ``M``; the components are
    checked to span the whole space as a direct sum.
    """
    if not M.is_square():
        raise DimensionMismatchError("primary decomposition needs a square matrix")
    factored = [(as_scalar(lam), int(l)) for lam, l in factored_minpoly]
    lams = [lam for lam, _ in factored]
    if len(set(lams)) != len(lams):
        raise DuplicateRootError("roots of a factored minimal polynomial must be distinct")
    n = M.rows
    if n == 0:
        return [(lam, []) for lam in lams]
    if not poly_of_matrix(from_factored(factored), M).is_zero():
        raise InvalidMinPolyError("the factored polynomial does not annihilate the matrix")
    eye = Matrix.identity(n)
    out = []
    for lam, l in factored:
        shifted = M - eye.scale(lam)
        power = Matrix.identity(n)
        for _ in range(l):
            power = power @ shifted
        out.append((lam, matrix_kernel(power)))
    stacked = [v for _, basis in out for v in basis]
    if len(stacked) != n or rank(Matrix.from_columns(stacked)) != n:
        raise AssertionError("generalized eigenspaces do not form a direct sum")
    return out
