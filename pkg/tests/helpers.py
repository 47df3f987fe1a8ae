"""Random generators shared by the property and acceptance tests."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from invspace.linalg import Matrix
from invspace.poly import Poly
from invspace.polyexp import OperatorBase, PolyExp
from invspace.scalar import GaussianRational

BASES = (OperatorBase.SHIFT, OperatorBase.DERIVATIVE)


# -- hypothesis strategies ------------------------------------------------------

small_fractions = st.builds(
    Fraction, st.integers(min_value=-20, max_value=20), st.integers(min_value=1, max_value=12)
)
scalars = st.builds(GaussianRational, small_fractions, small_fractions)
nonzero_scalars = scalars.filter(bool)
polys = st.lists(scalars, max_size=5).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def polyexps(lambdas=scalars, max_terms=3):
    return st.lists(st.tuples(lambdas, polys), max_size=max_terms).map(PolyExp)


# -- seeded generators (acceptance) -------------------------------------------


def rand_scalar(rng: random.Random, num=4, den=3, complex_prob=0.3) -> GaussianRational:
    re = Fraction(rng.randint(-num, num), rng.randint(1, den))
    im = Fraction(rng.randint(-num, num), rng.randint(1, den)) if rng.random() < complex_prob else 0
    return GaussianRational(re, im)


def rand_nonzero(rng: random.Random, **kw) -> GaussianRational:
    while True:
        z = rand_scalar(rng, **kw)
        if z:
            return z


def rand_distinct_nonzero(rng: random.Random, count: int, **kw) -> list[GaussianRational]:
    out: list[GaussianRational] = []
    while len(out) < count:
        z = rand_nonzero(rng, **kw)
        if z not in out:
            out.append(z)
    return out


def rand_poly(rng: random.Random, degree: int, **kw) -> Poly:
    coeffs = [rand_scalar(rng, **kw) for _ in range(degree)] + [rand_nonzero(rng, **kw)]
    return Poly(coeffs)


def rand_polyexp(rng: random.Random, lambdas, max_degree=3, **kw) -> PolyExp:
    return PolyExp((lam, rand_poly(rng, rng.randint(0, max_degree), **kw)) for lam in lambdas)


def unimodular(rng: random.Random, n: int, steps: int = 12) -> tuple[Matrix, Matrix]:
    """Random integer matrix with integer inverse, as ``(P, P^-1)``."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # P <- E P with E = I + c e_i e_j^T ; Q <- Q E^-1
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for row in Q:
            row[j] -= c * row[i]
    return Matrix.from_rows(P), Matrix.from_rows(Q)


def jordan_matrix(blocks) -> Matrix:
    """Block-diagonal Jordan form from ``(lam, size)`` pairs."""
    n = sum(size for _, size in blocks)
    rows = [[0] * n for _ in range(n)]
    k = 0
    for lam, size in blocks:
        for a in range(size):
            rows[k + a][k + a] = lam
            if a + 1 < size:
                rows[k + a][k + a + 1] = 1
        k += size
    return Matrix.from_rows(rows)
