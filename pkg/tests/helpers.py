"""Random instance generators and brute-force oracles shared by the tests."""
from __future__ import annotations

import itertools

import numpy as np

from degdet.fields import GF, MINUS_INF, Field
from degdet.linalg import det, rank, ratmatrix
from degdet.pencil import LaurentMatrix, LeadingPencil, LinearPencil

F = GF(10007)

SKEW = (
    [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [-1, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
)


def skew_pencil(field: Field, c) -> LinearPencil:
    terms = {0: LaurentMatrix.zeros(field, (3, 3))}
    for k, (A, ck) in enumerate(zip(SKEW, c), 1):
        terms[k] = LaurentMatrix.monomial(field, field.array(A), int(ck))
    return LinearPencil.from_terms(field, 3, 3, terms)


def rank1_pencil(rng, n: int, m: int, ell: int, nprime: int | None = None, field: Field = F, sparse: float = 0.3) -> LinearPencil:
    nprime = n if nprime is None else nprime
    terms = {0: LaurentMatrix.zeros(field, (n, nprime))}
    for k in range(1, m + 1):
        a = field.random(rng, n)
        b = field.random(rng, nprime)
        a[rng.random(n) < sparse] = 0
        b[rng.random(nprime) < sparse] = 0
        terms[k] = LaurentMatrix.monomial(field, field.reduce(np.outer(a, b)), int(rng.integers(0, ell + 1)))
    return LinearPencil.from_terms(field, n, nprime, terms)


def substitution_matrix(P: LinearPencil, rng) -> np.ndarray:
    vals = [P.field.random(rng) for _ in range(P.m)]
    M = P.substitute(vals)
    return ratmatrix(P.field, [[M.entry(i, j) for j in range(P.nprime)] for i in range(P.n)])


def random_ratmatrix(field: Field, n: int, rng, max_deg: int = 2, den_prob: float = 0.3) -> np.ndarray:
    """Random K(t) matrix; some entries get a random monic denominator."""
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            d = int(rng.integers(0, max_deg + 1))
            num = "+".join(f"{int(field.random(rng))}*t^{k}" for k in range(d + 1))
            if rng.random() < den_prob:
                e = int(rng.integers(1, 3))
                den = f"t^{e}+{int(field.random(rng))}"
                row.append(f"({num})/({den})")
            else:
                row.append(num)
        rows.append(row)
    return ratmatrix(field, rows)


def brute_matching(weights) -> object:
    n = len(weights)
    best = MINUS_INF
    for perm in itertools.permutations(range(n)):
        if all(weights[i][perm[i]] is not MINUS_INF for i in range(n)):
            best = max(best, sum(weights[i][perm[i]] for i in range(n)))
    return best


def brute_base(field: Field, V: np.ndarray, weights) -> object:
    n = V.shape[1]
    best = MINUS_INF
    for B in itertools.combinations(range(V.shape[0]), n):
        if rank(field, V[list(B)]) == n:
            best = max(best, sum(weights[i] for i in B))
    return best


def random_vectors(field: Field, rng, m: int, n: int, zero_prob: float = 0.4) -> np.ndarray:
    V = field.random(rng, (m, n))
    V[rng.random((m, n)) < zero_prob] = 0
    return field.reduce(np.asarray(V))


def random_leading(field: Field, rng, n: int, nprime: int, kind: str) -> LeadingPencil:
    """Constant pencils of the bipartite, rank-one or layered class."""
    f = field
    mats = [f.zeros((n, nprime))]
    if kind == "bipartite":
        for _ in range(int(rng.integers(0, n * nprime + 1))):
            E = f.zeros((n, nprime))
            E[int(rng.integers(n)), int(rng.integers(nprime))] = f.random_nonzero(rng)
            mats.append(E)
    elif kind == "rank1":
        for _ in range(int(rng.integers(0, 5))):
            a = np.asarray(f.random(rng, n))
            b = np.asarray(f.random(rng, nprime))
            mats.append(f.reduce(np.outer(a, b)))
    elif kind == "layered":
        t_rows = [i for i in range(n) if rng.random() < 0.5]
        q_rows = [i for i in range(n) if i not in t_rows]
        for i in q_rows:
            mats[0][i] = f.random(rng, nprime)
        for i in t_rows:
            for j in range(nprime):
                if rng.random() < 0.5:
                    E = f.zeros((n, nprime))
                    E[i, j] = f.one
                    mats.append(E)
    else:
        raise ValueError(kind)
    return LeadingPencil(f, n, nprime, tuple(mats))


def subset_degdet_max(P: LinearPencil, oracle) -> object:
    """Max of ``oracle`` over every n-column subpencil."""
    best = MINUS_INF
    for cols in itertools.combinations(range(P.nprime), P.n):
        v = oracle(P.column_subpencil(list(cols)))
        if v is not MINUS_INF and (best is MINUS_INF or v > best):
            best = v
    return best


def is_diag_monomial(field: Field, M: np.ndarray, alpha) -> bool:
    from degdet.fields import RationalFunction

    n = M.shape[0]
    for i in range(n):
        for j in range(n):
            x = M[i, j]
            if i == j:
                if x != RationalFunction.monomial(field, alpha[i]):
                    return False
            elif not x.is_zero():
                return False
    return True


def constant_det_nonzero(field: Field, M: np.ndarray) -> bool:
    return not field.is_zero(det(field, M))
