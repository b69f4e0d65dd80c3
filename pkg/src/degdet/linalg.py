"""Exact linear algebra over K and K(t).

All routines take the field explicitly and operate on numpy arrays whose
entries are that field's elements.  Passing a ``RationalFunctionField`` runs
the same elimination code over K(t).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import CapExceeded, NotProper, SingularInput
from .fields import (
    GF,
    MINUS_INF,
    Field,
    Polynomial,
    RationalFunction,
    RationalFunctionField,
    poly_gcd,
    proper_leading,
)


def rref(field: Field, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    R = field.array(M) if not isinstance(M, np.ndarray) else M.copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        idx = np.flatnonzero(field.nonzero(R[r:, c]))
        if idx.size == 0:
            continue
        k = r + int(idx[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = field.reduce(R[r] * field.inv(R[r, c]))
        col = R[:, c].copy()
        col[r] = field.zero
        hit = np.flatnonzero(field.nonzero(col))
        if hit.size:
            R[hit] = field.reduce(R[hit] - np.outer(col[hit], R[r]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(field: Field, M: np.ndarray) -> int:
    if M.size == 0:
        return 0
    return len(rref(field, M)[1])


def right_kernel(field: Field, M: np.ndarray) -> np.ndarray:
    """Columns spanning ``{y : M y = 0}``."""
    rows, cols = M.shape
    if rows == 0:
        return field.eye(cols)
    R, piv = rref(field, M)
    free = [c for c in range(cols) if c not in piv]
    K = field.zeros((cols, len(free)))
    for k, f in enumerate(free):
        K[f, k] = field.one
        for i, p in enumerate(piv):
            K[p, k] = field.reduce(np.array([-R[i, f]], dtype=R.dtype))[0]
    return K


def left_kernel(field: Field, M: np.ndarray) -> np.ndarray:
    """Rows spanning ``{x : x M = 0}``."""
    return right_kernel(field, M.T.copy()).T.copy()


def rank_and_kernels(field: Field, M: np.ndarray) -> tuple[int, np.ndarray, np.ndarray]:
    return rank(field, M), right_kernel(field, M), left_kernel(field, M)


def row_basis(field: Field, M: np.ndarray) -> np.ndarray:
    """Echelon basis of the row space (rows)."""
    if M.shape[0] == 0:
        return field.zeros((0, M.shape[1]))
    R, piv = rref(field, M)
    return R[: len(piv)].copy()


def column_basis(field: Field, M: np.ndarray) -> np.ndarray:
    return row_basis(field, M.T.copy()).T.copy()


def complete_rows(field: Field, basis: np.ndarray, n: int) -> np.ndarray:
    """Nonsingular n x n matrix whose first rows span the rows of ``basis``.

    The basis is brought to echelon form and completed with unit vectors in
    the non-pivot coordinates, so coordinate subspaces give permutations.
    """
    if basis.shape[0] == 0:
        return field.eye(n)
    R, piv = rref(field, basis)
    head = R[: len(piv)]
    rest = field.zeros((n - len(piv), n))
    for k, c in enumerate(c for c in range(n) if c not in piv):
        rest[k, c] = field.one
    return np.concatenate([head, rest], axis=0)


def complete_columns(field: Field, basis: np.ndarray, n: int) -> np.ndarray:
    return complete_rows(field, basis.T.copy(), n).T.copy()


def det(field: Field, M: np.ndarray):
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("det of a non-square matrix")
    R = M.copy()
    out = field.one
    for c in range(n):
        idx = np.flatnonzero(field.nonzero(R[c:, c]))
        if idx.size == 0:
            return field.zero
        k = c + int(idx[0])
        if k != c:
            R[[c, k]] = R[[k, c]]
            out = -out
        piv = R[c, c]
        out = field(out * piv) if not isinstance(field, RationalFunctionField) else out * piv
        if c + 1 < n:
            f = field.reduce(R[c + 1:, c] * field.inv(piv))
            R[c + 1:, c:] = field.reduce(R[c + 1:, c:] - np.outer(f, R[c, c:]))
    return out if not isinstance(field, GF) else int(out) % field.p


def inverse(field: Field, M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    aug = np.concatenate([M, field.eye(n)], axis=1)
    R, piv = rref(field, aug)
    if piv[:n] != list(range(n)):
        raise SingularInput("matrix is singular")
    return R[:, n:].copy()


def span_contains(field: Field, basis_cols: np.ndarray, vecs: np.ndarray) -> bool:
    if vecs.shape[1] == 0:
        return True
    if basis_cols.shape[1] == 0:
        return not field.nonzero(vecs).any()
    return rank(field, np.concatenate([basis_cols, vecs], axis=1)) == rank(field, basis_cols)


# ----------------------------------------------------- matrices over K(t)


def ratmatrix(field: Field, rows) -> np.ndarray:
    """Build a K(t) matrix from entries (strings, Laurent/rational objects, scalars)."""
    kt = RationalFunctionField(field)
    data = [[kt(x) for x in row] for row in rows]
    out = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def leading_coeff_matrix(field: Field, M: np.ndarray) -> np.ndarray:
    """The matrix M^0 of a proper M = M^0 + t^-1 M'."""
    out = field.zeros(M.shape)
    for (i, j), x in np.ndenumerate(M):
        if x.deg > 0:
            raise NotProper(f"entry ({i},{j}) has degree {x.deg}")
        out[i, j] = proper_leading(x)
    return out


def is_biproper(field: Field, M: np.ndarray) -> bool:
    if M.shape[0] != M.shape[1]:
        return False
    if any(x.deg > 0 for x in M.flat):
        return False
    return rank(field, leading_coeff_matrix(field, M)) == M.shape[0]


def _lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    return (a * b) // poly_gcd(a, b)


def poly_det_degree(field: Field, stack: list[list[Polynomial]]):
    """deg det of a square polynomial matrix, or MINUS_INF."""
    n = len(stack)
    if n == 0:
        return 0
    row_deg = []
    for row in stack:
        d = max((p.deg for p in row), default=MINUS_INF)
        if d is MINUS_INF:
            return MINUS_INF
        row_deg.append(d)
    bound = sum(row_deg)
    if field.order is not None and field.order <= bound:
        return _bareiss_degree(field, stack)
    L = bound + 1
    coeffs = field.zeros((L, n, n))
    for i, row in enumerate(stack):
        for j, p in enumerate(row):
            for k, c in enumerate(p.coeffs):
                coeffs[k, i, j] = c
    return det_degree_from_coeffs(field, coeffs)


def det_degree_from_coeffs(field: Field, coeffs: np.ndarray):
    """deg det of ``sum_k coeffs[k] t**k`` by evaluation and interpolation.

    Requires at least ``D + 1`` field elements where ``D`` is the row-degree
    bound; callers fall back to fraction-free elimination otherwise.
    """
    L, n, _ = coeffs.shape
    nz = field.nonzero(coeffs)
    row_deg = []
    for i in range(n):
        ks = np.flatnonzero(nz[:, i, :].any(axis=1))
        if ks.size == 0:
            return MINUS_INF
        row_deg.append(int(ks[-1]))
    bound = sum(row_deg)
    if field.order is not None and field.order <= bound:
        stack = [[Polynomial(field, coeffs[:, i, j]) for j in range(n)] for i in range(n)]
        return _bareiss_degree(field, stack)
    pts = [field(k) for k in range(bound + 1)]
    vals = []
    for x in pts:
        M = field.zeros((n, n))
        for k in range(L - 1, -1, -1):
            M = field.reduce(M * x + coeffs[k])
        vals.append(det(field, M))
    # Newton divided differences; the degree is the last nonzero entry
    dd = list(vals)
    top = MINUS_INF
    for lvl in range(len(pts)):
        if lvl > 0:
            for i in range(len(pts) - 1, lvl - 1, -1):
                dd[i] = field((dd[i] - dd[i - 1]) * field.inv(pts[i] - pts[i - lvl]))
        if not field.is_zero(dd[lvl]):
            top = lvl
    return top


def _bareiss_degree(field: Field, stack: list[list[Polynomial]]):
    """Fraction-free elimination over K[t]; used when K is too small to interpolate."""
    n = len(stack)
    M = [list(row) for row in stack]
    sign = 1
    prev = Polynomial(field, [1])
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if piv is None:
            return MINUS_INF
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = Polynomial(field)
        prev = M[k][k]
    return M[n - 1][n - 1].deg


def deg_det(field: Field, M: np.ndarray):
    """deg det of a square matrix over K(t); MINUS_INF when singular."""
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("deg_det needs a square matrix")
    stack = []
    shift = 0
    for i in range(n):
        row = [field_entry(field, x) for x in M[i]]
        den = Polynomial(field, [1])
        for x in row:
            den = _lcm(den, x.den)
        shift += den.deg
        stack.append([x.num * (den // x.den) for x in row])
    d = poly_det_degree(field, stack)
    return d if d is MINUS_INF else d - shift


def field_entry(field: Field, x) -> RationalFunction:
    return RationalFunctionField(field)(x)


def max_minor_degree(field: Field, M: np.ndarray, k: int, cap: int = 5):
    """delta_k: maximum degree over all k x k minors (delta_0 = 0)."""
    if k == 0:
        return 0
    if min(M.shape) > cap:
        raise CapExceeded(f"minor enumeration capped at min dimension {cap}")
    best = MINUS_INF
    for rows in combinations(range(M.shape[0]), k):
        for cols in combinations(range(M.shape[1]), k):
            d = deg_det(field, M[np.ix_(rows, cols)])
            if d > best:
                best = d
    return best


@dataclass
class SmithMcMillanForm:
    S: np.ndarray
    T: np.ndarray
    alpha: list[int]
    log: list[tuple]


def smith_mcmillan(field: Field, A: np.ndarray) -> SmithMcMillanForm:
    """Biproper S, T with ``S A T = diag(t**alpha)``, alpha nonincreasing.

    Each stage moves a maximum-degree entry of the trailing block to the
    pivot, clears its row and column with proper elementary operations and
    rescales the pivot by the inverse of its degree-zero part.
    """
    kt = RationalFunctionField(field)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("smith_mcmillan needs a square matrix")
    W = np.empty((n, n), dtype=object)
    for idx, x in np.ndenumerate(A):
        W[idx] = kt(x)
    S, T = kt.eye(n), kt.eye(n)
    alpha: list[int] = []
    log: list[tuple] = []
    for k in range(n):
        best, pos = MINUS_INF, None
        for i in range(k, n):
            for j in range(k, n):
                d = W[i, j].deg
                if d > best:
                    best, pos = d, (i, j)
        if pos is None:
            raise SingularInput("matrix is singular over K(t)")
        i, j = pos
        if i != k:
            W[[k, i]] = W[[i, k]]
            S[[k, i]] = S[[i, k]]
            log.append(("swap_rows", k, i))
        if j != k:
            W[:, [k, j]] = W[:, [j, k]]
            T[:, [k, j]] = T[:, [j, k]]
            log.append(("swap_cols", k, j))
        piv = W[k, k]
        for j2 in range(k + 1, n):
            if not W[k, j2].is_zero():
                u = -(W[k, j2] / piv)
                W[:, j2] = W[:, j2] + u * W[:, k]
                T[:, j2] = T[:, j2] + u * T[:, k]
                log.append(("col", k, j2, u))
        for i2 in range(k + 1, n):
            if not W[i2, k].is_zero():
                u = -(W[i2, k] / piv)
                W[i2, :] = W[i2, :] + u * W[k, :]
                S[i2, :] = S[i2, :] + u * S[k, :]
                log.append(("row", k, i2, u))
        a = piv.deg
        vinv = piv.times_t(-a).inverse()
        W[k, :] = W[k, :] * vinv
        S[k, :] = S[k, :] * vinv
        log.append(("scale", k, vinv))
        alpha.append(a)
    return SmithMcMillanForm(S, T, alpha, log)


def matmul_kt(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return RationalFunctionField(field).matmul(A, B)


@dataclass
class BruhatDecomposition:
    L: np.ndarray
    D: np.ndarray
    P: np.ndarray
    U: np.ndarray
    perm: list[int]
    diag: list


def bruhat_ldpu(field: Field, A: np.ndarray) -> BruhatDecomposition:
    """``A = L D P U``: L lower and U upper unitriangular, D diagonal, P a permutation.

    Works over K or over K(t) (pass ``RationalFunctionField``).  Row ``i`` of
    the monomial middle factor is nonzero in column ``perm[i]``.
    """
    n = A.shape[0]
    W = A.copy()
    EL, EU = field.eye(n), field.eye(n)
    perm: list[int] = []
    for i in range(n):
        nz = np.flatnonzero(field.nonzero(W[i]))
        if nz.size == 0:
            raise SingularInput("matrix is singular")
        j = int(nz[0])
        piv = W[i, j]
        inv = field.inv(piv)
        for j2 in range(j + 1, n):
            if not field.is_zero(W[i, j2]):
                u = field.reduce(np.array([-(W[i, j2] * inv)], dtype=object))[0]
                W[:, j2] = field.reduce(W[:, j2] + u * W[:, j])
                EU[:, j2] = field.reduce(EU[:, j2] + u * EU[:, j])
        for i2 in range(i + 1, n):
            if not field.is_zero(W[i2, j]):
                u = field.reduce(np.array([-(W[i2, j] * inv)], dtype=object))[0]
                W[i2, :] = field.reduce(W[i2, :] + u * W[i, :])
                EL[i2, :] = field.reduce(EL[i2, :] + u * EL[i, :])
        perm.append(j)
    D = field.zeros((n, n))
    P = field.zeros((n, n))
    diag = []
    for i, j in enumerate(perm):
        D[i, i] = W[i, j]
        P[i, j] = field.one
        diag.append(W[i, j] if field.dtype is object else field(W[i, j]))
    return BruhatDecomposition(inverse(field, EL), D, P, inverse(field, EU), perm, diag)


def permutation_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
