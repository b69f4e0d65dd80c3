"""Maximum vanishing subspace problem.

Given K-matrices ``A_0, ..., A_m`` of shape n x n', find subspaces X of K^n
(row vectors) and Y of K^n' (column vectors) with ``x A_i y = 0`` for all
``x in X``, ``y in Y`` and all i, maximising ``dim X + dim Y``.  The optimum
equals ``n + n' - ncrank``.

Exact solvers are provided for the structured classes (single-entry terms,
rank-one terms with zero constant part, layered mixed matrices), an
exhaustive enumerator for small fields, and a certified solver for the rest.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import ceil

import numpy as np

from .errors import CapExceeded, InconsistentPartition, MvspUnresolved, WrongClass
from .fields import Field
from .linalg import column_basis, left_kernel, rank, right_kernel, span_contains
from .matroid import LinearMatroid, konig_cover, matroid_intersection
from .pencil import LeadingPencil, LinearPencil

DEFAULT_CAP = 100_000


@dataclass(frozen=True, eq=False)
class MvSubspace:
    """A vanishing pair: ``x_basis`` rows span X, ``y_basis`` columns span Y."""

    field: Field
    n: int
    nprime: int
    x_basis: np.ndarray
    y_basis: np.ndarray
    certified: bool = True
    method: str = ""

    @property
    def dim_x(self) -> int:
        return self.x_basis.shape[0]

    @property
    def dim_y(self) -> int:
        return self.y_basis.shape[1]

    @property
    def value(self) -> int:
        return self.dim_x + self.dim_y

    def is_vanishing(self, P: LeadingPencil) -> bool:
        if self.dim_x == 0 or self.dim_y == 0:
            return True
        f = self.field
        for A in P.terms:
            if f.nonzero(f.matmul(f.matmul(self.x_basis, A), self.y_basis)).any():
                return False
        return True

    def swapped(self) -> "MvSubspace":
        """The same pair read for the transposed pencil."""
        return MvSubspace(
            self.field, self.nprime, self.n, self.y_basis.T.copy(), self.x_basis.T.copy(), self.certified, self.method
        )


def _units(field: Field, size: int, coords) -> np.ndarray:
    coords = sorted(coords)
    out = field.zeros((len(coords), size))
    for k, c in enumerate(coords):
        out[k, c] = field.one
    return out


# ------------------------------------------------------------ enumeration


def count_subspaces(q: int, k: int) -> int:
    """Number of subspaces of GF(q)^k."""
    total = 0
    for d in range(k + 1):
        num, den = 1, 1
        for i in range(d):
            num *= q ** (k - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total


def enumerate_subspaces(field: Field, k: int):
    """Yield echelon bases (rows) of every subspace of K^k.

    Ordered by dimension, then pivot set, then lexicographically in the free
    entries.  Each subspace appears exactly once.
    """
    elems = list(field.elements())
    for d in range(k + 1):
        for pivots in combinations(range(k), d):
            free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, k) if c not in pivots]
            for vals in product(elems, repeat=len(free)):
                B = field.zeros((d, k))
                for i, p in enumerate(pivots):
                    B[i, p] = field.one
                for (i, c), v in zip(free, vals):
                    B[i, c] = v
                yield B


def mvsp_bruteforce(P: LeadingPencil, cap: int = DEFAULT_CAP) -> MvSubspace:
    """Exhaustive search over the side with fewer subspaces.

    Ties prefer the smallest X (largest Y); among equal dimensions the first
    subspace in enumeration order wins.
    """
    f = P.field
    if f.order is None:
        raise CapExceeded("exhaustive search needs a finite field")
    q = f.order
    cy, cx = count_subspaces(q, P.nprime), count_subspaces(q, P.n)
    if min(cx, cy) > cap:
        raise CapExceeded(f"{min(cx, cy)} subspaces exceed the cap of {cap}")
    terms = [A for _, A in P.nonzero_terms()]
    best = None
    if cy <= cx:
        for Yr in enumerate_subspaces(f, P.nprime):
            Y = Yr.T.copy()
            if terms and Y.shape[1]:
                AY = np.concatenate([f.matmul(A, Y) for A in terms], axis=1)
                X = left_kernel(f, AY)
            else:
                X = f.eye(P.n)
            val = X.shape[0] + Y.shape[1]
            if best is None or val > best[0] or (val == best[0] and Y.shape[1] > best[2].shape[1]):
                best = (val, X, Y)
    else:
        for X in enumerate_subspaces(f, P.n):
            if terms and X.shape[0]:
                XA = np.concatenate([f.matmul(X, A) for A in terms], axis=0)
                Y = right_kernel(f, XA)
            else:
                Y = f.eye(P.nprime)
            val = X.shape[0] + Y.shape[1]
            if best is None or val > best[0]:
                best = (val, X, Y)
    _, X, Y = best
    return MvSubspace(f, P.n, P.nprime, X, Y, True, "brute")


# --------------------------------------------------------- structured cases


def mvsp_bipartite(field: Field, n: int, nprime: int, edges) -> MvSubspace:
    """Support-only pencil: the optimum is the largest stable set (Konig)."""
    edges = sorted(set((int(i), int(j)) for i, j in edges))
    matching, left, right = konig_cover(n, nprime, edges)
    J = left
    Kc = set(range(nprime)) - right
    X = _units(field, n, J)
    Y = _units(field, nprime, Kc).T.copy()
    assert X.shape[0] + Y.shape[1] == n + nprime - len(matching)
    return MvSubspace(field, n, nprime, X, Y, True, "bipartite")


def mvsp_rank1(field: Field, n: int, nprime: int, pairs) -> MvSubspace:
    """Pencil ``sum x_i a_i b_i^T``: optimum via linear matroid intersection."""
    if not pairs:
        return MvSubspace(field, n, nprime, field.eye(n), field.eye(nprime), True, "rank1")
    Amat = np.stack([field.array(a) for a, _ in pairs], axis=1)
    Bmat = np.stack([field.array(b) for _, b in pairs], axis=1)
    common, (U, rest) = matroid_intersection(LinearMatroid(field, Amat), LinearMatroid(field, Bmat))
    X = left_kernel(field, Amat[:, U]) if U else field.eye(n)
    Y = right_kernel(field, Bmat[:, rest].T.copy()) if rest else field.eye(nprime)
    assert X.shape[0] + Y.shape[1] == n + nprime - len(common)
    return MvSubspace(field, n, nprime, X, Y, True, "rank1")


def rank1_factor(field: Field, M: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    """``M = a b^T`` for a rank-one M; None for the zero matrix."""
    nz = np.argwhere(field.nonzero(M))
    if nz.size == 0:
        return None
    i, j = (int(v) for v in nz[0])
    a = M[:, j].copy()
    b = field.reduce(M[i, :] * field.inv(M[i, j]))
    return a, b


@dataclass(frozen=True, eq=False)
class LayeredMixedMatrix:
    """Rows ``q_rows`` carry the constant matrix Q; each entry of ``t_entries``
    (global row, column) holds an independent indeterminate.
    """

    field: Field
    n: int
    nprime: int
    q_rows: tuple[int, ...]
    Q: np.ndarray
    t_rows: tuple[int, ...]
    t_entries: tuple[tuple[int, int], ...]


def mvsp_layered(L: LayeredMixedMatrix) -> MvSubspace:
    """Minimise ``rank Q[J] + |Gamma(J)| - |J|`` through matroid intersection.

    One side is the column matroid of Q (one copy of every column) joined
    with unit vectors for the T rows; the other is the partition matroid
    allowing each column once.
    """
    f = L.field
    nq, nt, m = len(L.q_rows), len(L.t_rows), L.nprime
    t_index = {r: k for k, r in enumerate(L.t_rows)}
    E = m + len(L.t_entries)
    V1 = f.zeros((nq + nt, E))
    V2 = f.zeros((m, E))
    if nq:
        V1[:nq, :m] = L.Q
    for c in range(m):
        V2[c, c] = f.one
    for k, (r, c) in enumerate(L.t_entries):
        V1[nq + t_index[r], m + k] = f.one
        V2[c, m + k] = f.one
    common, (U, _) = matroid_intersection(LinearMatroid(f, V1), LinearMatroid(f, V2))
    Uset = set(U)
    J = [c for c in range(m) if c in Uset and all(m + k in Uset for k, (_, cc) in enumerate(L.t_entries) if cc == c)]
    gamma = {r for r, c in L.t_entries if c in J}
    rows = []
    if nq:
        kq = left_kernel(f, L.Q[:, J]) if J else f.eye(nq)
        for v in kq:
            x = f.zeros(L.n)
            for k, g in enumerate(L.q_rows):
                x[g] = v[k]
            rows.append(x)
    for r in L.t_rows:
        if r not in gamma:
            x = f.zeros(L.n)
            x[r] = f.one
            rows.append(x)
    X = np.stack(rows) if rows else f.zeros((0, L.n))
    Y = _units(f, m, J).T.copy()
    assert X.shape[0] + Y.shape[1] == L.n + m - len(common)
    return MvSubspace(f, L.n, m, X, Y, True, "layered")


def layered_from_leading(P: LeadingPencil) -> LayeredMixedMatrix:
    f = P.field
    entries = []
    for A in P.terms[1:]:
        for i, j in np.argwhere(f.nonzero(A)):
            entries.append((int(i), int(j)))
    t_rows = sorted({i for i, _ in entries})
    a0_rows = set(int(i) for i in np.flatnonzero(f.nonzero(P.terms[0]).any(axis=1)))
    if a0_rows & set(t_rows):
        raise WrongClass("constant and variable entries share a row")
    q_rows = [i for i in range(P.n) if i not in set(t_rows)]
    Q = P.terms[0][q_rows, :] if q_rows else f.zeros((0, P.nprime))
    return LayeredMixedMatrix(f, P.n, P.nprime, tuple(q_rows), Q, tuple(t_rows), tuple(entries))


# ------------------------------------------------------------ general case


def _preimage(field: Field, B: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Columns spanning ``{v : B v in span W}``."""
    n1 = B.shape[1]
    if W.shape[1] == 0:
        return right_kernel(field, B)
    K = right_kernel(field, np.concatenate([B, W], axis=1))
    if K.shape[1] == 0:
        return field.zeros((n1, 0))
    return column_basis(field, K[:n1])


def _image(field: Field, terms, U: np.ndarray) -> np.ndarray:
    if U.shape[1] == 0 or not terms:
        return field.zeros((terms[0].shape[0] if terms else 0, 0))
    return column_basis(field, np.concatenate([field.matmul(A, U) for A in terms], axis=1))


def _wong(field: Field, terms, B: np.ndarray) -> MvSubspace | None:
    """Second Wong sequence for B; returns the optimal pair when it stays in im B."""
    n, n1 = B.shape
    W = field.zeros((n, 0))
    while True:
        U = _preimage(field, B, W)
        W2 = _image(field, terms, U)
        if not span_contains(field, B, W2):
            return None
        if W2.shape[1] == W.shape[1]:
            break
        W = W2
    U = _preimage(field, B, W)
    X = left_kernel(field, W) if W.shape[1] else field.eye(n)
    return MvSubspace(field, n, n1, X, U, True, "wong")


def _blowup_rank(field: Field, terms, coeffs) -> int:
    n, m = terms[0].shape
    d = coeffs[0].shape[0]
    big = field.zeros((n * d, m * d))
    for A, R in zip(terms, coeffs):
        for i, j in np.argwhere(field.nonzero(A)):
            blk = field.reduce(R * A[i, j])
            big[i * d:(i + 1) * d, j * d:(j + 1) * d] = field.reduce(big[i * d:(i + 1) * d, j * d:(j + 1) * d] + blk)
    return rank(field, big)


def _trivial_pairs(field: Field, n: int, nprime: int, terms) -> MvSubspace:
    rk = right_kernel(field, np.concatenate(terms, axis=0))
    lk = left_kernel(field, np.concatenate(terms, axis=1))
    if lk.shape[0] + nprime > n + rk.shape[1]:
        return MvSubspace(field, n, nprime, lk, field.eye(nprime), False, "trivial")
    return MvSubspace(field, n, nprime, field.eye(n), rk, False, "trivial")


def mvsp_general(P: LeadingPencil, rng: np.random.Generator | None = None, tries: int = 4, cap: int = DEFAULT_CAP) -> MvSubspace:
    """Certified solver for arbitrary constant pencils.

    A random element B of the span gives ``ncrank >= rank B``; when B's
    second Wong sequence stays inside im B it yields a pair of value
    ``n + n' - rank B``, which is therefore optimal.  Otherwise random
    matrix substitutions of growing size bound ncrank from below, and a
    bound matching a known pair certifies it.  Small fields fall back to
    exhaustive search; anything else raises MvspUnresolved.
    """
    f = P.field
    rng = rng if rng is not None else np.random.default_rng(0)
    terms = [A for _, A in P.nonzero_terms()]
    n, n1 = P.n, P.nprime
    if not terms:
        return MvSubspace(f, n, n1, f.eye(n), f.eye(n1), True, "zero")
    best_rank = 0
    for _ in range(tries):
        B = f.zeros((n, n1))
        for A in terms:
            B = f.reduce(B + A * f.random(rng))
        r = rank(f, B)
        best_rank = max(best_rank, r)
        mv = _wong(f, terms, B)
        if mv is not None:
            assert mv.value == n + n1 - r
            return mv
    fallback = _trivial_pairs(f, n, n1, terms)
    lower = best_rank
    for d in range(2, max(n, n1) + 1):
        for _ in range(2):
            coeffs = [f.random(rng, (d, d)) for _ in terms]
            lower = max(lower, ceil(_blowup_rank(f, terms, coeffs) / d))
            if n + n1 - lower == fallback.value:
                return MvSubspace(f, n, n1, fallback.x_basis, fallback.y_basis, True, "blowup")
            if lower == min(n, n1):
                break
        if lower == min(n, n1):
            break
    if lower == min(n, n1):
        if n <= n1:
            return MvSubspace(f, n, n1, f.zeros((0, n)), f.eye(n1), True, "blowup")
        return MvSubspace(f, n, n1, f.eye(n), f.zeros((n1, 0)), True, "blowup")
    if f.order is not None:
        try:
            return mvsp_bruteforce(P, cap)
        except CapExceeded:
            pass
    raise MvspUnresolved(f"could not certify an optimum (ncrank >= {lower})")


# ---------------------------------------------------------------- dispatch


def classify_leading(P: LeadingPencil) -> str:
    f = P.field
    if not P.nonzero_terms():
        return "zero"
    a0 = f.nonzero(P.terms[0])
    single = all(int(f.nonzero(A).sum()) <= 1 for A in P.terms[1:])
    if single:
        if not a0.any():
            return "bipartite"
        var_rows, var_cols = set(), set()
        for A in P.terms[1:]:
            for i, j in np.argwhere(f.nonzero(A)):
                var_rows.add(int(i))
                var_cols.add(int(j))
        if not var_rows & set(np.flatnonzero(a0.any(axis=1)).tolist()):
            return "layered"
        if not var_cols & set(np.flatnonzero(a0.any(axis=0)).tolist()):
            return "layered_t"
    if not a0.any() and all(rank(f, A) <= 1 for A in P.terms[1:]):
        return "rank1"
    return "general"


def _support_edges(P: LeadingPencil):
    return [(int(i), int(j)) for A in P.terms[1:] for i, j in np.argwhere(P.field.nonzero(A))]


def _rank1_pairs(P: LeadingPencil):
    return [fa for fa in (rank1_factor(P.field, A) for A in P.terms[1:]) if fa is not None]


STRATEGIES = ("auto", "brute", "bipartite", "rank1", "layered", "general")


def solve_mvsp(P: LeadingPencil, strategy: str = "auto", rng=None, cap: int = DEFAULT_CAP) -> MvSubspace:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown MVSP strategy {strategy!r}")
    cls = classify_leading(P)
    f = P.field
    if strategy == "brute":
        return mvsp_bruteforce(P, cap)
    if strategy == "general":
        return mvsp_general(P, rng, cap=cap)
    if cls == "zero":
        return MvSubspace(f, P.n, P.nprime, f.eye(P.n), f.eye(P.nprime), True, "zero")
    if strategy == "bipartite":
        if cls != "bipartite":
            raise WrongClass(f"leading pencil is {cls}, not bipartite")
        return mvsp_bipartite(f, P.n, P.nprime, _support_edges(P))
    if strategy == "rank1":
        if cls not in ("bipartite", "rank1"):
            raise WrongClass(f"leading pencil is {cls}, not rank-one")
        return mvsp_rank1(f, P.n, P.nprime, _rank1_pairs(P))
    if strategy == "layered":
        if cls == "layered" or cls == "bipartite":
            return mvsp_layered(layered_from_leading(P))
        if cls == "layered_t":
            return mvsp_layered(layered_from_leading(P.transpose())).swapped()
        raise WrongClass(f"leading pencil is {cls}, not layered")
    # auto
    if cls == "bipartite":
        return mvsp_bipartite(f, P.n, P.nprime, _support_edges(P))
    if cls == "layered":
        return mvsp_layered(layered_from_leading(P))
    if cls == "layered_t":
        return mvsp_layered(layered_from_leading(P.transpose())).swapped()
    if cls == "rank1":
        return mvsp_rank1(f, P.n, P.nprime, _rank1_pairs(P))
    return mvsp_general(P, rng, cap=cap)


def as_leading(P) -> LeadingPencil:
    if isinstance(P, LeadingPencil):
        return P
    if isinstance(P, LinearPencil):
        if any(A.degree > 0 or (not A.is_zero() and A.low < 0) for A in P.terms):
            raise ValueError("ncrank needs constant coefficient matrices")
        return P.leading()
    raise TypeError(f"expected a pencil, got {type(P).__name__}")


def nc_rank(P, strategy: str = "auto", rng=None) -> int:
    L = as_leading(P)
    return L.n + L.nprime - solve_mvsp(L, strategy, rng).value


# ------------------------------------------------------------ block form


def block_mvsp_to_mvsp(field: Field, blocks: dict, row_sizes, col_sizes) -> LeadingPencil:
    """One indeterminate per block (alpha, beta)."""
    roff = np.concatenate([[0], np.cumsum(row_sizes)]).astype(int)
    coff = np.concatenate([[0], np.cumsum(col_sizes)]).astype(int)
    n, m = int(roff[-1]), int(coff[-1])
    mats = [field.zeros((n, m))]
    for (a, b), M in sorted(blocks.items()):
        M = field.array(M)
        if M.shape != (row_sizes[a], col_sizes[b]):
            raise InconsistentPartition(f"block {(a, b)} has shape {M.shape}")
        full = field.zeros((n, m))
        full[roff[a]:roff[a + 1], coff[b]:coff[b + 1]] = M
        mats.append(full)
    return LeadingPencil(field, n, m, tuple(mats))


def mvsp_to_block(P: LeadingPencil) -> tuple[dict, list[int], list[int]]:
    """Block rows ``[A_0 I; A_1 I I; ...; A_m I]`` with identity bands."""
    f = P.field
    n, n1 = P.n, P.nprime
    m = len(P.terms) - 1
    blocks = {}
    for a in range(m + 1):
        blocks[(a, 0)] = P.terms[a]
    for b in range(1, m + 1):
        blocks[(b - 1, b)] = f.eye(n)
        blocks[(b, b)] = f.eye(n)
    return blocks, [n] * (m + 1), [n1] + [n] * m


def block_mvsp_bruteforce(field: Field, blocks: dict, row_sizes, col_sizes, cap: int = DEFAULT_CAP) -> int:
    """Maximum of ``sum dim X_a + sum dim Y_b`` with ``X_a A_ab Y_b = 0``."""
    if field.order is None:
        raise CapExceeded("exhaustive search needs a finite field")
    q = field.order
    nx = 1
    for s in row_sizes:
        nx *= count_subspaces(q, s)
    ny = 1
    for s in col_sizes:
        ny *= count_subspaces(q, s)
    if min(nx, ny) > cap:
        raise CapExceeded(f"{min(nx, ny)} block choices exceed the cap")
    nzb = {k: field.array(M) for k, M in blocks.items() if field.nonzero(field.array(M)).any()}
    best = -1
    if nx <= ny:
        spaces = [list(enumerate_subspaces(field, s)) for s in row_sizes]
        for choice in product(*spaces):
            total = sum(X.shape[0] for X in choice)
            for b, s in enumerate(col_sizes):
                cons = [field.matmul(choice[a], M) for (a, bb), M in nzb.items() if bb == b and choice[a].shape[0]]
                total += s - (rank(field, np.concatenate(cons, axis=0)) if cons else 0)
            best = max(best, total)
    else:
        spaces = [list(enumerate_subspaces(field, s)) for s in col_sizes]
        for choice in product(*spaces):
            total = sum(Y.shape[0] for Y in choice)
            for a, s in enumerate(row_sizes):
                cons = [field.matmul(M, choice[b].T.copy()) for (aa, b), M in nzb.items() if aa == a and choice[b].shape[0]]
                total += s - (rank(field, np.concatenate(cons, axis=1)) if cons else 0)
            best = max(best, total)
    return best
