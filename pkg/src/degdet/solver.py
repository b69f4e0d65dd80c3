"""Degree of the Dieudonne determinant of a linear symbolic matrix.

``sda_degdet`` is the steepest descent loop: solve a vanishing-subspace
problem on the leading pencil, stop if ``r + s <= n``, otherwise rotate the
pair into the top-left corner and shift by powers of t.  The running bound
``D*`` decreases by ``kappa (r + s - n)`` per step and equals deg Det at
termination.  ``combinatorial_relaxation`` reaches the same value by
assignment duals.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

import numpy as np

from .errors import (
    CapExceeded,
    FeasibilityUnbounded,
    MvspUnresolved,
    NonSquare,
    NotProper,
    Unbounded,
)
from .fields import MINUS_INF, Field
from .linalg import complete_columns, complete_rows, deg_det
from .mvsp import DEFAULT_CAP, MvSubspace, solve_mvsp
from .pencil import (
    LinearPencil,
    TransformLog,
    apply_move,
    kappa_bound,
    polynomialize,
)


@dataclass
class DegDetResult:
    value: object
    iterations: int
    log: TransformLog
    certificate: MvSubspace | None
    trace: list[dict] = dc_field(default_factory=list)
    exact: bool = True
    algorithm: str = "sda"
    pencil: LinearPencil | None = None
    stopped_early: bool = False

    def to_report(self, seed: int | None = None) -> dict:
        cert = None
        if self.certificate is not None:
            f = self.certificate.field
            cert = {
                "X": [[f.format(v) for v in row] for row in self.certificate.x_basis],
                "Y": [[f.format(v) for v in col] for col in self.certificate.y_basis.T],
                "value": self.certificate.value,
            }
        return {
            "value": "-inf" if self.value is MINUS_INF else int(self.value),
            "iterations": self.iterations,
            "trace": self.trace,
            "certificate": cert,
            "seed": seed,
            "exact": self.exact,
            "algorithm": self.algorithm,
        }


def _start(A: LinearPencil, initial):
    if A.n != A.nprime:
        raise NonSquare(f"{A.n}x{A.nprime} pencil")
    log = TransformLog(A.n)
    work, shift = polynomialize(A)
    if any(shift):
        log.left(A.field.eye(A.n), shift)
    floor = -sum(shift)
    ell = work.max_degree
    if ell is MINUS_INF:
        return None, log, floor
    if initial is None:
        if ell:
            work = work.shifted(None, [-ell] * A.n)
            log.right(A.field.eye(A.n), [-ell] * A.n)
    else:
        rows, cols = initial
        work = work.shifted(rows, cols)
        if not work.is_proper():
            raise NotProper("initial shift does not make the pencil proper")
        log.left(A.field.eye(A.n), rows)
        log.right(A.field.eye(A.n), cols)
    return work, log, floor


def _basis_change(mv: MvSubspace, n: int):
    f = mv.field
    S = complete_rows(f, mv.x_basis, n)
    T = complete_columns(f, mv.y_basis, n)
    return S, T


def sda_degdet(
    A: LinearPencil,
    mvsp: str = "auto",
    variant: str = "plain",
    seed: int = 0,
    initial=None,
    max_iterations: int | None = None,
    stop_after: int | None = None,
    cap: int = DEFAULT_CAP,
    on_step=None,
) -> DegDetResult:
    """deg Det A, or MINUS_INF when A is singular over the free skew field.

    ``variant`` is ``"plain"`` (unit steps) or ``"kappa"`` (longest feasible
    step).  ``initial=(row_exps, col_exps)`` replaces the default start
    ``t**-l``; the shifted pencil must be proper.  ``stop_after`` halts
    after that many moves and flags ``stopped_early`` if not yet optimal.
    ``on_step(iteration, pencil, log)`` is called after every move.
    """
    if variant not in ("plain", "kappa"):
        raise ValueError(f"unknown variant {variant!r}")
    rng = np.random.default_rng(seed)
    work, log, floor = _start(A, initial)
    name = "sda" if variant == "plain" else "sda-kappa"
    if work is None:
        value = MINUS_INF if A.n else 0
        return DegDetResult(value, 0, log, None, [], True, name)
    n = A.n
    # every move lowers D* by at least one, and D* < floor ends the run
    fuse = max_iterations if max_iterations is not None else log.dstar - floor + 1
    trace: list[dict] = []
    it = 0
    while True:
        try:
            mv = solve_mvsp(work.leading(), mvsp, rng, cap)
        except MvspUnresolved:
            return DegDetResult(log.dstar, it, log, None, trace, False, name, work)
        r, s = mv.dim_x, mv.dim_y
        if r + s <= n:
            return DegDetResult(log.dstar, it, log, mv, trace, True, name, work)
        if stop_after is not None and it >= stop_after:
            return DegDetResult(log.dstar, it, log, mv, trace, True, name, work, stopped_early=True)
        if it >= fuse:
            raise CapExceeded(f"no termination within {fuse} iterations")
        S, T = _basis_change(mv, n)
        if variant == "plain":
            kappa = 1
        else:
            kappa = kappa_bound(work, S, T, r, s)
            if kappa is None:
                trace.append({"r": r, "s": s, "kappa": None, "dstar": "-inf"})
                return DegDetResult(MINUS_INF, it + 1, log, mv, trace, True, name, work)
        work = apply_move(work, S, T, r, s, kappa)
        log.left(S, [kappa if i < r else 0 for i in range(n)])
        log.right(T, [0 if j < s else -kappa for j in range(n)])
        it += 1
        trace.append({"r": r, "s": s, "kappa": kappa, "dstar": log.dstar})
        if on_step is not None:
            on_step(it, work, log)
        if log.dstar < floor:
            return DegDetResult(MINUS_INF, it, log, mv, trace, True, name, work)


# ------------------------------------------------------------ assignment


@dataclass(frozen=True)
class AssignmentDual:
    """Nonnegative integer potentials with ``p_i - q_j + d_ij <= 0``."""

    p: tuple[int, ...]
    q: tuple[int, ...]
    weight: int  # maximum weight of a perfect matching = sum q - sum p

    def is_feasible(self, d) -> bool:
        if min(self.p + self.q, default=0) < 0:
            return False
        return all(
            d[i][j] is MINUS_INF or self.p[i] - self.q[j] + d[i][j] <= 0
            for i in range(len(self.p))
            for j in range(len(self.q))
        )


def mvmp_sigma_dual(d) -> tuple[AssignmentDual, list[int]]:
    """Hungarian method on the weights ``d`` (MINUS_INF = missing edge).

    Returns the optimal dual and a maximum-weight perfect matching
    ``row -> column``.  Raises Unbounded when no perfect matching exists.
    """
    n = len(d)
    if n == 0:
        return AssignmentDual((), (), 0), []
    INF = float("inf")
    cost = [[None if d[i][j] is MINUS_INF else -int(d[i][j]) for j in range(n)] for i in range(n)]
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j (1-based)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta, j1 = INF, -1
            for j in range(1, n + 1):
                if used[j]:
                    continue
                c = cost[i0 - 1][j - 1]
                if c is not None:
                    cur = c - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] < delta:
                    delta, j1 = minv[j], j
            if delta == INF:
                raise Unbounded("no perfect matching on finite entries")
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while True:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
            if j0 == 0:
                break
    assign = [0] * n
    for j in range(1, n + 1):
        assign[match[j] - 1] = j - 1
    p = [int(u[i]) for i in range(1, n + 1)]
    q = [-int(v[j]) for j in range(1, n + 1)]
    c = max(0, -min(p), -min(q))
    p = [x + c for x in p]
    q = [x + c for x in q]
    weight = sum(int(d[i][assign[i]]) for i in range(n))
    dual = AssignmentDual(tuple(p), tuple(q), weight)
    assert sum(q) - sum(p) == weight
    return dual, assign


def combinatorial_relaxation(A: LinearPencil, mvsp: str = "auto", seed: int = 0, max_iterations: int | None = None, cap: int = DEFAULT_CAP) -> DegDetResult:
    """Alternate an MVSP step with an assignment-dual shift until A^0 is nonsingular."""
    rng = np.random.default_rng(seed)
    work, log, floor = _start(A, None)
    if work is None:
        return DegDetResult(MINUS_INF if A.n else 0, 0, log, None, [], True, "relax")
    n = A.n
    # every move lowers D* by at least one, and D* < floor ends the run
    fuse = max_iterations if max_iterations is not None else log.dstar - floor + 1
    trace: list[dict] = []
    it = 0
    while True:
        try:
            mv = solve_mvsp(work.leading(), mvsp, rng, cap)
        except MvspUnresolved:
            return DegDetResult(log.dstar, it, log, None, trace, False, "relax", work)
        r, s = mv.dim_x, mv.dim_y
        if r + s <= n:
            return DegDetResult(log.dstar, it, log, mv, trace, True, "relax", work)
        if it >= fuse:
            raise CapExceeded(f"no termination within {fuse} iterations")
        S, T = _basis_change(mv, n)
        B = work.transformed(S, T)
        log.left(S, [0] * n)
        log.right(T, [0] * n)
        try:
            dual, _ = mvmp_sigma_dual(B.degree_matrix())
        except Unbounded:
            it += 1
            trace.append({"r": r, "s": s, "kappa": None, "dstar": "-inf"})
            return DegDetResult(MINUS_INF, it, log, mv, trace, True, "relax", B)
        work = B.shifted(list(dual.p), [-x for x in dual.q])
        log.left(np.asarray(_identity_like(A.field, n)), dual.p)
        log.right(np.asarray(_identity_like(A.field, n)), [-x for x in dual.q])
        it += 1
        trace.append({"r": r, "s": s, "kappa": None, "dstar": log.dstar})
        if log.dstar < floor:
            return DegDetResult(MINUS_INF, it, log, mv, trace, True, "relax", work)


def _identity_like(field: Field, n: int):
    return field.eye(n)


# ------------------------------------------------------- subdeterminants


def max_deg_subdet(A: LinearPencil, mvsp: str = "auto", seed: int = 0) -> tuple[object, list[int] | None]:
    """Largest deg Det over n x n column selections of A (n <= n').

    Runs single-exchange ascent on the valuated matroid of ``(I A)``, with
    identity columns penalised so that any optimum avoiding them is found
    first.  Valuated matroids are optimal at local optima, so the ascent is
    exact.  Returns the value and the chosen columns of A, or MINUS_INF and
    None when A has no nonsingular n x n selection.
    """
    n, n1 = A.n, A.nprime
    if n > n1:
        raise NonSquare("max_deg_subdet needs n <= n'")
    f = A.field
    eye = [f.eye(n)] + [f.zeros((n, n))] * A.m
    from .pencil import LaurentMatrix

    ext_terms = []
    for k, M in enumerate(A.terms):
        E = LaurentMatrix.constant(f, eye[k]) if k == 0 else LaurentMatrix.zeros(f, (n, n))
        ext_terms.append(_hcat(f, E, M))
    ext = LinearPencil(f, n, n + n1, tuple(ext_terms), A.var_names)
    hi, lo = A.max_degree, A.min_exponent
    spread = 0 if hi is MINUS_INF else max(hi, 0) - min(lo, 0)
    penalty = n * spread + 1
    cache: dict[tuple[int, ...], object] = {}

    def omega(cols) -> object:
        key = tuple(sorted(cols))
        if key not in cache:
            cache[key] = sda_degdet(ext.column_subpencil(key), mvsp=mvsp, seed=seed).value
        val = cache[key]
        if val is MINUS_INF:
            return MINUS_INF
        return val - penalty * sum(1 for c in key if c < n)

    base = list(range(n))
    cur = omega(base)
    while True:
        best, move = cur, None
        for out in base:
            for inn in range(n + n1):
                if inn in base:
                    continue
                cand = [c for c in base if c != out] + [inn]
                val = omega(cand)
                if val > best:
                    best, move = val, cand
        if move is None:
            break
        base, cur = sorted(move), best
    if any(c < n for c in base):
        return MINUS_INF, None
    cols = [c - n for c in base]
    return cache[tuple(base)], cols


def _hcat(field: Field, L, R):
    from .pencil import LaurentMatrix

    if L.is_zero() and R.is_zero():
        return LaurentMatrix.zeros(field, (L.shape[0], L.shape[1] + R.shape[1]))
    hi = max(x.top for x in (L, R) if not x.is_zero())
    lo = min(x.low for x in (L, R) if not x.is_zero())
    out = field.zeros((hi - lo + 1, L.shape[0], L.shape[1] + R.shape[1]))
    for M, off in ((L, 0), (R, L.shape[1])):
        if not M.is_zero():
            a = hi - M.top
            out[a:a + M.coeffs.shape[0], :, off:off + M.shape[1]] = M.coeffs
    return LaurentMatrix(field, hi, out)


def valuated_exchange_check(field: Field, B: np.ndarray) -> bool:
    """Four-point condition for ``omega(ij) = deg det B[:, (i, j)]`` on a 2 x 4 matrix.

    The maximum of ``w(12)+w(34)``, ``w(13)+w(24)``, ``w(14)+w(23)`` must be
    attained at least twice.
    """
    if B.shape != (2, 4):
        raise ValueError("expects a 2 x 4 matrix over K(t)")
    w = {}
    for i, j in combinations(range(4), 2):
        w[(i, j)] = deg_det(field, B[:, [i, j]])
    sums = [w[(0, 1)] + w[(2, 3)], w[(0, 2)] + w[(1, 3)], w[(0, 3)] + w[(1, 2)]]
    top = max(sums)
    return sum(1 for s in sums if s == top) >= 2


def optimality_certificate(P, mv: MvSubspace) -> bool:
    """True when ``mv`` is vanishing, certified maximum and ``r + s <= n``."""
    return mv.certified and mv.is_vanishing(P) and mv.value <= P.n


def monomial_potentials(log: TransformLog, n: int):
    """Row/column exponents in original indices when every S, T is a permutation.

    Returns ``(row_exp, col_exp)`` such that original entry (i, j) is now
    multiplied by ``t**(row_exp[i] + col_exp[j])``, or None otherwise.
    """
    def perm_of(M):
        perm = []
        for row in M:
            nz = np.flatnonzero(np.asarray(row != 0, dtype=bool))
            if len(nz) != 1 or int(row[nz[0]]) != 1:
                return None
            perm.append(int(nz[0]))
        return perm

    left, right = log.left_ops, log.right_ops
    # current row k corresponds to original row src[k]
    src = list(range(n))
    row_exp = [0] * n
    for S, e in left:
        perm = perm_of(S)
        if perm is None:
            return None
        src = [src[perm[k]] for k in range(n)]
        for k in range(n):
            row_exp[src[k]] += e[k]
    dst = list(range(n))
    col_exp = [0] * n
    for T, fe in right:
        perm = perm_of(T.T)
        if perm is None:
            return None
        dst = [dst[perm[k]] for k in range(n)]
        for k in range(n):
            col_exp[dst[k]] += fe[k]
    return row_exp, col_exp
