"""Combinatorial problems phrased as deg Det of a linear symbolic matrix.

Each front-end builds a pencil, runs the descent solver and translates the
answer back: weighted bipartite matching, maximum-weight matroid bases,
weighted matroid intersection, and mixed polynomial matrices (including the
index of the associated differential-algebraic system).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import SingularSystem
from .fields import GF, MINUS_INF, Field, LaurentPoly
from .linalg import rank
from .pencil import LaurentMatrix, LinearPencil
from .solver import AssignmentDual, DegDetResult, monomial_potentials, sda_degdet

DEFAULT_FIELD = GF(10007)


# ---------------------------------------------------------------- matching


@dataclass(frozen=True)
class MatchingInstance:
    """Edges ``(i, j, weight)`` between rows and columns ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int, int], ...]


@dataclass
class MatchingResult:
    value: object
    dual: AssignmentDual | None
    result: DegDetResult


def matching_pencil(inst: MatchingInstance, field: Field = DEFAULT_FIELD) -> LinearPencil:
    n = inst.n
    terms = [LaurentMatrix.zeros(field, (n, n))]
    for i, j, c in inst.edges:
        E = field.zeros((n, n))
        E[i, j] = field.one
        terms.append(LaurentMatrix.monomial(field, E, int(c)))
    return LinearPencil(field, n, n, tuple(terms))


def solve_weighted_matching(
    inst: MatchingInstance, field: Field = DEFAULT_FIELD, variant: str = "plain", mvsp: str = "auto", seed: int = 0
) -> MatchingResult:
    """Maximum weight of a perfect matching (MINUS_INF if none) with its dual."""
    res = sda_degdet(matching_pencil(inst, field), mvsp=mvsp, variant=variant, seed=seed)
    dual = None
    if res.value is not MINUS_INF:
        pot = monomial_potentials(res.log, inst.n)
        if pot is not None:
            dual = potentials_to_dual(pot, res.value)
    return MatchingResult(res.value, dual, res)


def potentials_to_dual(pot, value) -> AssignmentDual:
    row_exp, col_exp = pot
    p = list(row_exp)
    q = [-x for x in col_exp]
    c = max(0, -min(p, default=0), -min(q, default=0))
    return AssignmentDual(tuple(x + c for x in p), tuple(x + c for x in q), int(value))


def matching_weights(inst: MatchingInstance) -> list[list]:
    d = [[MINUS_INF] * inst.n for _ in range(inst.n)]
    for i, j, c in inst.edges:
        if d[i][j] is MINUS_INF or c > d[i][j]:
            d[i][j] = int(c)
    return d


# ---------------------------------------------------------------- matroids


@dataclass(frozen=True, eq=False)
class MatroidBaseInstance:
    """Vectors ``a_i`` (rows of ``vectors``) with integer weights."""

    field: Field
    vectors: np.ndarray
    weights: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class MatroidIntersectionInstance:
    field: Field
    a: np.ndarray
    b: np.ndarray
    weights: tuple[int, ...]


def _outer_pencil(field: Field, left: np.ndarray, right: np.ndarray, weights) -> LinearPencil:
    n = left.shape[1]
    terms = [LaurentMatrix.zeros(field, (n, n))]
    for a, b, c in zip(left, right, weights):
        terms.append(LaurentMatrix.monomial(field, field.reduce(np.outer(a, b)), int(c)))
    return LinearPencil(field, n, n, tuple(terms))


def greedy_base(inst: MatroidBaseInstance) -> tuple[list[int], object]:
    """Heaviest-first greedy; returns the base and its weight (MINUS_INF if rank < n)."""
    f = inst.field
    n = inst.vectors.shape[1]
    order = sorted(range(len(inst.weights)), key=lambda i: (-inst.weights[i], i))
    chosen: list[int] = []
    for i in order:
        cand = chosen + [i]
        if rank(f, inst.vectors[cand]) == len(cand):
            chosen = cand
        if len(chosen) == n:
            break
    if len(chosen) < n:
        return sorted(chosen), MINUS_INF
    return sorted(chosen), sum(inst.weights[i] for i in chosen)


def solve_matroid_base(inst: MatroidBaseInstance, variant: str = "plain", mvsp: str = "auto", seed: int = 0):
    """Greedy base plus the deg Det value of ``sum t**c_i x_i a_i a_i^T``."""
    base, weight = greedy_base(inst)
    res = sda_degdet(_outer_pencil(inst.field, inst.vectors, inst.vectors, inst.weights), mvsp=mvsp, variant=variant, seed=seed)
    return base, weight, res


def solve_matroid_intersection(inst: MatroidIntersectionInstance, variant: str = "plain", mvsp: str = "auto", seed: int = 0) -> DegDetResult:
    """Maximum weight of a common base of the two vector matroids."""
    return sda_degdet(_outer_pencil(inst.field, inst.a, inst.b, inst.weights), mvsp=mvsp, variant=variant, seed=seed)


def brute_common_base(inst: MatroidIntersectionInstance):
    f = inst.field
    n = inst.a.shape[1]
    best = MINUS_INF
    for B in combinations(range(len(inst.weights)), n):
        B = list(B)
        if rank(f, inst.a[B]) == n and rank(f, inst.b[B]) == n:
            w = sum(inst.weights[i] for i in B)
            if w > best:
                best = w
    return best


# ------------------------------------------------------------- mixed / DAE


@dataclass(frozen=True, eq=False)
class MixedPolySystem:
    """``Q(t) + T(t)``: Q has polynomial entries over K; every placement
    ``(row, col, var, k)`` contributes ``x_var * t**k`` with its own variable.
    """

    field: Field
    n: int
    Q: LaurentMatrix
    t_entries: tuple[tuple[int, int, str, int], ...]

    def __post_init__(self):
        names = [v for _, _, v, _ in self.t_entries]
        if len(set(names)) != len(names):
            raise ValueError("each variable may appear in only one placement")
        if not self.Q.is_zero() and self.Q.low < 0:
            raise ValueError("Q must have polynomial entries")
        if any(k < 0 for *_, k in self.t_entries):
            raise ValueError("T degrees must be nonnegative")

    @property
    def max_degree(self) -> int:
        degs = [k for *_, k in self.t_entries]
        if not self.Q.is_zero():
            degs.append(self.Q.degree)
        return max(degs, default=MINUS_INF)

    def as_pencil(self) -> LinearPencil:
        f, n = self.field, self.n
        terms = [self.Q]
        names = []
        for r, c, v, k in self.t_entries:
            E = f.zeros((n, n))
            E[r, c] = f.one
            terms.append(LaurentMatrix.monomial(f, E, k))
            names.append(v)
        return LinearPencil(f, n, n, tuple(terms), tuple(names))

    def layered(self) -> LinearPencil:
        """``[[Q, I], [T, D]]`` with a fresh diagonal indeterminate in D."""
        f, n = self.field, self.n
        N = 2 * n
        zero = LaurentMatrix.zeros(f, (n, n))
        ident = LaurentMatrix.constant(f, f.eye(n))
        a0 = _blocks(f, [[self.Q, ident], [zero, zero]])
        terms = [a0]
        names = []
        for r, c, v, k in self.t_entries:
            E = f.zeros((N, N))
            E[n + r, c] = f.one
            terms.append(LaurentMatrix.monomial(f, E, k))
            names.append(v)
        for i in range(n):
            E = f.zeros((N, N))
            E[n + i, n + i] = f.one
            terms.append(LaurentMatrix.constant(f, E))
            names.append(f"_d{i}")
        return LinearPencil(f, N, N, tuple(terms), tuple(names))


def _blocks(field: Field, grid) -> LaurentMatrix:
    rows = []
    for brow in grid:
        ents = [M.entries() for M in brow]
        for i in range(len(ents[0])):
            rows.append([x for e in ents for x in e[i]])
    return LaurentMatrix.from_entries(field, rows)


def _layered_run(sys: MixedPolySystem, stop_after=None, variant="plain", mvsp="auto", seed=0) -> DegDetResult:
    ell = sys.max_degree
    n = sys.n
    L = sys.layered()
    if ell is MINUS_INF:
        return sda_degdet(L, mvsp=mvsp, variant=variant, seed=seed)
    initial = ([0] * (2 * n), [-ell] * n + [0] * n)
    return sda_degdet(L, mvsp=mvsp, variant=variant, seed=seed, initial=initial, stop_after=stop_after)


def mixed_poly_degdet(sys: MixedPolySystem, variant: str = "plain", mvsp: str = "auto", seed: int = 0) -> DegDetResult:
    """deg det of ``Q + T`` through the layered form (the diagonal block has degree 0)."""
    return _layered_run(sys, variant=variant, mvsp=mvsp, seed=seed)


@dataclass(frozen=True)
class DaeIndexReport:
    index: int | None
    exceeds: bool
    iterations: int
    alpha_n: int | None


def dae_index(sys: MixedPolySystem, delta: int, mvsp: str = "auto", seed: int = 0) -> DaeIndexReport:
    """Index ``1 - alpha_n`` read from the iteration count ``l - alpha_n``.

    Runs at most ``l + delta - 1`` moves; if the descent has not stopped by
    then, the index exceeds ``delta``.
    """
    ell = sys.max_degree
    if ell is MINUS_INF:
        raise SingularSystem("the system matrix is zero")
    budget = max(ell + delta - 1, 0)
    res = _layered_run(sys, stop_after=budget, mvsp=mvsp, seed=seed)
    if res.value is MINUS_INF:
        raise SingularSystem("the system matrix is singular")
    if res.stopped_early:
        # the budget can run out before singularity shows; settle it exactly
        if _layered_run(sys, mvsp=mvsp, seed=seed).value is MINUS_INF:
            raise SingularSystem("the system matrix is singular")
        return DaeIndexReport(None, True, res.iterations, None)
    alpha_n = ell - res.iterations
    return DaeIndexReport(1 - alpha_n, False, res.iterations, alpha_n)


def random_mixed_system(field: Field, n: int, ell: int, rng: np.random.Generator, density: float = 0.3, t_density: float = 0.15) -> MixedPolySystem:
    """Random Q with entry degrees up to ``ell`` plus sparse T placements."""
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if rng.random() < density:
                d = int(rng.integers(0, ell + 1))
                row.append(LaurentPoly(field, 0, [field.random(rng) for _ in range(d + 1)]))
            else:
                row.append(LaurentPoly(field, 0))
        rows.append(row)
    Q = LaurentMatrix.from_entries(field, rows)
    ents = []
    for i in range(n):
        for j in range(n):
            if rng.random() < t_density:
                ents.append((i, j, f"x{i}_{j}", int(rng.integers(0, ell + 1))))
    return MixedPolySystem(field, n, Q, tuple(ents))
