"""Linear symbolic matrices ``A = A0 + sum_i A_i x_i`` with Laurent entries in t.

Each coefficient matrix is a :class:`LaurentMatrix`, a stack of K-matrices
indexed by descending powers of t.  A move multiplies every term on the left
by ``diag(t**e) S`` and on the right by ``T diag(t**f)``; a
:class:`TransformLog` records those factors so the current pencil can be
rebuilt from the input.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    FeasibilityUnbounded,
    FieldMismatch,
    FieldTooSmall,
    MoveInfeasible,
    NonSquare,
    NotProper,
)
from .fields import MINUS_INF, Field, LaurentPoly
from .linalg import det_degree_from_coeffs, rank


class LaurentMatrix:
    """``sum_k coeffs[k] * t**(top - k)``; trimmed so both end layers are nonzero."""

    __slots__ = ("field", "top", "coeffs")

    def __init__(self, field: Field, top: int, coeffs: np.ndarray):
        if coeffs.ndim != 3:
            raise ValueError("coeffs must be a (layers, rows, cols) array")
        nz = field.nonzero(coeffs).reshape(coeffs.shape[0], -1).any(axis=1) if coeffs.size else np.zeros(coeffs.shape[0], bool)
        live = np.flatnonzero(nz)
        self.field = field
        if live.size == 0:
            self.top = 0
            self.coeffs = field.zeros((0,) + coeffs.shape[1:])
        else:
            a, b = int(live[0]), int(live[-1])
            self.top = top - a
            self.coeffs = coeffs[a: b + 1]

    @classmethod
    def zeros(cls, field: Field, shape: tuple[int, int]) -> "LaurentMatrix":
        return cls(field, 0, field.zeros((0,) + tuple(shape)))

    @classmethod
    def constant(cls, field: Field, M: np.ndarray) -> "LaurentMatrix":
        return cls(field, 0, field.array(M)[None, :, :])

    @classmethod
    def monomial(cls, field: Field, M: np.ndarray, e: int) -> "LaurentMatrix":
        return cls(field, e, field.array(M)[None, :, :])

    @classmethod
    def from_entries(cls, field: Field, rows) -> "LaurentMatrix":
        """Entries may be LaurentPoly objects, strings, or scalars."""
        ents = [[_as_laurent(field, x) for x in row] for row in rows]
        n = len(ents)
        m = len(ents[0]) if n else 0
        for i, row in enumerate(ents):
            if len(row) != m:
                raise ValueError(f"row {i} has {len(row)} entries, expected {m}")
        live = [x for row in ents for x in row if not x.is_zero()]
        if not live:
            return cls.zeros(field, (n, m))
        hi = max(x.deg for x in live)
        lo = min(x.lo for x in live)
        C = field.zeros((hi - lo + 1, n, m))
        for i, row in enumerate(ents):
            for j, x in enumerate(row):
                for k, c in enumerate(x.coeffs):
                    C[hi - (x.lo + k), i, j] = c
        return cls(field, hi, C)

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[1], self.coeffs.shape[2]

    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    @property
    def degree(self):
        return MINUS_INF if self.is_zero() else self.top

    @property
    def low(self):
        return MINUS_INF if self.is_zero() else self.top - self.coeffs.shape[0] + 1

    def coefficient(self, e: int) -> np.ndarray:
        k = self.top - e
        if 0 <= k < self.coeffs.shape[0]:
            return self.coeffs[k].copy()
        return self.field.zeros(self.shape)

    def leading(self) -> np.ndarray:
        """Coefficient of ``t**0``; the matrix must be proper."""
        if self.degree > 0:
            raise NotProper(f"degree {self.degree} > 0")
        return self.coefficient(0)

    def entry(self, i: int, j: int) -> LaurentPoly:
        if self.is_zero():
            return LaurentPoly(self.field, 0)
        col = self.coeffs[::-1, i, j]
        return LaurentPoly(self.field, self.low, list(col))

    def entries(self) -> list[list[LaurentPoly]]:
        n, m = self.shape
        return [[self.entry(i, j) for j in range(m)] for i in range(n)]

    def degree_matrix(self) -> list[list]:
        n, m = self.shape
        out = [[MINUS_INF] * m for _ in range(n)]
        if self.is_zero():
            return out
        nz = self.field.nonzero(self.coeffs)
        any_nz = nz.any(axis=0)
        first = nz.argmax(axis=0)
        for i in range(n):
            for j in range(m):
                if any_nz[i, j]:
                    out[i][j] = self.top - int(first[i, j])
        return out

    def support(self) -> list[tuple[int, int]]:
        if self.is_zero():
            return []
        nz = self.field.nonzero(self.coeffs).any(axis=0)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(nz))]

    def shifted(self, row_exps, col_exps) -> "LaurentMatrix":
        """Multiply entry (i, j) by ``t**(row_exps[i] + col_exps[j])``."""
        n, m = self.shape
        r = np.asarray(list(row_exps) if row_exps is not None else [0] * n, dtype=np.int64)
        c = np.asarray(list(col_exps) if col_exps is not None else [0] * m, dtype=np.int64)
        if self.is_zero():
            return self
        sh = r[:, None] + c[None, :]
        hi, lo = int(sh.max()), int(sh.min())
        L = self.coeffs.shape[0]
        out = self.field.zeros((L + hi - lo, n, m))
        for u in np.unique(sh):
            mask = sh == u
            off = hi - int(u)
            out[off: off + L][:, mask] = self.coeffs[:, mask]
        return LaurentMatrix(self.field, self.top + hi, out)

    def left_mul(self, S: np.ndarray) -> "LaurentMatrix":
        if self.is_zero():
            return LaurentMatrix.zeros(self.field, (S.shape[0], self.shape[1]))
        out = np.stack([self.field.matmul(S, C) for C in self.coeffs])
        return LaurentMatrix(self.field, self.top, out)

    def right_mul(self, T: np.ndarray) -> "LaurentMatrix":
        if self.is_zero():
            return LaurentMatrix.zeros(self.field, (self.shape[0], T.shape[1]))
        out = np.stack([self.field.matmul(C, T) for C in self.coeffs])
        return LaurentMatrix(self.field, self.top, out)

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        hi = max(self.top, other.top)
        lo = min(self.low, other.low)
        out = self.field.zeros((hi - lo + 1,) + self.shape)
        out[hi - self.top: hi - self.top + self.coeffs.shape[0]] += self.coeffs
        out[hi - other.top: hi - other.top + other.coeffs.shape[0]] += other.coeffs
        return LaurentMatrix(self.field, hi, self.field.reduce(out))

    def scale(self, c) -> "LaurentMatrix":
        return LaurentMatrix(self.field, self.top, self.field.reduce(self.coeffs * c))

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(self.field, self.top, self.coeffs.transpose(0, 2, 1).copy())

    def submatrix(self, rows, cols) -> "LaurentMatrix":
        return LaurentMatrix(self.field, self.top, self.coeffs[:, rows][:, :, cols].copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix) or other.shape != self.shape:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.top == other.top and self.coeffs.shape == other.coeffs.shape and bool(
            (self.coeffs == other.coeffs).all()
        )

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in self.entries()]
        return "LaurentMatrix[" + ", ".join(rows) + "]"


def _as_laurent(field: Field, x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        if x.field != field:
            raise FieldMismatch(f"{x.field!r} vs {field!r}")
        return x
    if isinstance(x, str):
        return LaurentPoly.parse(x, field)
    return LaurentPoly(field, 0, [x])


@dataclass(frozen=True, eq=False)
class LinearPencil:
    """``terms[0]`` is the constant coefficient A0; ``terms[i]`` multiplies ``x_i``."""

    field: Field
    n: int
    nprime: int
    terms: tuple[LaurentMatrix, ...]
    var_names: tuple[str, ...] | None = None

    def __post_init__(self):
        for k, A in enumerate(self.terms):
            if A.shape != (self.n, self.nprime):
                raise ValueError(f"term {k} has shape {A.shape}, expected {(self.n, self.nprime)}")
            if A.field != self.field:
                raise FieldMismatch(f"term {k} lives over {A.field!r}")

    @classmethod
    def from_terms(cls, field: Field, n: int, nprime: int, terms, var_names=None) -> "LinearPencil":
        """``terms`` maps variable index (0 = constant) to a matrix of entries."""
        items = dict(terms) if not isinstance(terms, (list, tuple)) else dict(enumerate(terms))
        m = max(items, default=0)
        mats = []
        for k in range(m + 1):
            if k in items:
                A = items[k]
                mats.append(A if isinstance(A, LaurentMatrix) else LaurentMatrix.from_entries(field, A))
            else:
                mats.append(LaurentMatrix.zeros(field, (n, nprime)))
        if not mats:
            mats.append(LaurentMatrix.zeros(field, (n, nprime)))
        return cls(field, n, nprime, tuple(mats), var_names)

    @property
    def m(self) -> int:
        return len(self.terms) - 1

    @property
    def max_degree(self):
        return max((A.degree for A in self.terms), default=MINUS_INF)

    @property
    def min_exponent(self):
        lows = [A.low for A in self.terms if not A.is_zero()]
        return min(lows) if lows else MINUS_INF

    def is_proper(self) -> bool:
        return self.max_degree <= 0

    def is_polynomial(self) -> bool:
        lo = self.min_exponent
        return lo is MINUS_INF or lo >= 0

    def map_terms(self, fn) -> "LinearPencil":
        return LinearPencil(self.field, self.n, self.nprime, tuple(fn(A) for A in self.terms), self.var_names)

    def shifted(self, row_exps, col_exps) -> "LinearPencil":
        return self.map_terms(lambda A: A.shifted(row_exps, col_exps))

    def transformed(self, S: np.ndarray | None, T: np.ndarray | None, row_exps=None, col_exps=None) -> "LinearPencil":
        """``diag(t**row_exps) S A_i T diag(t**col_exps)`` for every term."""

        def one(A: LaurentMatrix) -> LaurentMatrix:
            if S is not None:
                A = A.left_mul(S)
            if T is not None:
                A = A.right_mul(T)
            return A.shifted(row_exps, col_exps)

        return self.map_terms(one)

    def leading(self) -> "LeadingPencil":
        if not self.is_proper():
            raise NotProper(f"pencil has degree {self.max_degree} > 0")
        return LeadingPencil(self.field, self.n, self.nprime, tuple(A.coefficient(0) for A in self.terms))

    def degree_matrix(self) -> list[list]:
        out = [[MINUS_INF] * self.nprime for _ in range(self.n)]
        for A in self.terms:
            D = A.degree_matrix()
            for i in range(self.n):
                for j in range(self.nprime):
                    if D[i][j] > out[i][j]:
                        out[i][j] = D[i][j]
        return out

    def substitute(self, values) -> LaurentMatrix:
        """``A0 + sum values[i-1] A_i`` as a single Laurent matrix over K."""
        acc = self.terms[0]
        for v, A in zip(values, self.terms[1:]):
            if not self.field.is_zero(v):
                acc = acc + A.scale(v)
        return acc

    def transpose(self) -> "LinearPencil":
        return LinearPencil(self.field, self.nprime, self.n, tuple(A.transpose() for A in self.terms), self.var_names)

    def column_subpencil(self, cols) -> "LinearPencil":
        rows = list(range(self.n))
        cols = list(cols)
        return LinearPencil(
            self.field, self.n, len(cols), tuple(A.submatrix(rows, cols) for A in self.terms), self.var_names
        )

    def __repr__(self) -> str:
        return f"LinearPencil({self.field!r}, {self.n}x{self.nprime}, m={self.m})"


@dataclass(frozen=True, eq=False)
class LeadingPencil:
    """Constant pencil ``A0^0 + sum A_i^0 x_i`` over K."""

    field: Field
    n: int
    nprime: int
    terms: tuple[np.ndarray, ...]

    def nonzero_terms(self) -> list[tuple[int, np.ndarray]]:
        return [(k, A) for k, A in enumerate(self.terms) if self.field.nonzero(A).any()]

    def transpose(self) -> "LeadingPencil":
        return LeadingPencil(self.field, self.nprime, self.n, tuple(A.T.copy() for A in self.terms))

    @classmethod
    def from_matrices(cls, field: Field, mats) -> "LeadingPencil":
        mats = tuple(field.array(M) for M in mats)
        n, m = mats[0].shape
        return cls(field, n, m, mats)


@dataclass
class TransformLog:
    """Left factors ``(S, e)`` act as ``A <- diag(t**e) S A``; right ``(T, f)`` as ``A <- A T diag(t**f)``."""

    n: int
    left_ops: list = dc_field(default_factory=list)
    right_ops: list = dc_field(default_factory=list)
    dstar: int = 0

    def left(self, S, exps) -> None:
        self.left_ops.append((S, tuple(int(e) for e in exps)))
        self.dstar -= sum(int(e) for e in exps)

    def right(self, T, exps) -> None:
        self.right_ops.append((T, tuple(int(e) for e in exps)))
        self.dstar -= sum(int(e) for e in exps)

    def replay(self, A: LinearPencil) -> LinearPencil:
        for S, e in self.left_ops:
            A = A.transformed(S, None, e, None)
        for T, f in self.right_ops:
            A = A.transformed(None, T, None, f)
        return A


def polynomialize(A: LinearPencil) -> tuple[LinearPencil, list[int]]:
    """Shift each row by a power of t so all entries become polynomials."""
    shift = [0] * A.n
    for A_k in A.terms:
        D = A_k.degree_matrix()
        for i in range(A.n):
            for j in range(A.nprime):
                lo = A_k.entry(i, j).low if D[i][j] is not MINUS_INF else MINUS_INF
                if lo is not MINUS_INF and -lo > shift[i]:
                    shift[i] = -lo
    if not any(shift):
        return A, shift
    return A.shifted(shift, None), shift


def normalize(A: LinearPencil) -> tuple[LinearPencil, int]:
    """Scale a polynomial pencil by ``t**-l`` (l the top degree); D* = n l."""
    if A.n != A.nprime:
        raise NonSquare(f"{A.n}x{A.nprime} pencil")
    if not A.is_polynomial():
        raise NotProper("normalize expects polynomial entries; call polynomialize first")
    ell = A.max_degree
    if ell is MINUS_INF:
        return A, 0
    return A.shifted(None, [-ell] * A.n), A.n * ell


def _move_exponents(n: int, r: int, s: int, kappa: int) -> tuple[list[int], list[int]]:
    return [kappa if i < r else 0 for i in range(n)], [0 if j < s else -kappa for j in range(n)]


def kappa_bound(A: LinearPencil, S: np.ndarray, T: np.ndarray, r: int, s: int):
    """Largest kappa keeping the move proper, or None if the r x s block of SAT is zero."""
    B = A.transformed(S, T)
    best = MINUS_INF
    for M in B.terms:
        D = M.degree_matrix()
        for i in range(r):
            for j in range(s):
                if D[i][j] > best:
                    best = D[i][j]
    if best is MINUS_INF:
        return None
    return -best


def apply_move(A: LinearPencil, S: np.ndarray, T: np.ndarray, r: int, s: int, kappa: int = 1) -> LinearPencil:
    """``(t**(kappa 1_{<=r})) S A_i T (t**(-kappa 1_{>s}))`` for each term."""
    if A.n != A.nprime:
        raise NonSquare(f"{A.n}x{A.nprime} pencil")
    if kappa < 1:
        raise MoveInfeasible("kappa must be at least 1")
    B = A.transformed(S, T)
    lead = B.leading()
    for M in lead.terms:
        if A.field.nonzero(M[:r, :s]).any():
            raise MoveInfeasible("leading r x s block of S A T is not zero")
    rows, cols = _move_exponents(A.n, r, s, kappa)
    out = B.shifted(rows, cols)
    if not out.is_proper():
        raise MoveInfeasible(f"kappa={kappa} leaves a positive-degree entry")
    return out


def minimal_kappa(A: LinearPencil, S: np.ndarray, T: np.ndarray, r: int, s: int, dstar: int) -> int:
    """kappa of the long-step move; FeasibilityUnbounded when no cap-respecting value exists."""
    ell = A.max_degree
    cap = A.n * (ell if ell is not MINUS_INF and ell > 0 else 0) + dstar + 1
    k = kappa_bound(A, S, T, r, s)
    if k is None or k > cap:
        raise FeasibilityUnbounded("the r x s block never becomes leading")
    return k


def commutative_degdet_oracle(A: LinearPencil, trials: int = 8, seed: int = 0, min_field_ratio: int = 1):
    """deg det after substituting random field values for the x_i; max over trials.

    Each trial can only under-estimate.  Raises FieldTooSmall when the per-trial
    Schwartz-Zippel bound is not below one.
    """
    if A.n != A.nprime:
        raise NonSquare(f"{A.n}x{A.nprime} pencil")
    order = A.field.order
    if order is not None and order <= A.n * min_field_ratio:
        raise FieldTooSmall(f"|K|={order} is too small for n={A.n}")
    rng = np.random.default_rng(seed)
    best = MINUS_INF
    for _ in range(max(trials, 1)):
        vals = [A.field.random(rng) for _ in range(A.m)]
        M = A.substitute(vals)
        d = laurent_det_degree(M)
        if d > best:
            best = d
    return best


def oracle_failure_bound(A: LinearPencil, trials: int = 8, field_size: int | None = None) -> float:
    """Probability that every trial misses the top coefficient of det."""
    q = field_size if field_size is not None else A.field.order
    if q is None:
        return 0.0
    per = min(1.0, A.n / q)
    return per ** max(trials, 1)


def laurent_det_degree(M: LaurentMatrix):
    n, m = M.shape
    if n != m:
        raise NonSquare(f"{n}x{m} matrix")
    if n == 0:
        return 0
    if M.is_zero():
        return MINUS_INF
    low = M.low
    # coefficient of t**(low + k) is coeffs[L - 1 - k]
    poly = M.coeffs[::-1].copy()
    d = det_degree_from_coeffs(M.field, poly)
    return d if d is MINUS_INF else d + n * low


def block_structure_probe(A: LinearPencil) -> str:
    """One of ``bipartiteSupport``, ``pureRank1``, ``layeredMixed``, ``general``."""
    variables = A.terms[1:]
    a0_zero = A.terms[0].is_zero()
    single = all(len(M.support()) <= 1 for M in variables)
    if a0_zero and single:
        return "bipartiteSupport"
    if single:
        var_rows = {i for M in variables for i, _ in M.support()}
        const_rows = {i for i, _ in A.terms[0].support()}
        if not var_rows & const_rows:
            return "layeredMixed"
        var_cols = {j for M in variables for _, j in M.support()}
        const_cols = {j for _, j in A.terms[0].support()}
        if not var_cols & const_cols:
            return "layeredMixed"
    if a0_zero and all(laurent_rank_at_most_one(M) for M in variables):
        return "pureRank1"
    return "general"


def laurent_rank_at_most_one(M: LaurentMatrix) -> bool:
    """Exact rank test over K(t): all 2 x 2 minors through a pivot vanish."""
    supp = M.support()
    if len(supp) <= 1:
        return True
    i0, j0 = supp[0]
    piv = M.entry(i0, j0)
    n, m = M.shape
    for i in range(n):
        for j in range(m):
            if i == i0 or j == j0:
                continue
            lhs = M.entry(i, j) * piv
            rhs = M.entry(i, j0) * M.entry(i0, j)
            if not (lhs - rhs).is_zero():
                return False
    return True


def leading_rank(field: Field, M: np.ndarray) -> int:
    return rank(field, M)
