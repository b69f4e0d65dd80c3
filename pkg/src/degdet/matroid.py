"""Linear matroid intersection and bipartite matching with dual certificates."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import GroundMismatch, InvalidCertificate
from .fields import Field
from .linalg import rank, rref


@dataclass(frozen=True, eq=False)
class LinearMatroid:
    """Column matroid: element ``e`` is the column ``vectors[:, e]``."""

    field: Field
    vectors: np.ndarray

    @property
    def size(self) -> int:
        return self.vectors.shape[1]

    def rank_of(self, subset) -> int:
        cols = sorted(subset)
        if not cols or self.vectors.shape[0] == 0:
            return 0
        return rank(self.field, self.vectors[:, cols])

    def is_independent(self, subset) -> bool:
        return self.rank_of(subset) == len(list(subset))


def _coordinates(M: LinearMatroid, basis: list[int]):
    """For every element: None if it extends ``basis``, else its coefficient vector."""
    f = M.field
    k = len(basis)
    V = M.vectors
    if V.shape[0] == 0:
        return [np.zeros(0, dtype=object) for _ in range(V.shape[1])]
    aug = np.concatenate([V[:, basis], V], axis=1) if k else V.copy()
    R, piv = rref(f, aug)
    if piv[:k] != list(range(k)):
        raise InvalidCertificate("basis elements are dependent")
    out = []
    # rows >= k of the RREF carry the component outside span(basis)
    tail = f.nonzero(R[k:, k:]).any(axis=0) if R.shape[0] > k else np.zeros(V.shape[1], bool)
    for e in range(V.shape[1]):
        if tail[e]:
            out.append(None)
        else:
            out.append(R[:k, k + e])
    return out


def matroid_intersection(M1: LinearMatroid, M2: LinearMatroid) -> tuple[list[int], tuple[list[int], list[int]]]:
    """Maximum common independent set and a bipartition ``(U, E \\ U)``.

    The certificate satisfies ``|I| = r1(U) + r2(E \\ U)``, which proves
    maximality.  Augmenting paths are shortest paths in the exchange graph.
    """
    if M1.size != M2.size:
        raise GroundMismatch(f"ground sets differ: {M1.size} vs {M2.size}")
    E = M1.size
    f1, f2 = M1.field, M2.field
    I: list[int] = []
    while True:
        c1 = _coordinates(M1, I)
        c2 = _coordinates(M2, I)
        in_I = set(I)
        pos = {y: k for k, y in enumerate(I)}
        outside = [z for z in range(E) if z not in in_I]
        X1 = {z for z in outside if c1[z] is None}
        X2 = {z for z in outside if c2[z] is None}
        # arcs y -> z (M1 exchange) and z -> y (M2 exchange)
        succ: dict[int, list[int]] = {v: [] for v in range(E)}
        for z in outside:
            for y in I:
                k = pos[y]
                if c1[z] is None or not f1.is_zero(c1[z][k]):
                    succ[y].append(z)
                if c2[z] is None or not f2.is_zero(c2[z][k]):
                    succ[z].append(y)
        path = _shortest_path(succ, X1, X2)
        if path is None:
            pred: dict[int, list[int]] = {v: [] for v in range(E)}
            for v, ws in succ.items():
                for w in ws:
                    pred[w].append(v)
            U = _reach(pred, X2)
            cert = (sorted(U), sorted(set(range(E)) - U))
            if M1.rank_of(cert[0]) + M2.rank_of(cert[1]) != len(I):
                raise InvalidCertificate("min-max equality failed")
            return sorted(I), cert
        Iset = set(I)
        for v in path:
            if v in Iset:
                Iset.remove(v)
            else:
                Iset.add(v)
        I = sorted(Iset)


def _shortest_path(succ, sources, targets):
    if not sources:
        return None
    prev = {s: None for s in sorted(sources)}
    q = deque(sorted(sources))
    while q:
        v = q.popleft()
        if v in targets:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for w in succ[v]:
            if w not in prev:
                prev[w] = v
                q.append(w)
    return None


def _reach(adj, starts) -> set[int]:
    seen = set(starts)
    q = deque(starts)
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                q.append(w)
    return seen


def max_bipartite_matching(n_left: int, n_right: int, edges) -> dict[int, int]:
    """Augmenting-path maximum matching; returns ``{left: right}``."""
    adj: list[list[int]] = [[] for _ in range(n_left)]
    for u, v in edges:
        if v not in adj[u]:
            adj[u].append(v)
    match_r: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_r or augment(match_r[v], seen):
                match_r[v] = u
                return True
        return False

    for u in range(n_left):
        augment(u, set())
    return {u: v for v, u in match_r.items()}


def konig_cover(n_left: int, n_right: int, edges) -> tuple[dict[int, int], set[int], set[int]]:
    """Maximum matching plus the left/right vertices reachable by alternating
    paths from unmatched left vertices.  The stable set is
    ``(left reachable) + (right unreachable)``.
    """
    matching = max_bipartite_matching(n_left, n_right, edges)
    match_r = {v: u for u, v in matching.items()}
    adj: list[list[int]] = [[] for _ in range(n_left)]
    for u, v in edges:
        adj[u].append(v)
    left = {u for u in range(n_left) if u not in matching}
    right: set[int] = set()
    q = deque(left)
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in right:
                right.add(v)
                w = match_r.get(v)
                if w is not None and w not in left:
                    left.add(w)
                    q.append(w)
    return matching, left, right
